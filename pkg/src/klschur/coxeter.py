"""The affine symmetric group in window notation.

An element ``w`` of the affine symmetric group on rank ``N`` is a bijection of
the integers with ``w(i + N) = w(i) + N`` whose window ``(w(1), ..., w(N))``
sums to ``N(N+1)/2``.  Simple reflections are ``s_1, ..., s_{N-1}`` (swap
``i`` and ``i+1``) and ``s_0`` (swap ``0`` and ``1``).  For ``N = 1`` the group
is trivial and has no simple reflections.

Finite type A sits inside as the parabolic subgroup generated by
``{1, ..., N-1}``; parabolic subsets passed as ``within=`` restrict the
enumeration helpers to such a subgroup.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache

__all__ = [
    "AffinePermutation", "ParabolicSubset", "InfiniteParabolicError",
    "RankMismatchError", "identity", "simple", "from_word", "parse_word",
    "format_word", "parse_window", "cx_compose", "cx_inverse", "cx_length",
    "cx_descents", "cx_bruhat_leq", "cx_lower_interval",
    "cx_parabolic_elements", "cx_coset_rep", "cx_enumerate_min_reps",
]


class RankMismatchError(ValueError):
    pass


class InfiniteParabolicError(ValueError):
    pass


class AffinePermutation:
    """Element of the affine symmetric group, immutable and hashable."""

    __slots__ = ("rank", "window", "_len", "_hash")

    def __init__(self, window, check=True):
        window = tuple(int(v) for v in window)
        n = len(window)
        if check:
            if n < 1:
                raise ValueError("window must be nonempty")
            if len({v % n for v in window}) != n:
                raise ValueError("window entries must be distinct modulo %d: %r"
                                 % (n, window))
            if sum(window) != n * (n + 1) // 2:
                raise ValueError("window %r does not sum to %d (element of the "
                                 "extended group?)" % (window, n * (n + 1) // 2))
        self.rank = n
        self.window = window
        self._len = None
        self._hash = None

    def __call__(self, i):
        n = self.rank
        k, r = divmod(i - 1, n)
        return self.window[r] + k * n

    def __eq__(self, other):
        if not isinstance(other, AffinePermutation):
            return NotImplemented
        return self.window == other.window

    def __lt__(self, other):
        return (self.length(), self.window) < (other.length(), other.window)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.window)
        return self._hash

    def __repr__(self):
        return "AffinePermutation(%s)" % format_window(self)

    def __str__(self):
        return format_window(self)

    def __mul__(self, other):
        return cx_compose(self, other)

    def is_identity(self):
        return self.window == tuple(range(1, self.rank + 1))

    def generators(self):
        return range(self.rank) if self.rank > 1 else range(0)

    def length(self):
        if self._len is None:
            self._len = _length(self.window)
        return self._len

    def inverse(self):
        n = self.rank
        inv = [0] * n
        for i, v in enumerate(self.window, start=1):
            k, r = divmod(v - 1, n)
            inv[r] = i - k * n
        return AffinePermutation(inv, check=False)

    def _check_gen(self, i):
        if not 0 <= i < self.rank or self.rank == 1:
            raise ValueError("generator index %r out of range for rank %d"
                             % (i, self.rank))

    def right_mul(self, i):
        """w * s_i: acts on positions."""
        self._check_gen(i)
        w = list(self.window)
        n = self.rank
        if i:
            w[i - 1], w[i] = w[i], w[i - 1]
        else:
            w[0], w[n - 1] = w[n - 1] - n, w[0] + n
        return AffinePermutation(w, check=False)

    def left_mul(self, i):
        """s_i * w: acts on values."""
        self._check_gen(i)
        n = self.rank
        lo = i if i else n          # residue of the smaller swapped value
        out = []
        for v in self.window:
            r = v % n
            if r == lo % n:
                out.append(v + 1)
            elif r == (lo + 1) % n:
                out.append(v - 1)
            else:
                out.append(v)
        return AffinePermutation(out, check=False)

    def has_right_descent(self, i):
        w = self.window
        if i:
            return w[i - 1] > w[i]
        return w[-1] - self.rank > w[0]

    def has_left_descent(self, i):
        return self.inverse().has_right_descent(i)

    def right_descents(self):
        return frozenset(i for i in self.generators() if self.has_right_descent(i))

    def left_descents(self):
        inv = self.inverse()
        return frozenset(i for i in self.generators() if inv.has_right_descent(i))

    def reduced_word(self):
        """A reduced word (i_1, ..., i_k) with w = s_{i_1} ... s_{i_k}."""
        word = []
        w = self
        while True:
            for i in w.generators():
                if w.has_right_descent(i):
                    word.append(i)
                    w = w.right_mul(i)
                    break
            else:
                break
        word.reverse()
        return tuple(word)


@lru_cache(maxsize=1 << 20)
def _length(window):
    n = len(window)
    total = 0
    for i in range(n):
        wi = window[i]
        for j in range(i + 1, n):
            total += abs((window[j] - wi) // n)
    return total


def identity(rank):
    return AffinePermutation(range(1, rank + 1), check=False)


def simple(rank, i):
    return identity(rank).right_mul(i)


def from_word(rank, word):
    w = identity(rank)
    for i in word:
        w = w.right_mul(i)
    return w


def parse_word(text):
    """'1,0,2' -> (1, 0, 2); the empty string is the empty word."""
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise ValueError("invalid reduced word %r" % text) from None


def format_word(word):
    return ",".join(str(i) for i in word)


def format_window(w):
    return "[" + ",".join(str(v) for v in w.window) + "]"


def parse_window(text):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError("window must be bracketed: %r" % text)
    body = text[1:-1].strip()
    return AffinePermutation(int(t) for t in body.split(",")) if body else None


class ParabolicSubset:
    """A set of simple reflections, named by generator index."""

    __slots__ = ("rank", "generators")

    def __init__(self, rank, generators=()):
        gens = frozenset(int(g) for g in generators)
        if rank > 1:
            bad = [g for g in gens if not 0 <= g < rank]
        else:
            bad = list(gens)
        if bad:
            raise ValueError("generator indices %r out of range for rank %d"
                             % (sorted(bad), rank))
        self.rank = rank
        self.generators = gens

    def is_finite(self):
        # a proper subset of the cyclic Dynkin diagram is a union of type A paths
        return self.rank == 1 or len(self.generators) < self.rank

    def require_finite(self):
        if not self.is_finite():
            raise InfiniteParabolicError(
                "parabolic subgroup generated by %s is infinite" % sorted(self.generators))

    def __contains__(self, i):
        return i in self.generators

    def __iter__(self):
        return iter(sorted(self.generators))

    def __len__(self):
        return len(self.generators)

    def __eq__(self, other):
        if not isinstance(other, ParabolicSubset):
            return NotImplemented
        return self.rank == other.rank and self.generators == other.generators

    def __hash__(self):
        return hash((self.rank, self.generators))

    def __repr__(self):
        return "ParabolicSubset(%d, %s)" % (self.rank, sorted(self.generators))


def _same_rank(x, y):
    if x.rank != y.rank:
        raise RankMismatchError("rank mismatch: %d vs %d" % (x.rank, y.rank))


def cx_compose(x, y):
    """The composite bijection x o y."""
    _same_rank(x, y)
    return AffinePermutation((x(v) for v in y.window), check=False)


def cx_inverse(w):
    return w.inverse()


def cx_length(w):
    return w.length()


def cx_descents(w, side="right"):
    if side == "right":
        return w.right_descents()
    if side == "left":
        return w.left_descents()
    raise ValueError("side must be 'left' or 'right'")


@lru_cache(maxsize=1 << 20)
def _bruhat_leq(x, y):
    # x, y are windows of equal rank
    if x == y:
        return True
    lx, ly = _length(x), _length(y)
    if lx >= ly:
        return False
    if lx == 0:
        return True
    n = len(y)
    i = next(i for i in range(n)
             if ((y[i - 1] > y[i]) if i else (y[-1] - n > y[0])))
    yw, xw = list(y), list(x)
    if i:
        yw[i - 1], yw[i] = yw[i], yw[i - 1]
        if x[i - 1] > x[i]:
            xw[i - 1], xw[i] = xw[i], xw[i - 1]
    else:
        yw[0], yw[-1] = yw[-1] - n, yw[0] + n
        if x[-1] - n > x[0]:
            xw[0], xw[-1] = xw[-1] - n, xw[0] + n
    return _bruhat_leq(tuple(xw), tuple(yw))


def cx_bruhat_leq(x, y):
    """Bruhat order test by the descent recursion (lifting property)."""
    _same_rank(x, y)
    return _bruhat_leq(x.window, y.window)


@lru_cache(maxsize=4096)
def _lower_interval(window):
    y = AffinePermutation(window, check=False)
    if y.is_identity():
        return frozenset([y])
    i = next(i for i in y.generators() if y.has_right_descent(i))
    below = _lower_interval(y.right_mul(i).window)
    return below | frozenset(z.right_mul(i) for z in below)


def cx_lower_interval(y):
    """All z with z <= y in Bruhat order."""
    return _lower_interval(y.window)


def cx_parabolic_elements(f):
    """All elements of the finite parabolic subgroup generated by f."""
    f.require_finite()
    e = identity(f.rank)
    seen = {e}
    queue = deque([e])
    while queue:
        w = queue.popleft()
        for i in f:
            v = w.right_mul(i)
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return frozenset(seen)


def longest_element(f):
    return max(cx_parabolic_elements(f), key=lambda w: w.length())


def cx_coset_rep(w, f, side="right", extremum="min"):
    """Shortest or longest element of w W_f (side='right') or W_f w ('left')."""
    _same_rank(w, identity(f.rank))
    f.require_finite()
    if side not in ("left", "right") or extremum not in ("min", "max"):
        raise ValueError("side must be left|right and extremum min|max")
    want_descent = extremum == "min"
    changed = True
    while changed:
        changed = False
        for i in f:
            if side == "right":
                if w.has_right_descent(i) == want_descent:
                    w = w.right_mul(i)
                    changed = True
            else:
                if w.has_left_descent(i) == want_descent:
                    w = w.left_mul(i)
                    changed = True
    return w


def is_min_rep(w, f, side):
    """True iff w has no descent in f on the given side."""
    if side == "right":
        return not any(w.has_right_descent(i) for i in f)
    inv = w.inverse()
    return not any(inv.has_right_descent(i) for i in f)


def cx_enumerate_min_reps(f, side="left", max_length=0, within=None):
    """Minimal coset representatives of length <= max_length.

    side='left' gives representatives of W_f\\W (no left descent in f);
    side='right' those of W/W_f.  ``within`` restricts to the parabolic
    subgroup it generates (e.g. finite S_N inside the affine group).
    """
    f.require_finite()
    gens = list(within) if within is not None else list(identity(f.rank).generators())
    e = identity(f.rank)
    level = {e}
    out = {e}
    for _ in range(max_length):
        nxt = set()
        for w in level:
            for i in gens:
                v = w.right_mul(i) if side == "left" else w.left_mul(i)
                if v.length() > w.length() and is_min_rep(v, f, side):
                    nxt.add(v)
        nxt -= out
        out |= nxt
        level = nxt
        if not level:
            break
    return frozenset(out)
