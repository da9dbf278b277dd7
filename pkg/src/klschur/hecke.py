"""Hecke algebra of the affine symmetric group and Kazhdan-Lusztig polynomials.

Normalisation: ``H_s^2 = 1 + (q^-1 - q) H_s``, the bar involution sends ``q``
to ``q^-1`` and ``H_w`` to ``(H_{w^-1})^-1``, and the Kazhdan-Lusztig basis is
``C_x = sum_y h_{y,x} H_y`` with ``h_{y,x}`` in ``q Z[q]`` for ``y < x``.

Parabolic polynomials live in the right module ``N = sgn (x)_{H_f} H`` with
standard basis ``N_x`` for ``x`` a shortest representative of ``W_f \\ W``;
there ``H_s`` acts on ``N_x`` by ``-q`` whenever ``xs`` leaves the set of
shortest representatives.  With ``f`` empty everything reduces to the
ordinary case.

Three independent routes are provided:

* :class:`KLBasis` -- induction on length (multiply by ``C_s`` and straighten);
* :func:`kl_by_bar_invariance` -- solve bar-invariance plus triangularity using
  the bar involution of :class:`HeckeElement` (the oracle);
* :class:`IntervalKL` -- R-polynomial recursion that only touches the Bruhat
  interval between the two arguments; this is the one that scales to the
  ranks needed for block computations.
"""

from __future__ import annotations

import os
import threading
from collections import defaultdict
from functools import lru_cache

from .coxeter import (
    AffinePermutation, ParabolicSubset, RankMismatchError, _bruhat_leq, _length,
    cx_lower_interval, cx_parabolic_elements, identity, is_min_rep,
)
from .laurent import ONE, Q, QINV, ZERO, LaurentPoly, parse

__all__ = [
    "HeckeElement", "KLBasis", "IntervalKL", "kl_by_bar_invariance",
    "hk_mul_simple", "hk_bar", "hk_kl_poly", "hk_inverse_kl",
    "hk_parabolic_n", "hk_inverse_parabolic_n", "parabolic_n_by_sum",
    "NotMinimalError", "get_basis", "region", "interval", "covers_below",
    "append_cache_lines",
]

_Q_MINUS_QINV = Q - QINV
_QINV_MINUS_Q = QINV - Q


class NotMinimalError(ValueError):
    """An argument is not a shortest representative of W_f \\ W."""


class HeckeElement:
    """Finite sum of ``p_w H_w`` with Laurent polynomial coefficients."""

    __slots__ = ("rank", "coeffs")

    def __init__(self, rank, coeffs=None):
        self.rank = rank
        self.coeffs = {}
        if coeffs:
            for w, p in coeffs.items():
                if w.rank != rank:
                    raise RankMismatchError("basis element of rank %d in rank %d element"
                                            % (w.rank, rank))
                if isinstance(p, int):
                    p = LaurentPoly.const(p)
                if p:
                    self.coeffs[w] = p

    @classmethod
    def basis(cls, w, coeff=ONE):
        return cls(w.rank, {w: coeff})

    @classmethod
    def one(cls, rank):
        return cls.basis(identity(rank))

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.rank == other.rank and self.coeffs == other.coeffs

    def __repr__(self):
        terms = sorted(self.coeffs.items())
        return "HeckeElement(%s)" % " + ".join(
            "(%s)H%s" % (p, w) for w, p in terms) if terms else "HeckeElement(0)"

    def coeff(self, w):
        return self.coeffs.get(w, ZERO)

    def _add_into(self, out, w, p):
        v = out.get(w)
        v = p if v is None else v + p
        if v:
            out[w] = v
        else:
            out.pop(w, None)

    def __add__(self, other):
        out = dict(self.coeffs)
        for w, p in other.coeffs.items():
            self._add_into(out, w, p)
        return HeckeElement._wrap(self.rank, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        if isinstance(c, int):
            c = LaurentPoly.const(c)
        return HeckeElement._wrap(self.rank, {w: p * c for w, p in self.coeffs.items()
                                              if p * c})

    @classmethod
    def _wrap(cls, rank, coeffs):
        h = object.__new__(cls)
        h.rank = rank
        h.coeffs = coeffs
        return h

    def mul_simple(self, i, side="right"):
        """Multiply by H_{s_i} on the given side."""
        out = {}
        for w, p in self.coeffs.items():
            if side == "right":
                ws = w.right_mul(i)
                up = not w.has_right_descent(i)
            elif side == "left":
                ws = w.left_mul(i)
                up = not w.has_left_descent(i)
            else:
                raise ValueError("side must be 'left' or 'right'")
            self._add_into(out, ws, p)
            if not up:
                self._add_into(out, w, p * _QINV_MINUS_Q)
        return HeckeElement._wrap(self.rank, out)

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        if other.rank != self.rank:
            raise RankMismatchError("rank mismatch")
        total = HeckeElement(self.rank)
        for w, p in other.coeffs.items():
            term = self
            for i in w.reduced_word():
                term = term.mul_simple(i, "right")
            total = total + term.scale(p)
        return total

    def bar(self):
        total = HeckeElement(self.rank)
        for w, p in self.coeffs.items():
            total = total + _bar_standard(w).scale(p.bar())
        return total


_bar_cache = {}
_bar_lock = threading.Lock()


def _bar_standard(w):
    """bar(H_w) = prod over a reduced word of (H_s + q - q^-1)."""
    hit = _bar_cache.get(w)
    if hit is not None:
        return hit
    if w.is_identity():
        out = HeckeElement.one(w.rank)
    else:
        i = next(i for i in w.generators() if w.has_right_descent(i))
        prev = _bar_standard(w.right_mul(i))
        out = prev.mul_simple(i, "right") + prev.scale(_Q_MINUS_QINV)
    with _bar_lock:
        _bar_cache[w] = out
    return out


def hk_mul_simple(a, i, side="right"):
    if not 0 <= i < a.rank or a.rank == 1:
        raise ValueError("generator index %r out of range for rank %d" % (i, a.rank))
    return a.mul_simple(i, side)


def hk_bar(a):
    return a.bar()


def _symmetrize_nonpositive(p):
    """Bar-invariant polynomial agreeing with p in degrees <= 0."""
    out = {}
    for k, c in p.terms.items():
        if k == 0:
            out[0] = c
        elif k < 0:
            out[k] = c
            out[-k] = c
    return LaurentPoly(out)


def _check_f(rank, f):
    if f is None:
        return ParabolicSubset(rank)
    if f.rank != rank:
        raise RankMismatchError("parabolic subset rank %d vs %d" % (f.rank, rank))
    f.require_finite()
    return f


class KLBasis:
    """Kazhdan-Lusztig basis of the sign parabolic module, by induction on length.

    ``basis(x)`` returns ``{y: n_{y,x}}``.  With an empty ``f`` these are the
    ordinary polynomials ``h_{y,x}``.  The cache only grows.
    """

    def __init__(self, rank, f=None):
        self.rank = rank
        self.f = _check_f(rank, f)
        self._cache = {identity(rank): {identity(rank): ONE}}
        self._lock = threading.Lock()

    def is_member(self, w):
        return is_min_rep(w, self.f, "left")

    def require_member(self, w):
        if w.rank != self.rank:
            raise RankMismatchError("rank mismatch")
        if not self.is_member(w):
            raise NotMinimalError("%s has a left descent in %s"
                                  % (w, sorted(self.f.generators)))

    def _times_cs(self, elt, i):
        # elt * C_{s_i} in the module, C_s = H_s + q
        out = {}
        f = self.f.generators
        for y, p in elt.items():
            ys = y.right_mul(i)
            if y.has_right_descent(i):
                targets = ((ys, p), (y, p * QINV))
            elif f and not self.is_member(ys):
                continue
            else:
                targets = ((ys, p), (y, p * Q))
            for w, c in targets:
                v = out.get(w)
                v = c if v is None else v + c
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
        return out

    def basis(self, x):
        hit = self._cache.get(x)
        if hit is not None:
            return hit
        self.require_member(x)
        # build along a reduced word so recursion depth stays bounded
        word = x.reduced_word()
        w = identity(self.rank)
        for i in word:
            w = w.right_mul(i)
            if w not in self._cache:
                self._compute(w, i)
        return self._cache[x]

    def _compute(self, x, i):
        prev = self.basis(x.right_mul(i))
        elt = self._times_cs(prev, i)
        by_len = defaultdict(list)
        for z in elt:
            if z != x:
                by_len[z.length()].append(z)
        for ell in range(x.length() - 1, -1, -1):
            for z in sorted(by_len.get(ell, ())):
                p = elt.get(z)
                if p is None or all(k > 0 for k in p.terms):
                    continue
                corr = _symmetrize_nonpositive(p)
                for y, c in self.basis(z).items():
                    v = elt.get(y, ZERO) - corr * c
                    if v:
                        if y not in elt and y != x:
                            by_len[y.length()].append(y)
                        elt[y] = v
                    else:
                        elt.pop(y, None)
        with self._lock:
            self._cache[x] = elt

    def poly(self, y, x):
        """n_{y,x} (h_{y,x} when f is empty)."""
        return self.basis(x).get(y, ZERO)

    def inverse_row(self, x):
        """{y: n^{x,y}} for all y <= x in the module."""
        key = ("inv", x)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        # n_{z,x} may vanish for z <= x in the parabolic case, so walk the
        # whole lower interval, not just the support of the basis element
        below = sorted((w for w in cx_lower_interval(x) if self.is_member(w)),
                       key=lambda w: (-w.length(), w.window))
        row = {}
        for z in below:
            if z == x:
                row[z] = ONE
                continue
            acc = ZERO
            lz = z.length()
            for w, hw in row.items():
                if w == z:
                    continue
                c = self.basis(w).get(z)
                if c is not None:
                    term = hw * c
                    acc = acc - term if (lz + w.length()) % 2 == 0 else acc + term
            if acc:
                row[z] = acc
        with self._lock:
            self._cache[key] = row
        return row

    def inverse(self, x, y):
        """n^{x,y}, from sum_z (-1)^{l(x)+l(z)} n_{z,x} n^{z,y} = delta_{x,y}."""
        self.require_member(x)
        self.require_member(y)
        return self.inverse_row(x).get(y, ZERO)


def kl_by_bar_invariance(x):
    """{y: h_{y,x}} from bar-invariance and triangularity alone."""
    below = sorted(cx_lower_interval(x), key=lambda w: -w.length())
    r = {y: _bar_standard(y).coeffs for y in below}
    h = {x: ONE}
    for z in below:
        if z == x:
            continue
        acc = ZERO
        for y, hy in h.items():
            c = r[y].get(z)
            if c is not None:
                acc = acc + hy.bar() * c
        p = acc.positive_part()
        if p:
            h[z] = p
    return h


# module-level engines shared by the functional API
_engines = {}
_engines_lock = threading.Lock()


def get_basis(rank, f=None):
    key = (rank, frozenset(f.generators) if f is not None else frozenset())
    eng = _engines.get(key)
    if eng is None:
        with _engines_lock:
            eng = _engines.get(key)
            if eng is None:
                eng = KLBasis(rank, f)
                _engines[key] = eng
    return eng


def _same(x, y):
    if x.rank != y.rank:
        raise RankMismatchError("rank mismatch: %d vs %d" % (x.rank, y.rank))


def hk_kl_poly(y, x):
    """h_{y,x}: coefficient of H_y in the Kazhdan-Lusztig basis element C_x."""
    _same(x, y)
    return get_basis(x.rank).poly(y, x)


def hk_inverse_kl(x, y):
    """h^{x,y}: the inverse Kazhdan-Lusztig polynomial."""
    _same(x, y)
    return get_basis(x.rank).inverse_row(x).get(y, ZERO)


def hk_parabolic_n(x, y, f):
    """n^f_{x,y}, computed in the sign parabolic module."""
    _same(x, y)
    eng = get_basis(x.rank, f)
    eng.require_member(x)
    eng.require_member(y)
    return eng.poly(x, y)


def hk_inverse_parabolic_n(x, y, f):
    _same(x, y)
    return get_basis(x.rank, f).inverse(x, y)


def parabolic_n_by_sum(x, y, f):
    """n^f_{x,y} = sum over z in W_f of (-q)^{l(z)} h_{zx,y} (independent route)."""
    _same(x, y)
    f = _check_f(x.rank, f)
    for w in (x, y):
        if not is_min_rep(w, f, "left"):
            raise NotMinimalError("%s is not a shortest representative" % w)
    total = ZERO
    for z in cx_parabolic_elements(f):
        term = hk_kl_poly(z * x, y)
        if term:
            lz = z.length()
            total = total + term.shift(lz) * (-1 if lz % 2 else 1)
    return total


class IntervalKL:
    """Parabolic Kazhdan-Lusztig data computed interval by interval.

    ``r(x, y)`` is the coefficient of ``N_x`` in ``bar(N_y)``.  The polynomial
    ``n_{x,w}`` is recovered from bar-invariance over the Bruhat interval
    ``[x, w]`` only, so nothing outside the interval is enumerated.  Arguments
    must be shortest representatives of ``W_f \\ W``.
    """

    def __init__(self, rank, f=None, cache_dir=None):
        self.rank = rank
        self.f = _check_f(rank, f)
        self._fgens = tuple(sorted(self.f.generators))
        self._r = {}
        self._n = {}
        self._lock = threading.Lock()
        self._dirty = []
        self._cache_path = None
        if cache_dir:
            self._cache_path = os.path.join(
                cache_dir, "kl_rank%d_f%s.txt" % (rank, "-".join(map(str, self._fgens)) or "none"))
            self._load()

    # persistence: one record per line, "window|window|poly"

    def _load(self):
        if not os.path.exists(self._cache_path):
            return
        with open(self._cache_path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                a, b, p = line.split("|")
                self._n[(_win(a), _win(b))] = parse(p)

    @property
    def cache_path(self):
        return self._cache_path

    def drain(self):
        """Cache lines computed since the last drain, in file format."""
        with self._lock:
            recs, self._dirty = self._dirty, []
        return ["[%s]|[%s]|%s" % (",".join(map(str, a)), ",".join(map(str, b)), p)
                for (a, b), p in recs]

    def flush(self):
        if not self._cache_path:
            return
        append_cache_lines(self._cache_path, self.drain())

    def is_member(self, w):
        return is_min_rep(w, self.f, "left")

    def _member_window(self, window):
        return _member_window(window, self._fgens)

    def r(self, x, y):
        return self._r_win(x.window, y.window)

    def _r_win(self, x, y):
        key = (x, y)
        hit = self._r.get(key)
        if hit is not None:
            return hit
        if x == y:
            return ONE
        if not _bruhat_leq(x, y):
            return ZERO
        n = self.rank
        desc = [i for i in range(n) if ((y[i - 1] > y[i]) if i else (y[-1] - n > y[0]))]
        xdesc = [i for i in desc if ((x[i - 1] > x[i]) if i else (x[-1] - n > x[0]))]
        if xdesc:
            i = xdesc[0]
            out = self._r_win(_rmul(x, i), _rmul(y, i))
        else:
            i = desc[0]
            ys = _rmul(y, i)
            xs = _rmul(x, i)
            if self._member_window(xs):
                out = self._r_win(xs, ys) + _Q_MINUS_QINV * self._r_win(x, ys)
            else:
                out = -(QINV * self._r_win(x, ys))
        self._r[key] = out
        return out

    def column(self, w, elements):
        """{x: n_{x,w}} for x in ``elements``.

        ``elements`` must contain every y with x <= y <= w for each x it
        contains (a convex set); entries outside [., w] are dropped.
        """
        wwin = w.window
        below = [x for x in elements if _bruhat_leq(x.window, wwin)]
        below.sort(key=lambda v: -v.length())
        n = self.rank
        wdesc = [i for i in range(n) if ((wwin[i - 1] > wwin[i]) if i else (wwin[-1] - n > wwin[0]))]
        col = {w: ONE}
        bars = {w: ONE}
        for z in below:
            if z == w:
                continue
            key = (z.window, wwin)
            p = self._n.get(key)
            if p is None:
                p = self._by_descent(z.window, wdesc, col)
            if p is None:
                acc = ZERO
                zwin = z.window
                for y, hb in bars.items():
                    if y.length() <= z.length():
                        continue
                    rr = self._r_win(zwin, y.window)
                    if rr:
                        acc = acc + hb * rr
                p = acc.positive_part()
                with self._lock:
                    self._n[key] = p
                    self._dirty.append((key, p))
            if p:
                col[z] = p
                bars[z] = p.bar()
        return col

    def _by_descent(self, zwin, wdesc, col):
        # for s a right descent of w: n_{z,w} = 0 if zs leaves the module,
        # n_{z,w} = q n_{zs,w} if zs > z; None when neither applies
        n = self.rank
        for i in wdesc:
            up = (zwin[i - 1] < zwin[i]) if i else (zwin[-1] - n < zwin[0])
            if not up:
                continue
            zs = _rmul(zwin, i)
            if not self._member_window(zs):
                return ZERO
            above = col.get(AffinePermutation(zs, check=False))
            return above * Q if above else ZERO
        return None

    def poly(self, x, w):
        """n_{x,w} via the interval [x, w]."""
        if x == w:
            return ONE
        key = (x.window, w.window)
        hit = self._n.get(key)
        if hit is not None:
            return hit
        if not _bruhat_leq(x.window, w.window):
            return ZERO
        return self.column(w, interval(x, w, self.f)).get(x, ZERO)


def append_cache_lines(path, lines):
    if not lines:
        return
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "a", encoding="utf-8") as fh:
        for line in lines:
            fh.write(line + "\n")


def _win(text):
    return tuple(int(t) for t in text.strip()[1:-1].split(","))


def _rmul(window, i):
    w = list(window)
    if i:
        w[i - 1], w[i] = w[i], w[i - 1]
    else:
        n = len(w)
        w[0], w[-1] = w[-1] - n, w[0] + n
    return tuple(w)


def _member_window(window, fgens):
    # no left descent in f, tested on the window of the inverse
    if not fgens:
        return True
    n = len(window)
    inv = [0] * n
    for i, v in enumerate(window, start=1):
        k, r = divmod(v - 1, n)
        inv[r] = i - k * n
    for i in fgens:
        if (inv[i - 1] > inv[i]) if i else (inv[-1] - n > inv[0]):
            return False
    return True


def region(lows, hi, f=None):
    """Shortest representatives z of W_f \\ W with z <= hi and z >= some member of lows.

    ``hi`` is one element or an iterable of tops.  Walks down through Bruhat
    covers, pruning elements that no longer dominate any of ``lows``.  The
    result is convex.
    """
    fgens = tuple(sorted(f.generators)) if f is not None else ()
    tops = [hi] if isinstance(hi, AffinePermutation) else list(hi)
    if not tops:
        return frozenset()
    rank = tops[0].rank
    lows = [lo.window for lo in lows if lo.rank == rank]
    tops = [t.window for t in tops if any(_bruhat_leq(lo, t.window) for lo in lows)]
    if not tops:
        return frozenset()
    lows.sort(key=_length)
    floor = _length(lows[0])
    # below[z]: the lows under z; a child can only lie above lows of a parent
    below = {}
    by_len = {}
    for t in tops:
        below[t] = tuple(lo for lo in lows if _bruhat_leq(lo, t))
        by_len.setdefault(_length(t), set()).add(t)
    rejected = set()
    ell = max(by_len)
    while ell > floor:
        for w in by_len.get(ell, ()):
            for c in _covers_below_window(w):
                if c in below or c in rejected or not _member_window(c, fgens):
                    continue
                lc = ell - 1
                under = tuple(lo for lo in below[w] if _length(lo) <= lc and _bruhat_leq(lo, c))
                if under:
                    below[c] = under
                    by_len.setdefault(lc, set()).add(c)
                else:
                    rejected.add(c)
        ell -= 1
    keep = set()
    for level in by_len.values():
        keep |= level
    return frozenset(AffinePermutation(w, check=False) for w in keep)


def interval(lo, hi, f=None):
    """Shortest representatives z of W_f \\ W with lo <= z <= hi."""
    if lo.rank != hi.rank:
        raise RankMismatchError("rank mismatch")
    return region([lo], hi, f)


@lru_cache(maxsize=1 << 18)
def _covers_below_window(win):
    # a value strictly between the swapped ones at an intermediate position
    # rules out a cover; survivors are confirmed by length (periodic
    # translates of the pair can still interact)
    n = len(win)
    target = _length(win) - 1
    out = []
    for i in range(n):
        wi = win[i]
        for j in range(n):
            if j == i:
                continue
            k = 0 if j > i else 1
            while win[j] + k * n < wi:
                lo = win[j] + k * n
                b = j + k * n            # 0-based integer position of the smaller value
                ok = True
                for c in range(i + 1, b):
                    q_, r_ = divmod(c, n)
                    v = win[r_] + q_ * n
                    if lo < v < wi:
                        ok = False
                        break
                if ok:
                    cand = list(win)
                    cand[i] = lo
                    cand[j] = wi - k * n
                    cand = tuple(cand)
                    if _length(cand) == target:
                        out.append(cand)
                k += 1
    return tuple(out)


def covers_below(w):
    """Elements covered by w in Bruhat order."""
    return [AffinePermutation(t, check=False) for t in _covers_below_window(w.window)]
