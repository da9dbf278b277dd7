"""Multipartitions, residues, blocks and the map from labels to Weyl group elements.

The label ``lam`` of a block is sent to a shifted weight as follows: apply the
star involution (reverse the components, transpose each), pad component ``p``
to ``m_p`` rows, add ``rho_m = (m_1, ..., 1, m_2, ..., 1, ...)``.  The result
lies in one dot-orbit per block; its position relative to the antidominant
anchor is a shortest coset representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .coxeter import ParabolicSubset
from .weights import (
    LinkageContext, ShiftedWeight, wt_antidominant_rep, wt_stabilizer,
    wt_to_min_rep,
)

__all__ = [
    "Multipartition", "Block", "Charge", "RowOverflowError",
    "mp_residue_content", "mp_enumerate_block", "mp_star", "mp_choose_m",
    "mp_omega_weight", "mp_to_weyl", "partitions", "multipartitions",
    "nu_for_m", "context_for", "parse_multipartition", "parse_block",
    "validate_m",
]


class RowOverflowError(ValueError):
    pass


@dataclass(frozen=True)
class Multipartition:
    components: tuple

    def __post_init__(self):
        comps = tuple(tuple(int(v) for v in c) for c in self.components)
        if not comps:
            raise ValueError("a multipartition needs at least one component")
        for c in comps:
            if any(v <= 0 for v in c) or any(c[i] < c[i + 1] for i in range(len(c) - 1)):
                raise ValueError("not a partition: %r" % (c,))
        object.__setattr__(self, "components", comps)

    @property
    def level(self):
        return len(self.components)

    def size(self):
        return sum(sum(c) for c in self.components)

    def to_list(self):
        return [list(c) for c in self.components]

    def __str__(self):
        return "[" + ",".join("[" + ",".join(map(str, c)) + "]" for c in self.components) + "]"


def parse_multipartition(text):
    import json
    data = json.loads(text)
    return Multipartition(tuple(tuple(c) for c in data))


@dataclass(frozen=True)
class Charge:
    s: tuple
    e: int

    def __post_init__(self):
        if self.e < 2:
            raise ValueError("e must be at least 2")
        if not self.s:
            raise ValueError("charge must be nonempty")
        object.__setattr__(self, "s", tuple(int(v) % self.e for v in self.s))

    @property
    def level(self):
        return len(self.s)


class Block:
    """Residue content: residue -> multiplicity, zero entries dropped."""

    __slots__ = ("content", "e")

    def __init__(self, content, e):
        self.e = e
        acc = {}
        for r, k in dict(content).items():
            if k < 0:
                raise ValueError("negative multiplicity")
            if k:
                acc[r % e] = acc.get(r % e, 0) + k
        self.content = tuple(sorted(acc.items()))

    def size(self):
        return sum(k for _, k in self.content)

    def as_dict(self):
        return dict(self.content)

    def __eq__(self, other):
        return isinstance(other, Block) and (self.content, self.e) == (other.content, other.e)

    def __hash__(self):
        return hash((self.content, self.e))

    def __lt__(self, other):
        return self.content < other.content

    def __repr__(self):
        return "Block(%s)" % str(self)

    def __str__(self):
        return ",".join("%d:%d" % rk for rk in self.content)


def parse_block(text, e):
    """'0:1,1:2' -> Block."""
    content = {}
    text = text.strip()
    if text:
        for item in text.split(","):
            try:
                r, k = item.split(":")
                content[int(r) % e] = content.get(int(r) % e, 0) + int(k)
            except ValueError:
                raise ValueError("invalid block entry %r (want residue:multiplicity)"
                                 % item) from None
    return Block(content, e)


def mp_residue_content(lam, chg):
    if lam.level != chg.level:
        raise ValueError("multipartition has %d components, charge %d"
                         % (lam.level, chg.level))
    content = {}
    for sp, comp in zip(chg.s, lam.components):
        for i, row in enumerate(comp, start=1):
            for j in range(1, row + 1):
                r = (sp + j - i) % chg.e
                content[r] = content.get(r, 0) + 1
    return Block(content, chg.e)


def partitions(n, max_part=None):
    """Partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def multipartitions(n, level):
    for split in _compositions(n, level):
        for comps in product(*(list(partitions(k)) for k in split)):
            yield Multipartition(comps)


def _compositions(n, parts):
    if parts == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


def mp_star(lam):
    return Multipartition(tuple(_transpose(c) for c in reversed(lam.components)))


def _transpose(part):
    if not part:
        return ()
    return tuple(sum(1 for r in part if r >= j) for j in range(1, part[0] + 1))


def mp_choose_m(chg, n):
    """Componentwise-minimal m with m_p = -s_{l+1-p} mod e, m_p >= n, m_p >= 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    e = chg.e
    m = []
    for p in range(chg.level):
        r = (-chg.s[chg.level - 1 - p]) % e
        lo = max(n, 1)
        m.append(lo + (r - lo) % e)
    return tuple(m)


def validate_m(chg, m, n):
    """Reasons m is not admissible for this charge and box count (empty if fine)."""
    problems = []
    if len(m) != chg.level:
        problems.append("m has %d entries, expected %d" % (len(m), chg.level))
        return problems
    for p, mp in enumerate(m):
        want = (-chg.s[chg.level - 1 - p]) % chg.e
        if mp <= 0:
            problems.append("m_%d = %d is not positive" % (p + 1, mp))
        elif mp % chg.e != want:
            problems.append("m_%d = %d fails m_p = -s_%d = %d (mod %d)"
                            % (p + 1, mp, chg.level - p, want, chg.e))
        if mp < n:
            problems.append("m_%d = %d is smaller than n = %d" % (p + 1, mp, n))
    return problems


def nu_for_m(m):
    """Generators 1..N-1 except the partial sums of m (index 0 is never included)."""
    N = sum(m)
    cuts = set()
    acc = 0
    for mp in m:
        acc += mp
        cuts.add(acc)
    return ParabolicSubset(N, [i for i in range(1, N) if i not in cuts])


def context_for(m, e):
    return LinkageContext(sum(m), e, nu_for_m(m))


def mp_omega_weight(lam, m, chg):
    """The shifted tuple omega(lam) + rho, i.e. padded lam + rho_m."""
    if lam.level != len(m):
        raise ValueError("multipartition level %d vs len(m) = %d" % (lam.level, len(m)))
    padded, rho_m = [], []
    for p, (comp, mp) in enumerate(zip(lam.components, m), start=1):
        if len(comp) > mp:
            raise RowOverflowError("component %d has %d rows but m_%d = %d"
                                   % (p, len(comp), p, mp))
        padded.extend(comp)
        padded.extend([0] * (mp - len(comp)))
        rho_m.extend(range(mp, 0, -1))
    shifted = [a + b for a, b in zip(padded, rho_m)]
    # omega = shifted - rho with rho = (0, -1, ..., -(N-1))
    omega = [v + i for i, v in enumerate(shifted)]
    two_rho_plus = [w - 2 * i for i, w in enumerate(omega)]
    z = Fraction(sum(a * b for a, b in zip(omega, two_rho_plus)), 2 * chg.e)
    return ShiftedWeight(tuple(shifted), z)


def mp_to_weyl(lam, ctx, chg, m):
    """(w, o, mu): shortest representative with w . o = omega(lam*) + rho."""
    target = mp_omega_weight(mp_star(lam), m, chg)
    if len(target) != ctx.N:
        raise ValueError("context rank %d does not match sum(m) = %d" % (ctx.N, len(target)))
    o, _ = wt_antidominant_rep(ctx, target)
    mu = wt_stabilizer(ctx, o)
    w = wt_to_min_rep(ctx, target, o, mu)
    return w, o, mu


def _display_key(lam, ctx, chg, m):
    w, _, _ = mp_to_weyl(lam, ctx, chg, m)
    target = mp_omega_weight(mp_star(lam), m, chg).entries
    return (w.length(), tuple(-v for v in target))


def mp_enumerate_block(chg, d, m=None):
    """All multipartitions with residue content d, in display order.

    Display order sorts by the length of the Weyl element of the label, ties by
    the shifted tuple descending; decomposition matrices are lower
    unitriangular in this order.
    """
    n = d.size()
    members = [lam for lam in multipartitions(n, chg.level)
               if mp_residue_content(lam, chg) == d]
    if m is None:
        m = mp_choose_m(chg, n)
    ctx = context_for(m, chg.e)
    members.sort(key=lambda lam: _display_key(lam, ctx, chg, m))
    return members
