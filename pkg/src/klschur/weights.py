"""Dot action of the affine symmetric group on shifted weights at level -e.

A shifted weight is an integer N-tuple ``a`` (already rho-shifted).  Extend
it to all integers by ``A(j + kN) = a_j + k*e``; then ``(w . a)_i =
A(w^-1(i))``.  Concretely ``s_i`` (i >= 1) swaps entries ``i`` and ``i+1``
and ``s_0`` sends ``(a_1, ..., a_N)`` to ``(a_N - e, a_2, ..., a_1 + e)``.

Every orbit meets the antidominant region ``o_1 <= ... <= o_N <= o_1 + e``
exactly once.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .coxeter import AffinePermutation, ParabolicSubset, RankMismatchError

__all__ = [
    "LinkageContext", "ShiftedWeight", "OrbitMismatchError", "NotAntidominantError",
    "wt_act", "wt_antidominant_rep", "wt_stabilizer", "wt_is_nu_dominant",
    "wt_to_min_rep", "is_antidominant",
]


class OrbitMismatchError(ValueError):
    pass


class NotAntidominantError(ValueError):
    pass


@dataclass(frozen=True)
class LinkageContext:
    N: int
    e: int
    nu: ParabolicSubset = None

    def __post_init__(self):
        if self.N < 1 or self.e < 1:
            raise ValueError("need N >= 1 and e >= 1")
        if self.nu is None:
            object.__setattr__(self, "nu", ParabolicSubset(self.N))
        elif self.nu.rank != self.N:
            raise RankMismatchError("nu has rank %d, context %d" % (self.nu.rank, self.N))


@dataclass(frozen=True)
class ShiftedWeight:
    entries: tuple
    delta_coeff: Fraction = field(default=Fraction(0), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(v) for v in self.entries))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        return "[" + ",".join(map(str, self.entries)) + "]"


def _entries(a):
    return a.entries if isinstance(a, ShiftedWeight) else tuple(a)


def _wrap(entries, like):
    dc = like.delta_coeff if isinstance(like, ShiftedWeight) else Fraction(0)
    return ShiftedWeight(tuple(entries), dc)


def wt_act(ctx, w, a):
    ent = _entries(a)
    n, e = ctx.N, ctx.e
    if w.rank != n or len(ent) != n:
        raise RankMismatchError("element rank %d, weight length %d, context rank %d"
                                % (w.rank, len(ent), n))
    inv = w.inverse().window
    out = []
    for p in inv:
        k, r = divmod(p - 1, n)
        out.append(ent[r] + k * e)
    return _wrap(out, a)


def is_antidominant(ctx, a):
    o = _entries(a)
    return all(o[i] <= o[i + 1] for i in range(len(o) - 1)) and o[-1] <= o[0] + ctx.e


def wt_antidominant_rep(ctx, a):
    """(o, g): the antidominant orbit point and the shortest g with g . o = a."""
    ent = _entries(a)
    if len(ent) != ctx.N:
        raise RankMismatchError("weight length %d vs rank %d" % (len(ent), ctx.N))
    e = ctx.e
    o = sorted(v % e for v in ent)
    shift, rem = divmod(sum(ent) - sum(o), e)
    assert rem == 0
    # rotate: each step lifts the smallest entry by e, keeping antidominance
    for _ in range(shift):
        o = o[1:] + [o[0] + e]
    for _ in range(-shift):
        o = [o[-1] - e] + o[:-1]
    o = _wrap(o, a)
    g = wt_to_min_rep(ctx, a, o, wt_stabilizer(ctx, o))
    return o, g


def wt_stabilizer(ctx, o):
    ent = _entries(o)
    if not is_antidominant(ctx, ent):
        raise NotAntidominantError("%r is not antidominant at level -%d" % (ent, ctx.e))
    n = ctx.N
    gens = [i for i in range(1, n) if ent[i - 1] == ent[i]]
    if n > 1 and ent[-1] == ent[0] + ctx.e:
        gens.append(0)
    return ParabolicSubset(n, gens)


def wt_is_nu_dominant(ctx, a):
    """Strict form on shifted tuples: a_i > a_{i+1} for every i in nu."""
    ent = _entries(a)
    return all(ent[i - 1] > ent[i] for i in ctx.nu if i)


def _residue_signature(ent, e):
    return Counter(v % e for v in ent), sum(ent)


def wt_to_min_rep(ctx, target, o, mu):
    """The shortest w in its coset w W_mu with w . o = target."""
    t, oe = _entries(target), _entries(o)
    n, e = ctx.N, ctx.e
    if len(t) != n or len(oe) != n:
        raise RankMismatchError("weight length does not match rank %d" % n)
    if _residue_signature(t, e) != _residue_signature(oe, e):
        raise OrbitMismatchError("%r is not in the orbit of %r (level -%d)" % (t, oe, e))
    # integer positions carrying each value, for the target and for o
    want = defaultdict(list)
    have = defaultdict(list)
    for seq, book in ((t, want), (oe, have)):
        values = set(t)
        for j, v in enumerate(seq, start=1):
            for u in values:
                k, r = divmod(u - v, e)
                if not r:
                    book[u].append(j + k * n)
    inv = [0] * n
    for u in set(t):
        src, dst = sorted(want[u]), sorted(have[u])
        if len(src) != len(dst):
            raise OrbitMismatchError("value %d occurs with different multiplicity" % u)
        for i, p in zip(src, dst):
            if 1 <= i <= n:
                inv[i - 1] = p
    w = AffinePermutation(inv).inverse()
    if wt_act(ctx, w, oe).entries != t:
        raise OrbitMismatchError("no element maps %r to %r" % (oe, t))
    if any(w.has_right_descent(i) for i in mu):
        raise ValueError("stabilizer %r does not match %r" % (mu, oe))
    return w
