"""Graded decomposition and Cartan matrices of blocks.

Rows are standard modules, columns simples: ``D[lam][xi]`` is the graded
multiplicity of the simple labelled ``xi`` in the standard labelled ``lam``.
Each label has a shortest coset representative ``w`` (of ``W / W_mu``) and

    D[lam][xi] = sum over z in W_nu of (-q)^{l(z)} h^{z w_lam, w_xi}.

Two evaluations of that sum are provided.  :func:`dc_parabolic_verma_decomp`
is the literal formula over full inverse Kazhdan-Lusztig polynomials, usable
at small rank.  :class:`BlockEngine` passes to inverses ``a = w^-1`` (shortest
representatives of ``W_mu \\ W``), where ``h^{x,y} = n^{x,y}`` for the sign
module of ``W_mu`` and everything can be computed on Bruhat intervals between
labels.

The default route inverts the unitriangular pairing matrix
``E[lam][xi] = (-1)^{l(a_lam) + l(a_xi)} n_{a_xi, a_lam}``, which needs only
the ordinary parabolic polynomials between labels; its inverse is ``D``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .coxeter import RankMismatchError, _bruhat_leq, cx_bruhat_leq, cx_parabolic_elements
from .hecke import (
    IntervalKL, NotMinimalError, covers_below, get_basis, region, hk_inverse_kl, hk_kl_poly,
)
from .laurent import ONE, ZERO
from .multipartitions import (
    Block, context_for, mp_choose_m, mp_enumerate_block, mp_to_weyl, validate_m,
)

__all__ = [
    "DecompMatrix", "BlockResult", "BlockEngine", "InvariantViolation",
    "dc_verma_decomp", "dc_parabolic_verma_decomp", "dc_simple_into_vermas",
    "dc_truncated_verma_decomp", "dc_truncated_parabolic_decomp",
    "dc_simple_into_parabolic_vermas", "dc_koszul_coefficient_transform",
    "dc_block_matrices", "cartan_from_decomp", "check_decomp", "check_cartan",
    "pairing_matrix", "block_setup", "block_result",
]


class InvariantViolation(RuntimeError):
    """A computed matrix breaks a structural property that must hold."""


def _signed(p, parity):
    return -p if parity % 2 else p


def _neg_q_power(k):
    # (-q)^k
    return ONE.shift(k) * (-1 if k % 2 else 1)


def dc_verma_decomp(x, y):
    return hk_inverse_kl(x, y)


def dc_parabolic_verma_decomp(x, y, nu):
    """sum over z in W_nu of (-q)^{l(z)} h^{zx,y}."""
    if x.rank != y.rank or nu.rank != x.rank:
        raise RankMismatchError("rank mismatch")
    nu.require_finite()
    total = ZERO
    for z in cx_parabolic_elements(nu):
        p = hk_inverse_kl(z * x, y)
        if p:
            total = total + p * _neg_q_power(z.length())
    return total


def _nu_dominant_element(w, nu):
    # w . o is (strictly) nu-dominant for regular antidominant o
    return all(w.has_left_descent(i) for i in nu)


def _require_down_closed(elements):
    for w in elements:
        for i in w.right_descents():
            if w.right_mul(i) not in elements:
                raise ValueError("interval is not downward closed: %s missing below %s"
                                 % (w.right_mul(i), w))


def dc_simple_into_vermas(x, elements, nu):
    """{y: (-1)^{l(x)+l(y)} h_{y^-1,x^-1}} over nu-dominant y <= x in ``elements``."""
    elements = frozenset(elements)
    _require_down_closed(elements)
    xi = x.inverse()
    out = {}
    for y in elements:
        if not _nu_dominant_element(y, nu) or not cx_bruhat_leq(y, x):
            continue
        p = hk_kl_poly(y.inverse(), xi)
        if p:
            out[y] = _signed(p, x.length() + y.length())
    return out


def dc_truncated_verma_decomp(x, y):
    return hk_kl_poly(x, y)


def dc_truncated_parabolic_decomp(x, y, mu):
    from .hecke import hk_parabolic_n
    return hk_parabolic_n(x, y, mu)


def dc_simple_into_parabolic_vermas(x, mu, nu, elements, kl=None):
    """{y: (-1)^{l(x)+l(y)} n^mu_{y^-1,x^-1}} for nu-dominant shortest reps y.

    ``x`` and the members of ``elements`` are shortest representatives of
    ``W / W_mu``.  ``kl`` may be an :class:`IntervalKL` for ``mu``; by default
    the global basis of the sign module is used.
    """
    if kl is None:
        eng = get_basis(x.rank, mu)
        check, poly = eng.require_member, eng.poly
    else:
        def check(w):
            if not kl.is_member(w):
                raise NotMinimalError("%s is not a shortest representative" % w)
        poly = kl.poly
    xi = x.inverse()
    check(xi)
    out = {}
    for y in elements:
        yi = y.inverse()
        check(yi)
        if not cx_bruhat_leq(y, x):
            continue
        p = poly(yi, xi)
        if p:
            out[y] = _signed(p, x.length() + y.length())
    return out


def dc_koszul_coefficient_transform(coeffs):
    return {w.inverse(): p.koszul_twist() for w, p in coeffs.items()}


@dataclass
class DecompMatrix:
    labels: list
    entries: list
    kind: str

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def size(self):
        return len(self.labels)

    def at_one(self):
        return [[p.eval_one() for p in row] for row in self.entries]


def cartan_from_decomp(D):
    n = D.size()
    C = [[ZERO] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            acc = ZERO
            for r in range(n):
                if D.entries[r][a] and D.entries[r][b]:
                    acc = acc + D.entries[r][a] * D.entries[r][b]
            C[a][b] = acc
    return DecompMatrix(D.labels, C, "c")


def _det(mat):
    # exact integer determinant by fraction-free elimination (Bareiss)
    m = [list(r) for r in mat]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1] if n else 1


def check_decomp(D):
    """Problems with D: unitriangularity, positivity, det D(1)."""
    bad = []
    n = D.size()
    for i in range(n):
        for j in range(n):
            p = D.entries[i][j]
            if i == j and p != ONE:
                bad.append("diagonal entry (%d,%d) = %s" % (i, j, p))
            elif j > i and p:
                bad.append("entry above diagonal (%d,%d) = %s" % (i, j, p))
            elif i != j and p and not (p.valuation() >= 1 and p.is_nonnegative()):
                bad.append("entry (%d,%d) = %s not in qN[q]" % (i, j, p))
    if _det(D.at_one()) != 1:
        bad.append("det D(1) = %d" % _det(D.at_one()))
    return bad


def check_cartan(C):
    bad = []
    n = C.size()
    for i in range(n):
        for j in range(n):
            p = C.entries[i][j]
            if p != C.entries[j][i]:
                bad.append("C not symmetric at (%d,%d)" % (i, j))
            if p and not (p.is_polynomial() and p.is_nonnegative()):
                bad.append("C entry (%d,%d) = %s not in N[q]" % (i, j, p))
        if C.entries[i][i].coeff(0) != 1:
            bad.append("C diagonal (%d,%d) = %s not in 1 + qN[q]" % (i, i, C.entries[i][i]))
    return bad


class BlockEngine:
    """Decomposition numbers of one block through interval-local polynomials.

    ``reps`` are the shortest representatives ``w`` of ``W / W_mu`` attached
    to the labels; ``nu`` is the parabolic of the standard modules.
    """

    def __init__(self, reps, mu, nu, kl=None):
        self.rank = reps[0].rank
        self.mu, self.nu = mu, nu
        self.kl = kl or IntervalKL(self.rank, mu)
        self.inv = [w.inverse() for w in reps]
        for a in self.inv:
            if not self.kl.is_member(a):
                raise NotMinimalError("%s is not a shortest representative" % a.inverse())
        self._region = None
        self._tops_by_row = None
        self._cols = {}
        self._invcols = {}
        self._lock = threading.Lock()

    def _above_some_label(self, x):
        xw = x.window
        return any(_bruhat_leq(a.window, xw) for a in self.inv)

    def _tops(self, a):
        """{x: l(z)} over x = a z, z in W_nu, x above some label, x a member."""
        out = {}
        seen = {a}
        level = [a]
        la = a.length()
        while level:
            nxt = []
            for x in level:
                if self.kl.is_member(x):
                    out[x] = la - x.length()
                for i in self.nu:
                    if x.has_right_descent(i):
                        y = x.right_mul(i)
                        if y not in seen and self._above_some_label(y):
                            seen.add(y)
                            nxt.append(y)
            level = sorted(nxt)
        return out

    def region(self):
        """Members lying between some label and some top, shared by all entries."""
        if self._region is not None:
            return self._region
        tops = {}
        for i, a in enumerate(self.inv):
            tops[i] = self._tops(a)
        self._tops_by_row = tops
        start = set()
        for t in tops.values():
            start.update(t)
        seen = set(start)
        by_len = {}
        for x in start:
            by_len.setdefault(x.length(), set()).add(x)
        floor = min(a.length() for a in self.inv)
        ell = max(by_len) if by_len else floor
        while ell > floor:
            for w in sorted(by_len.get(ell, ())):
                for c in covers_below(w):
                    if c in seen or not self.kl.is_member(c) or not self._above_some_label(c):
                        continue
                    seen.add(c)
                    by_len.setdefault(ell - 1, set()).add(c)
            ell -= 1
        self._region = frozenset(seen)
        return self._region

    def _column(self, w):
        col = self._cols.get(w)
        if col is None:
            col = self.kl.column(w, self._region)
            with self._lock:
                self._cols[w] = col
        return col

    def inverse_column(self, j):
        """{w: n^{w,y}} for the label y = inv[j] and w in the region above it."""
        col = self._invcols.get(j)
        if col is not None:
            return col
        region = self.region()
        y = self.inv[j]
        ywin = y.window
        above = sorted((w for w in region if _bruhat_leq(ywin, w.window)),
                       key=lambda v: (v.length(), v.window))
        col = {}
        for w in above:
            if w == y:
                col[w] = ONE
                continue
            acc = ZERO
            lw = w.length()
            for z, p in self._column(w).items():
                if z == w:
                    continue
                c = col.get(z)
                if c:
                    acc = acc + _signed(p * c, lw + z.length() + 1)
            if acc:
                col[w] = acc
        with self._lock:
            self._invcols[j] = col
        return col

    def entry(self, i, j):
        self.region()
        col = self.inverse_column(j)
        total = ZERO
        for x, lz in self._tops_by_row[i].items():
            p = col.get(x)
            if p:
                total = total + p * _neg_q_power(lz)
        return total

    def matrix(self):
        n = len(self.inv)
        return [[self.entry(i, j) for j in range(n)] for i in range(n)]


def pairing_matrix(reps, mu, kl=None):
    """E[x][t] = (-1)^{l(a_x)+l(a_t)} n_{a_t,a_x} with a = w^-1, over labels."""
    rank = reps[0].rank
    kl = kl or IntervalKL(rank, mu)
    inv = [w.inverse() for w in reps]
    for a in inv:
        if not kl.is_member(a):
            raise NotMinimalError("%s is not a shortest representative" % a.inverse())
    shared = region(inv, inv, mu)
    out = []
    for ax in inv:
        col = kl.column(ax, shared)
        lx = ax.length()
        out.append([_signed(col[a], lx + a.length()) if a in col else ZERO
                    for a in inv])
    return out


def invert_unitriangular(E):
    """Inverse of a lower unitriangular matrix of Laurent polynomials."""
    n = len(E)
    for i in range(n):
        if E[i][i] != ONE or any(E[i][j] for j in range(i + 1, n)):
            raise InvariantViolation("pairing matrix is not lower unitriangular")
    D = [[ZERO] * n for _ in range(n)]
    for y in range(n):
        D[y][y] = ONE
        for x in range(y + 1, n):
            acc = ZERO
            for t in range(y, x):
                if E[x][t] and D[t][y]:
                    acc = acc + E[x][t] * D[t][y]
            D[x][y] = -acc
    return D


@dataclass
class BlockResult:
    e: int
    s: tuple
    block: Block
    m: tuple
    labels: list
    D: DecompMatrix
    C: DecompMatrix


def block_setup(chg, d, m=None):
    """labels, representatives, (o, mu), nu for a block."""
    n = d.size()
    if m is None or m == "auto":
        m = mp_choose_m(chg, n)
    m = tuple(m)
    problems = validate_m(chg, m, n)
    if problems:
        raise ValueError("; ".join(problems))
    labels = mp_enumerate_block(chg, d, m)
    if not labels:
        raise ValueError("block %s is empty for charge %r" % (d, chg.s))
    ctx = context_for(m, chg.e)
    data = [mp_to_weyl(lam, ctx, chg, m) for lam in labels]
    anchors = {(o.entries, mu) for _, o, mu in data}
    if len(anchors) != 1:
        raise InvariantViolation("labels of one block lie in different orbits: %r" % anchors)
    reps = [w for w, _, _ in data]
    mu = data[0][2]
    return m, labels, reps, mu, ctx.nu


def dc_block_matrices(chg, d, m=None, method="pairing", kl=None):
    """(D, C) for the block of residue content d; see module docstring.

    ``method`` is "pairing" (default), "interval" (the sum over W_nu on
    intervals) or "direct" (literal formula, small rank only).
    """
    m, labels, reps, mu, nu = block_setup(chg, d, m)
    if method == "pairing":
        entries = invert_unitriangular(pairing_matrix(reps, mu, kl=kl))
    elif method == "interval":
        entries = BlockEngine(reps, mu, nu, kl=kl).matrix()
    elif method == "direct":
        entries = [[dc_parabolic_verma_decomp(x, y, nu) for y in reps] for x in reps]
    else:
        raise ValueError("method must be 'pairing', 'interval' or 'direct'")
    D = DecompMatrix(labels, entries, "d")
    return D, cartan_from_decomp(D)


def block_result(chg, d, m=None, kl=None, method="pairing"):
    mm = tuple(mp_choose_m(chg, d.size()) if m is None or m == "auto" else m)
    D, C = dc_block_matrices(chg, d, mm, method=method, kl=kl)
    bad = check_decomp(D) + check_cartan(C)
    if bad:
        raise InvariantViolation("block %s: %s" % (d, "; ".join(bad)))
    return BlockResult(chg.e, chg.s, d, mm, D.labels, D, C)
