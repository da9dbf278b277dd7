"""Exact Laurent polynomials in one variable q with integer coefficients.

Values are immutable and hashable.  The canonical text form lists terms in
ascending exponent order, e.g. ``"q^-1-q"`` or ``"1+q^2"``; :func:`parse`
reads it back exactly.
"""

from __future__ import annotations

import re

__all__ = ["LaurentPoly", "ZERO", "ONE", "Q", "QINV", "parse",
           "lp_mul", "lp_bar", "lp_koszul_twist", "lp_eval_one"]


class LaurentPoly:
    """An element of Z[q, q^-1], stored as {exponent: nonzero coefficient}."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = dict(terms)
        self._terms = {k: c for k, c in terms.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        # caller guarantees no zero coefficients
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls._raw({exp: coeff} if coeff else {})

    @classmethod
    def const(cls, c):
        return cls._raw({0: c} if c else {})

    @property
    def terms(self):
        """Copy of the exponent -> coefficient mapping."""
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coeff(self, exp):
        return self._terms.get(exp, 0)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degree(self):
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return max(self._terms)

    def valuation(self):
        if not self._terms:
            raise ValueError("valuation of the zero polynomial")
        return min(self._terms)

    # ring structure

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._raw({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) == 1:
            (k0, c0), = a.items()
            return LaurentPoly._raw({k0 + k: c0 * c for k, c in b.items()})
        if len(b) == 1:
            (k0, c0), = b.items()
            return LaurentPoly._raw({k0 + k: c0 * c for k, c in a.items()})
        out = {}
        for k1, c1 in a.items():
            for k2, c2 in b.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def shift(self, n):
        """Multiply by q^n."""
        if not n:
            return self
        return LaurentPoly._raw({k + n: c for k, c in self._terms.items()})

    def __pow__(self, n):
        if n < 0:
            if len(self._terms) == 1:
                (k, c), = self._terms.items()
                if c in (1, -1):
                    return LaurentPoly._raw({k * n: c ** (-n)})
            raise ValueError("only monomial units can be inverted")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # involutions and specialisations

    def bar(self):
        """q -> q^-1."""
        return LaurentPoly._raw({-k: c for k, c in self._terms.items()})

    def koszul_twist(self):
        """q -> -q^-1."""
        return LaurentPoly._raw({-k: (-c if k & 1 else c)
                                 for k, c in self._terms.items()})

    def eval_one(self):
        return sum(self._terms.values())

    def __call__(self, value):
        return sum(c * value ** k for k, c in self._terms.items())

    def substitute_neg(self):
        """q -> -q."""
        return LaurentPoly._raw({k: (-c if k & 1 else c)
                                 for k, c in self._terms.items()})

    def positive_part(self):
        """Terms of strictly positive degree."""
        return LaurentPoly._raw({k: c for k, c in self._terms.items() if k > 0})

    def is_polynomial(self):
        """True if no negative exponents occur (i.e. lies in Z[q])."""
        return all(k >= 0 for k in self._terms)

    def is_nonnegative(self):
        return all(c > 0 for c in self._terms.values())

    # text form

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for k, c in sorted(self._terms.items()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = "q" if k == 1 else "q^%d" % k
                body = mono if a == 1 else "%d%s" % (a, mono)
            out.append(sign + body)
        s = "".join(out)
        return s[1:] if s[0] == "+" else s

    def __repr__(self):
        return "LaurentPoly(%r)" % str(self)


_TERM = re.compile(r"([+-])(\d*)(q(?:\^(-?\d+))?)?")


def parse(text):
    """Inverse of ``str`` on :class:`LaurentPoly`.

    Accepts the canonical form and also tolerates whitespace, any term order
    and repeated exponents.
    """
    s = "".join(text.split())
    if not s:
        raise ValueError("empty polynomial string")
    if s == "0":
        return ZERO
    if s[0] not in "+-":
        s = "+" + s
    pos = 0
    out = {}
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError("cannot parse polynomial %r" % text)
        sign = -1 if m.group(1) == "-" else 1
        c = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            k = int(m.group(4)) if m.group(4) is not None else 1
        else:
            k = 0
        out[k] = out.get(k, 0) + sign * c
        pos = m.end()
    return LaurentPoly(out)


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({0: 1})
Q = LaurentPoly._raw({1: 1})
QINV = LaurentPoly._raw({-1: 1})


def lp_mul(a, b):
    return a * b


def lp_bar(a):
    return a.bar()


def lp_koszul_twist(a):
    return a.koszul_twist()


def lp_eval_one(a):
    return a.eval_one()
