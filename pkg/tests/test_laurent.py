import pytest
from hypothesis import given

from klschur.laurent import (
    ONE, Q, QINV, ZERO, LaurentPoly, lp_bar, lp_eval_one, lp_koszul_twist, lp_mul, parse,
)

from strategies import polys


def P(text):
    return parse(text)


@pytest.mark.parametrize("a,b,want", [
    ("q+q^-1", "q", "q^2+1"),
    ("1+q", "1-q", "1-q^2"),
    ("0", "q^5-3", "0"),
])
def test_mul_examples(a, b, want):
    assert lp_mul(P(a), P(b)) == P(want)


@pytest.mark.parametrize("a,want", [("q^2+q^-1", "q^-2+q"), ("3", "3"), ("q-q^-1", "q^-1-q")])
def test_bar_examples(a, want):
    assert lp_bar(P(a)) == P(want)


@pytest.mark.parametrize("a,want", [("q", "-q^-1"), ("1+q^2", "1+q^-2"), ("q+q^3", "-q^-1-q^-3")])
def test_koszul_examples(a, want):
    assert lp_koszul_twist(P(a)) == P(want)


@pytest.mark.parametrize("a,want", [("1+q+q^2", 3), ("q^-1-q", 0), ("0", 0)])
def test_eval_one_examples(a, want):
    assert lp_eval_one(P(a)) == want


def test_constants():
    assert Q * QINV == ONE
    assert str(ZERO) == "0"
    assert not ZERO
    assert LaurentPoly({3: 0}) == ZERO


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse("q^^2")


@given(polys)
def test_bar_and_twist_are_involutions(a):
    assert lp_bar(lp_bar(a)) == a
    assert lp_koszul_twist(lp_koszul_twist(a)) == a


@given(polys, polys)
def test_ring_homomorphisms(a, b):
    for f in (lp_bar, lp_koszul_twist):
        assert f(a * b) == f(a) * f(b)
        assert f(a + b) == f(a) + f(b)


@given(polys, polys)
def test_eval_one_multiplicative(a, b):
    assert lp_eval_one(lp_mul(a, b)) == lp_eval_one(a) * lp_eval_one(b)


@given(polys)
def test_canonical_string_round_trips(a):
    assert parse(str(a)) == a


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
