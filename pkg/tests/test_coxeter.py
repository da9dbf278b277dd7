import pytest
from hypothesis import given

from klschur.coxeter import (
    AffinePermutation, InfiniteParabolicError, ParabolicSubset, cx_bruhat_leq, cx_compose,
    cx_coset_rep, cx_descents, cx_enumerate_min_reps, cx_inverse, cx_length, cx_lower_interval,
    cx_parabolic_elements, from_word, identity, simple,
)

from strategies import ranked


def W(*vals):
    return AffinePermutation(vals)


def test_compose_examples():
    s1, s2 = simple(3, 1), simple(3, 2)
    assert cx_compose(identity(3), s2) == s2
    assert cx_compose(s1, s1) == identity(3)
    assert cx_compose(s1, s2) == W(2, 3, 1)


def test_inverse_examples():
    assert cx_inverse(identity(3)) == identity(3)
    for i in range(3):
        assert cx_inverse(simple(3, i)) == simple(3, i)
    assert cx_inverse(W(2, 3, 1)) == W(3, 1, 2)


def test_length_examples():
    assert cx_length(identity(4)) == 0
    assert all(cx_length(simple(4, i)) == 1 for i in range(4))
    assert W(0, 3) == simple(2, 0)
    assert cx_length(W(0, 3)) == 1


def test_descent_examples():
    assert cx_descents(identity(3), "right") == set()
    assert cx_descents(simple(3, 1), "right") == {1}
    assert cx_descents(W(2, 3, 1), "right") == {2}


def test_bruhat_examples():
    s1, s2 = simple(3, 1), simple(3, 2)
    assert cx_bruhat_leq(identity(3), s1 * s2 * s1)
    assert not cx_bruhat_leq(s1, s2)
    assert cx_bruhat_leq(s1, s1 * s2 * s1)


def test_lower_interval_examples():
    e, s1, s2 = identity(3), simple(3, 1), simple(3, 2)
    assert cx_lower_interval(e) == {e}
    assert cx_lower_interval(s1) == {e, s1}
    assert cx_lower_interval(s1 * s2) == {e, s1, s2, s1 * s2}


def test_parabolic_examples():
    assert cx_parabolic_elements(ParabolicSubset(3)) == {identity(3)}
    assert cx_parabolic_elements(ParabolicSubset(3, [1])) == {identity(3), simple(3, 1)}
    assert len(cx_parabolic_elements(ParabolicSubset(4, [1, 2]))) == 6
    with pytest.raises(InfiniteParabolicError):
        cx_parabolic_elements(ParabolicSubset(3, [0, 1, 2]))


def test_coset_rep_examples():
    f = ParabolicSubset(3, [1])
    s1, s2 = simple(3, 1), simple(3, 2)
    assert cx_coset_rep(s1, f, "right", "min") == identity(3)
    assert cx_coset_rep(identity(3), f, "right", "max") == s1
    assert cx_coset_rep(s2 * s1, f, "right", "min") == s2


def test_enumerate_min_reps_examples():
    s1, s2 = simple(3, 1), simple(3, 2)
    f = ParabolicSubset(3, [1])
    finite = ParabolicSubset(3, [1, 2])
    assert cx_enumerate_min_reps(f, "left", 2, within=finite) == {identity(3), s2, s2 * s1}
    affine = cx_enumerate_min_reps(f, "left", 2)
    assert {identity(3), s2, s2 * s1} < affine
    assert all(not w.has_left_descent(1) for w in affine)
    assert cx_enumerate_min_reps(f, "left", 0) == {identity(3)}
    assert len(cx_enumerate_min_reps(ParabolicSubset(2), "left", 3)) == 7


def test_finite_s4_inside_affine_rank4():
    within = ParabolicSubset(4, [1, 2, 3])
    assert len(cx_enumerate_min_reps(ParabolicSubset(4), "left", 6, within=within)) == 24


def test_window_validation():
    with pytest.raises(ValueError):
        AffinePermutation([1, 1])
    with pytest.raises(ValueError):
        AffinePermutation([2, 3])   # window sum must be 1 + ... + N


@given(ranked)
def test_length_matches_reduced_word(arg):
    n, w = arg
    word = w.reduced_word()
    assert len(word) == cx_length(w)
    assert from_word(n, word) == w


@given(ranked)
def test_inverse_is_involutive_and_length_preserving(arg):
    n, w = arg
    assert cx_inverse(cx_inverse(w)) == w
    assert cx_length(cx_inverse(w)) == cx_length(w)
    assert cx_compose(w, cx_inverse(w)) == identity(n)


@given(ranked)
def test_descents_change_length_by_one(arg):
    n, w = arg
    for i in range(n):
        d = cx_length(w.right_mul(i)) - cx_length(w)
        assert d == (-1 if i in cx_descents(w, "right") else 1)
        d = cx_length(w.left_mul(i)) - cx_length(w)
        assert d == (-1 if i in cx_descents(w, "left") else 1)


@given(ranked)
def test_lower_interval_matches_subwords(arg):
    n, w = arg
    word = w.reduced_word()
    subwords = {identity(n)}
    for i in word:
        subwords |= {x.right_mul(i) for x in subwords}
    assert cx_lower_interval(w) == subwords
    for x in subwords:
        assert cx_bruhat_leq(x, w)
