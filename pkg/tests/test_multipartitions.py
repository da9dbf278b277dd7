from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from klschur.coxeter import ParabolicSubset, simple
from klschur.weights import wt_act, wt_is_nu_dominant
from klschur.multipartitions import (
    Block, Charge, Multipartition, RowOverflowError, context_for, mp_choose_m,
    mp_enumerate_block, mp_omega_weight, mp_residue_content, mp_star, mp_to_weyl,
    multipartitions, nu_for_m, parse_block, parse_multipartition, partitions, validate_m,
)


def M(*comps):
    return Multipartition(tuple(tuple(c) for c in comps))


def test_residue_examples():
    assert mp_residue_content(M([2], [1]), Charge((0, 1), 2)) == Block({0: 1, 1: 2}, 2)
    assert mp_residue_content(M([], []), Charge((0, 1), 2)) == Block({}, 2)
    assert mp_residue_content(M([1, 1]), Charge((0,), 3)) == Block({0: 1, 2: 1}, 3)


def test_enumerate_examples():
    assert mp_enumerate_block(Charge((0,), 2), Block({0: 1, 1: 1}, 2)) == [M([2]), M([1, 1])]
    assert mp_enumerate_block(Charge((0, 1), 2), Block({}, 2)) == [M([], [])]
    assert mp_enumerate_block(Charge((0, 1), 2), Block({1: 1}, 2)) == [M([], [1])]


def test_star_examples():
    assert mp_star(M([2], [1])) == M([1], [1, 1])
    assert mp_star(M([], [])) == M([], [])
    assert mp_star(M([2, 1])) == M([2, 1])


def test_choose_m_examples():
    assert mp_choose_m(Charge((0, 0), 2), 2) == (2, 2)
    assert mp_choose_m(Charge((1,), 3), 2) == (2,)
    assert mp_choose_m(Charge((1, 2), 3), 0) == (1, 2)
    assert validate_m(Charge((0,), 2), (3,), 2)
    assert not validate_m(Charge((0,), 2), (2,), 2)


def test_omega_examples():
    chg = Charge((0, 0), 2)
    assert mp_omega_weight(M([1], []), (2, 2), chg).entries == (3, 1, 2, 1)
    assert mp_omega_weight(M([], []), (2, 2), chg).entries == (2, 1, 2, 1)
    assert mp_omega_weight(M([2]), (2,), Charge((0,), 2)).entries == (4, 1)
    with pytest.raises(RowOverflowError):
        mp_omega_weight(M([1, 1, 1]), (2,), Charge((0,), 2))
    assert isinstance(mp_omega_weight(M([2]), (2,), Charge((0,), 2)).delta_coeff, Fraction)


def test_to_weyl_examples():
    chg = Charge((0,), 2)
    c = context_for((2,), 2)
    w, o, mu = mp_to_weyl(M([2]), c, chg, (2,))
    assert o.entries == (2, 3) and w == simple(2, 1) and mu == ParabolicSubset(2)
    w, o, mu = mp_to_weyl(M([1, 1]), c, chg, (2,))
    assert o.entries == (2, 3) and w.length() == 2


def test_nu_for_m():
    assert nu_for_m((2, 2)) == ParabolicSubset(4, [1, 3])
    assert nu_for_m((3,)) == ParabolicSubset(3, [1, 2])


def test_parsing():
    assert parse_multipartition("[[2],[1]]") == M([2], [1])
    assert str(M([2], [1])) == "[[2],[1]]"
    assert parse_block("0:1,1:2", 2) == Block({0: 1, 1: 2}, 2)
    assert str(parse_block("1:2,0:1", 2)) == "0:1,1:2"
    with pytest.raises(ValueError):
        parse_block("0-1", 2)
    with pytest.raises(ValueError):
        Multipartition(((1, 2),))


def test_partition_counts():
    assert [len(list(partitions(n))) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert len(list(multipartitions(3, 2))) == 10


blocks = st.tuples(st.integers(2, 3), st.integers(1, 2), st.integers(0, 4)).flatmap(
    lambda t: st.tuples(st.just(t[0]), st.lists(st.integers(0, t[0] - 1), min_size=t[1],
                                                  max_size=t[1]), st.just(t[2])))


@given(blocks)
def test_blocks_partition_the_multipartitions(arg):
    e, s, n = arg
    chg = Charge(tuple(s), e)
    all_mps = list(multipartitions(n, chg.level))
    contents = sorted({mp_residue_content(lam, chg) for lam in all_mps})
    seen = []
    for d in contents:
        members = mp_enumerate_block(chg, d)
        assert members and all(mp_residue_content(lam, chg) == d for lam in members)
        seen += members
    assert sorted(map(str, seen)) == sorted(map(str, all_mps))


@given(blocks)
def test_labels_of_a_block_share_one_anchor(arg):
    e, s, n = arg
    chg = Charge(tuple(s), e)
    m = mp_choose_m(chg, n)
    assert not validate_m(chg, m, n)
    c = context_for(m, e)
    for d in sorted({mp_residue_content(lam, chg) for lam in multipartitions(n, chg.level)}):
        data = [mp_to_weyl(lam, c, chg, m) for lam in mp_enumerate_block(chg, d, m)]
        assert len({(o.entries, mu) for _, o, mu in data}) == 1
        ws = [w for w, _, _ in data]
        assert len(set(ws)) == len(ws)
        for w, o, _ in data:
            assert wt_is_nu_dominant(c, wt_act(c, w, o))
        lengths = [w.length() for w in ws]
        assert lengths == sorted(lengths)


@given(blocks)
def test_star_is_an_involution(arg):
    e, s, n = arg
    for lam in multipartitions(n, len(s)):
        assert mp_star(mp_star(lam)) == lam
        assert mp_star(lam).size() == lam.size()
