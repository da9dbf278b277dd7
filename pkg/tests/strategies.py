"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from klschur.coxeter import from_word
from klschur.laurent import LaurentPoly

polys = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentPoly)


def words(rank, max_len=6):
    return st.lists(st.integers(0, rank - 1), max_size=max_len)


def elements(rank, max_len=6):
    return words(rank, max_len).map(lambda w: from_word(rank, w))


ranked = st.integers(2, 4).flatmap(lambda n: st.tuples(st.just(n), elements(n)))
