"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from qca.laurent import LaurentV

small = st.integers(min_value=-5, max_value=5)


@st.composite
def laurent_v(draw, max_terms=4, exp_range=4):
    n = draw(st.integers(min_value=0, max_value=max_terms))
    terms = [(draw(st.integers(-exp_range, exp_range)), draw(small)) for _ in range(n)]
    return LaurentV(terms)


@st.composite
def int_matrix(draw, rows, cols, lo=-5, hi=5):
    return tuple(tuple(draw(st.integers(lo, hi)) for _ in range(cols)) for _ in range(rows))
