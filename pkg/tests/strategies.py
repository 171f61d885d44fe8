"""Shared hypothesis strategies for exact polynomials."""
from fractions import Fraction

from hypothesis import strategies as st

from symineq import MultiPoly, UniPoly

VARS = ("x", "y", "z")

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
nonzero_fractions = small_fractions.filter(bool)


@st.composite
def multipolys(draw, vars=VARS, max_terms=6, max_exp=3):
    exps = st.tuples(*[st.integers(0, max_exp) for _ in vars])
    terms = draw(st.dictionaries(exps, small_fractions, max_size=max_terms))
    return MultiPoly(vars, terms)


@st.composite
def unipolys(draw, max_degree=6, var="t"):
    coeffs = draw(st.lists(small_fractions, max_size=max_degree + 1))
    return UniPoly(coeffs, var)


points = st.tuples(small_fractions, small_fractions, small_fractions)
