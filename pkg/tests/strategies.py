"""Shared hypothesis strategies for the test suite."""

from fractions import Fraction

import hypothesis.strategies as st

from bicyclic.algebra import AlgebraElement
from bicyclic.modules import Vec

rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
nonzero_rationals = rationals.filter(bool)

monomial_pairs = st.tuples(st.integers(0, 6), st.integers(0, 6))


def elements(max_exp: int = 5, max_terms: int = 4):
    return st.dictionaries(
        st.tuples(st.integers(0, max_exp), st.integers(0, max_exp)),
        rationals,
        max_size=max_terms,
    ).map(AlgebraElement)


def nonzero_elements(max_exp: int = 5, max_terms: int = 4):
    return elements(max_exp, max_terms).filter(bool)


def vecs(max_index: int = 8, max_terms: int = 3):
    return st.dictionaries(
        st.integers(0, max_index), rationals, max_size=max_terms
    ).map(Vec)


def nonzero_vecs(max_index: int = 8, max_terms: int = 3):
    return vecs(max_index, max_terms).filter(bool)
