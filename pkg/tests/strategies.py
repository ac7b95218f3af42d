"""Hypothesis strategies for small polynomials."""

from fractions import Fraction

from hypothesis import strategies as st

from satnorm import Poly


def coefficients(p=0):
    if p:
        return st.integers(1, p - 1)
    return st.builds(Fraction, st.integers(-6, 6).filter(bool), st.integers(1, 4))


def polys(ring, max_terms=4, max_deg=3):
    exps = st.tuples(*[st.integers(0, max_deg) for _ in ring.vars])
    terms = st.dictionaries(exps, coefficients(ring.p), max_size=max_terms)
    return terms.map(lambda d: Poly.from_terms(ring, d))
