"""Hypothesis strategies for small homogeneous data."""
from hypothesis import strategies as st

from cmduality import Polynomial, PolyRing
from cmduality.poly import monomials_of_degree


def exponents(n, max_deg=3):
    return st.lists(st.integers(0, max_deg), min_size=n, max_size=n).map(tuple)


@st.composite
def homogeneous(draw, ring, degree=None, max_deg=3, max_terms=4, allow_zero=True):
    d = draw(st.integers(0, max_deg)) if degree is None else degree
    monos = monomials_of_degree(ring.n, d)
    picked = draw(st.lists(st.sampled_from(monos), min_size=0 if allow_zero else 1, max_size=max_terms, unique=True))
    coeffs = {m: draw(st.integers(1, ring.p - 1)) for m in picked}
    return Polynomial(ring, coeffs)


@st.composite
def monomial_ideal(draw, n, max_deg=3, max_gens=4):
    gens = draw(
        st.lists(
            exponents(n, max_deg).filter(lambda e: 0 < sum(e) <= max_deg),
            min_size=1,
            max_size=max_gens,
        )
    )
    return gens


@st.composite
def artinian_monomial_ideal(draw, n, max_pow=3, extra=3):
    """Pure powers of every variable plus a few random monomials, so S/I has finite length."""
    gens = []
    for i in range(n):
        e = [0] * n
        e[i] = draw(st.integers(1, max_pow))
        gens.append(tuple(e))
    gens += draw(st.lists(exponents(n, 2).filter(lambda e: sum(e) > 0), max_size=extra))
    return gens


def mono_poly(ring: PolyRing, e):
    return Polynomial(ring, {tuple(e): 1})
