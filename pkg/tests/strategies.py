"""Hypothesis strategies for exact objects."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from qpw.cyclo import CycloScalar, root_of_unity
from qpw.mbf import MBF
from qpw.padic import PAdicPoint, ball_canonicalize
from qpw.wavelets import GammaVector

PRIMES = st.sampled_from([2, 3, 5])


@st.composite
def padic_points(draw, p=None, lo=-6, hi=6):
    p = draw(PRIMES) if p is None else p
    num = draw(st.integers(-(10**6), 10**6))
    exp = draw(st.integers(lo, hi))
    return PAdicPoint(num, exp, p)


@st.composite
def cyclo_scalars(draw, orders=(1, 2, 3, 4, 5, 8, 9, 12, 16)):
    n = draw(st.sampled_from(orders))
    coeffs = draw(
        st.dictionaries(
            st.integers(0, n - 1),
            st.fractions(min_value=-5, max_value=5, max_denominator=6),
            max_size=4,
        )
    )
    return CycloScalar(n, coeffs)


@st.composite
def small_coefs(draw, p):
    q = draw(st.fractions(min_value=-3, max_value=3, max_denominator=4).filter(bool))
    k = draw(st.integers(0, p * p - 1))
    return root_of_unity(Fraction(k, p * p)) * q


@st.composite
def term_lists(draw, p=2, n=1, l=-2, N=2, max_terms=3):
    """Raw (coef, freq, ball) triples whose sum lies in D^l_N."""
    terms = []
    for _ in range(draw(st.integers(1, max_terms))):
        gamma = draw(st.integers(l, N))
        center = tuple(
            PAdicPoint(draw(st.integers(0, p ** max(N - gamma, 0) - 1)), -N, p) for _ in range(n)
        )
        freq = tuple(
            PAdicPoint(draw(st.integers(0, p ** max(gamma - l, 0) - 1)), l, p) for _ in range(n)
        )
        terms.append((draw(small_coefs(p)), freq, ball_canonicalize(center, gamma, p)))
    return terms


@st.composite
def mbfs(draw, p=2, n=1, l=-2, N=2, max_terms=3):
    """Random MBF in D^l_N."""
    return MBF(p, n, draw(term_lists(p, n, l, N, max_terms)))


@st.composite
def gamma_vectors(draw, s=None, den_exp=4):
    s = draw(st.integers(1, 3)) if s is None else s
    den = 2**den_exp
    angles = [Fraction(draw(st.integers(0, den - 1)), den) for _ in range(2**s)]
    return GammaVector.from_angles(s, angles)
