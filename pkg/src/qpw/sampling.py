"""Seeded generators of random exact objects for tests and demos."""
from __future__ import annotations

import random
from fractions import Fraction

from .cyclo import CycloScalar, root_of_unity
from .mbf import MBF
from .padic import PAdicPoint, ball_canonicalize
from .wavelets import GammaVector

__all__ = ["random_point", "random_coef", "random_mbf", "random_gamma_vector"]


def random_point(rng: random.Random, p: int, lo: int, hi: int) -> PAdicPoint:
    """Uniform element of p**lo Z_p / p**hi Z_p, returned as its representative in [0, p**hi)."""
    if hi <= lo:
        return PAdicPoint(0, 0, p)
    return PAdicPoint(rng.randrange(p ** (hi - lo)), lo, p)


def random_coef(rng: random.Random, p: int, max_den: int = 3) -> CycloScalar:
    """A small rational times a p-power root of unity, plus occasionally a second one."""
    q = Fraction(rng.randint(-4, 4) or 1, rng.randint(1, max_den))
    c = root_of_unity(Fraction(rng.randrange(p**2), p**2)) * q
    if rng.random() < 0.3:
        c = c + root_of_unity(Fraction(rng.randrange(p), p)) * Fraction(rng.randint(-2, 2))
    return c


def random_mbf(
    rng: random.Random, p: int = 2, n: int = 1, l: int = -3, N: int = 3, max_terms: int = 4
) -> MBF:
    """Random element of D^l_N: constant on B_l-cosets and supported in B_N (possibly zero)."""
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        gamma = rng.randint(l, N)
        center = tuple(random_point(rng, p, -N, -gamma) for _ in range(n))
        freq = tuple(random_point(rng, p, l, gamma) for _ in range(n))
        terms.append((random_coef(rng, p), freq, ball_canonicalize(center, gamma, p)))
    return MBF(p, n, terms)


def random_gamma_vector(rng: random.Random, s: int, den_exp: int | None = None) -> GammaVector:
    """Unit parameters gamma_r = exp(2 pi i k_r / 2**den_exp)."""
    den = 2 ** (den_exp if den_exp is not None else s + 2)
    return GammaVector.from_angles(s, [Fraction(rng.randrange(den), den) for _ in range(2**s)])
