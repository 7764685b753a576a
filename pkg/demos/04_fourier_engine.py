"""
Exact Fourier transforms of modulated ball functions
====================================================

Finite sums of character-times-ball-indicator terms are closed under the
Fourier transform, so F and its inverse are exact rewrites of term lists.
"""
import random
from fractions import Fraction

from qpw.mbf import (
    MBF,
    affine,
    dilate,
    fourier,
    inner_product,
    inverse_fourier,
    local_constancy_params,
    modulate,
)
from qpw.padic import ball_canonicalize, vector
from qpw.sampling import random_mbf
from qpw.wavelets import phi, psi0

print("F[phi] == phi:", fourier(phi(2)) == phi(2))
print("F[psi0]:", fourier(psi0()))
print("F[1_{B_2}] = 4 * 1_{B_-2}:",
      fourier(MBF.indicator(ball_canonicalize(vector([0], 2), 2)))
      == MBF.indicator(ball_canonicalize(vector([0], 2), -2)).scale(4))

rng = random.Random(1)
f, g = random_mbf(rng, p=3), random_mbf(rng, p=3)
print("involution:", inverse_fourier(fourier(f)) == f)
print("Parseval:", inner_product(fourier(f), fourier(g)) == inner_product(f, g))

# constant on B_l cosets and supported in B_N  <=>  the transform has (-N, -l)
print("(l, N) of f:", local_constancy_params(f), " of F f:", local_constancy_params(fourier(f)))

# F[f(p^k x + b)](xi) = p^k chi(-p^-k b xi) F[f](p^-k xi)
k, b = 1, Fraction(2, 9)
lhs = fourier(affine(f, k, -b))
rhs = modulate(dilate(fourier(f), -k), -b * Fraction(3) ** -k).scale(3**k)
print("affine rule:", lhs == rhs)
