"""
Wavelets built from 2**s shifted copies of psi0
===============================================

A vector of 2**s unit numbers gamma gives coefficients alpha with
psi = sum_k alpha_k psi0(x - k/2**s).  The shifts of psi are orthonormal
exactly when the shift matrix D is unitary, i.e. when every |gamma_r| = 1.
"""
import random
from fractions import Fraction

from qpw.cyclo import CycloScalar
from qpw.mbf import inner_product, translate
from qpw.mra import gram_matrix, is_identity
from qpw.padic import enumerate_Ip
from qpw.sampling import random_gamma_vector
from qpw.wavelets import (
    GammaVector,
    alpha_coeffs,
    is_unitary,
    matrix_A_eigensystem,
    psi_s,
    real_alpha,
    shift_matrix_D,
)

z8 = CycloScalar.zeta(8)
g = GammaVector(1, (z8.conj(), z8))
print("alpha for (zeta8^-1, zeta8):", [a.to_complex() for a in alpha_coeffs(g)])

rng = random.Random(3)
for s in (1, 2, 3):
    g = random_gamma_vector(rng, s)
    psi = psi_s(g)
    fs = [translate(psi, a[0]) for a in enumerate_Ip(2, s + 2)]
    print(f"s={s}: D unitary {is_unitary(shift_matrix_D(alpha_coeffs(g)))}, "
          f"{len(fs)} shifts orthonormal {is_identity(gram_matrix(fs))}")

    # break one |gamma_r| and both properties go
    bad = g.perturbed(0)
    psi_bad = psi_s(bad, strict=False)
    print(f"     perturbed: D unitary {is_unitary(shift_matrix_D(alpha_coeffs(bad, strict=False)))}, "
          f"|psi|^2 = {inner_product(psi_bad, psi_bad).to_complex().real:.4f}")

# the eigenvalues behind the construction
lams, _ = matrix_A_eigensystem(2)
print("eigenvalues of A for s=2:", [complex(round(l.to_complex().real, 6), round(l.to_complex().imag, 6)) for l in lams])

# real wavelets, one angle for s=1
for m in range(4):
    t = Fraction(m, 8)
    print(f"theta = 2pi*{t}: alpha = {[round(a.to_complex().real, 6) for a in real_alpha(1, [t])]}")
