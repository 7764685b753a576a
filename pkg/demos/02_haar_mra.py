"""
The Haar multiresolution analysis on Q_2
========================================

phi is the indicator of Z_2.  It is refinable, its shifts by I_2 are
orthonormal, and psi0(x) = chi_2(x/2) phi(x) generates the wavelet spaces.
"""
import random

from qpw.mbf import dilate, inner_product, translate
from qpw.mra import check_refinement, decompose, gram_matrix, is_identity, reconstruct
from qpw.padic import enumerate_Ip
from qpw.sampling import random_mbf
from qpw.wavelets import haar_wavelet, phi, psi0

# phi(x) = phi(x/p) + phi(x/p - 1/p) + ... for every prime
for p in (2, 3, 5):
    print(f"refinement, p={p}:", check_refinement(p))

# phi is 1-periodic, psi0 is 1-antiperiodic
print(translate(phi(2), 1) == phi(2), translate(psi0(), 1) == psi0().scale(-1))

# shifts of phi and dilated shifts of psi0 are orthonormal
shifts = [a[0] for a in enumerate_Ip(2, 3)]
print("phi shifts orthonormal:", is_identity(gram_matrix([translate(phi(2), a) for a in shifts])))
waves = [haar_wavelet(j, a) for j in (-1, 0, 1) for a in shifts]
print(f"{len(waves)} wavelets orthonormal:", is_identity(gram_matrix(waves)))

# phi(x/2) = (phi + psi0)/2: the V_0 and W_0 parts
d = decompose(dilate(phi(2), -1), j0=0)
print("V0 part:", {str(a): str(c.to_fraction()) for a, c in d.v.items()})
print("W0 part:", {f"j={j}, a={a}": str(c.to_fraction()) for (j, a), c in d.w.items()})

# a random locally constant function decomposes and comes back exactly
f = random_mbf(random.Random(0), l=-3, N=3)
d = decompose(f, j0=-3)
print("terms:", len(f), " coefficients:", len(d.v) + len(d.w))
print("round trip exact:", reconstruct(d) == f)
print("Parseval exact:", d.energy() == inner_product(f, f))
