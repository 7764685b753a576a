"""
Separable wavelet bases of L^2(Q_2^n)
====================================

For each nonempty subset e of the coordinates, coordinates in e carry a
wavelet and the others carry phi.  Mixing Haar and psi^(s) factors still
gives an orthonormal family.
"""
import random

from qpw.mbf import fourier
from qpw.mra import gram_matrix, is_identity
from qpw.sampling import random_gamma_vector
from qpw.wavelets import WaveletIndex, enumerate_basis, tensor_mother, tensor_wavelet

print(tensor_mother(WaveletIndex(2, (1, 2), 0, (0, 0))))

basis = enumerate_basis(2, 2, [-1, 0, 1], 2)
print(len(basis), "Haar tensor wavelets orthonormal:", is_identity(gram_matrix([tensor_wavelet(i) for i in basis])))

rng = random.Random(7)
gs = (random_gamma_vector(rng, 1), random_gamma_vector(rng, 2))
mixed = enumerate_basis(2, 2, [0, 1], 2, s=(1, 2), gammas=gs)
print(len(mixed), "mixed s=(1,2) wavelets orthonormal:",
      is_identity(gram_matrix([tensor_wavelet(i) for i in mixed])))

# each Haar tensor wavelet has a one-term Fourier transform
idx = basis[20]
print(idx.e, idx.j, [str(a) for a in idx.a], "->", fourier(tensor_wavelet(idx)))
