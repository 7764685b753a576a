"""
Kozyrev wavelets for an odd prime
=================================

theta_k(x) = chi_3(k x / 3) Omega(|x|_3), k = 1, 2.  Normalising dilates
needs sqrt(3), which is exact here through a quadratic Gauss sum.
"""
from qpw.cyclo import sqrt_prime
from qpw.mra import gram_matrix, is_identity
from qpw.padic import enumerate_Ip
from qpw.psdo import kozyrev_spectrum_check
from qpw.wavelets import kozyrev, kozyrev_refinable_relation

r3 = sqrt_prime(3)
print("sqrt(3) as cyclotomic:", r3, " squared:", r3 * r3)

for k in (1, 2):
    lhs, rhs = kozyrev_refinable_relation(3, k)
    print(f"theta_{k} equals its phi expansion:", lhs == rhs)

fs = [kozyrev(3, k, j, a[0]) for k in (1, 2) for j in (-1, 0, 1) for a in enumerate_Ip(3, 2)]
print(f"{len(fs)} wavelets orthonormal:", is_identity(gram_matrix(fs)))

for j in (-1, 0, 1, 2):
    print(f"D^1 theta at j={j} has eigenvalue 3^{1 - j}:", kozyrev_spectrum_check(3, 1, j, 0, 1))
