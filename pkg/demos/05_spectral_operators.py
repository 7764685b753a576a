"""
Fourier multipliers and their eigenfunctions
============================================

D^alpha multiplies the Fourier transform by |xi|_2^alpha.  Each wavelet
lives in the Fourier domain on one ball where |xi| is constant, so it is an
eigenfunction with eigenvalue 2^(alpha(1-j)).  A symbol that changes inside
that ball destroys the property, and the criterion sees it before applying
anything.
"""
from fractions import Fraction

from qpw.psdo import (
    FractionalNorm,
    apply,
    compose,
    eigen_report,
    two_valued_test_symbol,
)
from qpw.wavelets import WaveletIndex, tensor_wavelet

for alpha in (1, 2, -1, (1, 1)):
    sym = FractionalNorm(alpha, 2, 2)
    for j in (-1, 0, 1):
        idx = WaveletIndex(2, (1, 2), j, (Fraction(1, 2), 0))
        r = eigen_report(sym, idx)
        lam = r["eigenvalue"]
        print(f"alpha={alpha!s:7} j={j:2}: criterion {r['criterion']}, direct {r['direct']}, "
              f"lambda = {lam.to_complex():.6g}  (exponent {lam.w_re}+{lam.w_im}i, factor {lam.c.to_complex():.4g})")

bad = two_valued_test_symbol(2, 2)
r = eigen_report(bad, WaveletIndex(2, (1,), 0, (0, 0)))
print("two-valued symbol: criterion", r["criterion"], "direct", r["direct"])

# operators compose by adding exponents; D^a D^-a is the identity
psi = tensor_wavelet(WaveletIndex(1, (1,), 0, (Fraction(1, 4),)))
a = FractionalNorm((Fraction(1, 3), 2))
inv = FractionalNorm((Fraction(-1, 3), -2))
print("D^a D^-a psi == psi:", apply(compose(a, inv), psi) == psi)
