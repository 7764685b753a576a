"""
p-adic numbers, balls and characters
====================================

Points of Q_p are held exactly as num * p**exp.  Balls carry a canonical
centre, so two balls are equal as sets exactly when they compare equal.
"""
from fractions import Fraction

from qpw.padic import (
    ball_canonicalize,
    ball_relation,
    ball_split,
    character,
    enumerate_Ip,
    frac_part,
    norm,
    point,
    vector,
)

# valuations and norms: 8 is small in Q_2, 3/4 is large
for x in (8, Fraction(3, 4), Fraction(7, 12)):
    try:
        print(f"|{x}|_2 = {norm(point(x, 2))}")
    except ValueError as exc:
        print(f"{x}: {exc}")

# the fractional part keeps only digits at negative exponents
print("{7/4}_2 =", frac_part(point(Fraction(7, 4), 2)))

# chi_2(x/2) at x = 1 is exp(i pi) = -1, stored as the angle 1/2
print("angle of chi(1/2 * 1):", character(vector([Fraction(1, 2)], 2), vector([1], 2)))

# balls are nested or disjoint; splitting gives p**n children per level
unit = ball_canonicalize(vector([0], 2), 0)
print(ball_relation(unit, ball_canonicalize(vector([1], 2), -1)))
print([str(b) for b in ball_split(ball_canonicalize(vector([0], 3), 0), -1)])

# the shift set I_p: representatives of Q_p / Z_p, ordered by size
print([str(a[0]) for a in enumerate_Ip(2, 3)])
