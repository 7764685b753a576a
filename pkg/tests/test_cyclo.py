import cmath
import json
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from qpw.cyclo import (
    CycloScalar,
    PowerScalar,
    cos_turns,
    prime_power_sqrt,
    root_of_unity,
    sin_turns,
    sqrt_prime,
)
from oracles import approx, float_root
from strategies import cyclo_scalars

Z8 = CycloScalar.zeta(8)


class TestRootsOfUnity:
    def test_examples(self):
        assert root_of_unity(Fraction(1, 2), 2) == -1
        assert root_of_unity(0) == 1
        assert root_of_unity(Fraction(1, 4), 2) == CycloScalar.zeta(4)

    def test_p_power_denominator_enforced(self):
        with pytest.raises(ValueError):
            root_of_unity(Fraction(1, 3), 2)

    def test_sqrt2(self):
        s = Z8 + Z8.conj()
        assert s * s == 2
        assert approx(s.to_complex(), 2**0.5)
        assert s.to_float() == pytest.approx((1.41421356237, 0.0))

    def test_unit_modulus(self):
        x = root_of_unity(Fraction(3, 8))
        assert x * x.conj() == 1

    def test_zero_tests(self):
        assert (1 + CycloScalar.zeta(2)).is_zero()
        assert not (Z8 - Z8**3).is_zero()
        assert CycloScalar.zero().is_zero()
        assert CycloScalar.rational(-1).to_float() == (-1.0, 0.0)

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 8, 9, 12, 25, 27])
    def test_full_sum_vanishes(self, n):
        total = CycloScalar.zero()
        for k in range(n):
            total = total + CycloScalar.zeta(n, k)
        assert total.is_zero()

    @given(st.fractions(min_value=0, max_value=1, max_denominator=64))
    def test_matches_float(self, a):
        assert approx(root_of_unity(a).to_complex(), float_root(a))

    @given(st.integers(0, 63))
    def test_trig(self, k):
        t = Fraction(k, 64)
        c, s = cos_turns(t), sin_turns(t)
        assert c * c + s * s == 1
        assert c.is_real() and s.is_real()
        assert approx(c.to_complex(), cmath.cos(2 * cmath.pi * k / 64))
        assert approx(s.to_complex(), cmath.sin(2 * cmath.pi * k / 64))


class TestField:
    @given(cyclo_scalars(), cyclo_scalars(), cyclo_scalars())
    def test_ring_axioms(self, x, y, z):
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + y == y + x
        assert x * y == y * x
        assert x - x == 0

    @given(cyclo_scalars())
    def test_inverse(self, x):
        assume(not x.is_zero())
        assert x * x.inv() == 1
        assert approx(x.inv().to_complex(), 1 / x.to_complex(), 1e-6)

    @given(cyclo_scalars(), cyclo_scalars())
    def test_conj(self, x, y):
        assert x.conj().conj() == x
        assert (x * y).conj() == x.conj() * y.conj()
        assert approx(x.conj().to_complex(), x.to_complex().conjugate())
        assert x.abs2().is_real()

    @given(cyclo_scalars(), cyclo_scalars())
    def test_float_homomorphism(self, x, y):
        assert approx((x * y).to_complex(), x.to_complex() * y.to_complex(), 1e-8)
        assert approx((x + y).to_complex(), x.to_complex() + y.to_complex(), 1e-8)

    @given(cyclo_scalars(), st.sampled_from([2, 3, 5]))
    def test_promotion_round_trip(self, x, k):
        y = x.promote(x.order * k)
        assert y == x
        assert y.order == x.order * k or y.is_rational()

    @given(cyclo_scalars())
    def test_json_round_trip(self, x):
        data = json.loads(json.dumps(x.to_json()))
        assert CycloScalar.from_json(data) == x
        assert all(isinstance(c, str) for c in data["coeffs"])

    def test_cross_order_equality(self):
        assert CycloScalar.zeta(4) == CycloScalar.zeta(8, 2)
        assert CycloScalar.zeta(3) * CycloScalar.zeta(4) == CycloScalar.zeta(12, 7)

    def test_zero_division(self):
        with pytest.raises(ZeroDivisionError):
            CycloScalar.zero().inv()


class TestSqrt:
    @pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13, 17])
    def test_square_and_sign(self, p):
        r = sqrt_prime(p)
        assert r * r == p
        assert approx(r.to_complex(), p**0.5)

    @pytest.mark.parametrize("p,k", [(2, -3), (2, 5), (3, -1), (5, 3), (3, 0)])
    def test_prime_power(self, p, k):
        assert approx(prime_power_sqrt(p, k).to_complex(), p ** (k / 2))
        assert prime_power_sqrt(p, k) ** 2 == Fraction(p) ** k


class TestPowerScalar:
    def test_examples(self):
        assert PowerScalar(1, 1, 2).to_float() == pytest.approx((2.0, 0.0))
        a, b = PowerScalar(1, Fraction(1, 3), 2), PowerScalar(1, Fraction(2, 3), 2)
        assert a * b == 2
        x = PowerScalar(root_of_unity(Fraction(1, 8)), (Fraction(1, 5), 2), 2)
        assert x * PowerScalar(1, 0, 2) == x
        h = PowerScalar(1, Fraction(1, 2), 2)
        assert (h * h).exponent == (0, 0) and (h * h).c == 2

    def test_normal_form(self):
        x = PowerScalar(1, 1, 2)
        assert x.exponent == (0, 0) and x.c == 2
        y = PowerScalar(3, Fraction(7, 4), 5)
        assert 0 <= y.exponent[0] < Fraction(1, 2)
        assert approx(y.to_complex(), 3 * 5**1.75)

    @given(
        st.fractions(min_value=-4, max_value=4, max_denominator=12),
        st.fractions(min_value=-3, max_value=3, max_denominator=6),
        st.fractions(min_value=-4, max_value=4, max_denominator=12),
        st.fractions(min_value=-3, max_value=3, max_denominator=6),
        st.sampled_from([2, 3, 5]),
    )
    def test_exponent_law(self, a, b, c, d, p):
        x = PowerScalar(1, (a, b), p)
        y = PowerScalar(1, (c, d), p)
        assert x * y == PowerScalar(1, (a + c, b + d), p)
        assert x * x.inv() == 1
        assert approx((x * y).to_complex(), x.to_complex() * y.to_complex(), 1e-8)

    def test_add_same_exponent_only(self):
        x = PowerScalar(1, Fraction(1, 3), 2)
        assert x + x == PowerScalar(2, Fraction(1, 3), 2)
        with pytest.raises(ValueError):
            x + PowerScalar(1, Fraction(1, 5), 2)

    def test_conservative_inequality(self):
        assert PowerScalar(1, Fraction(1, 3), 2) != 1
        assert PowerScalar(0, Fraction(1, 3), 2) == 0

    def test_json(self):
        x = PowerScalar(root_of_unity(Fraction(3, 8)), (Fraction(1, 3), -1), 3)
        assert PowerScalar.from_json(json.loads(json.dumps(x.to_json()))) == x
