import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qpw.cyclo import PowerScalar, root_of_unity
from qpw.mbf import MBF, PowerMBF, evaluate, fourier, inverse_fourier, translate
from qpw.padic import ball_canonicalize, norm, vector
from qpw.psdo import (
    CertificateError,
    ConstantSymbol,
    FractionalNorm,
    LocallyConstant,
    NotLizorkinError,
    PiecewiseConstant,
    apply,
    apply_power,
    compose,
    eigen_criterion,
    eigen_ratio,
    eigen_report,
    eigenvalue,
    kozyrev_spectrum_check,
    parse_symbol,
    two_valued_test_symbol,
    verify_eigenfunction,
)
from qpw.sampling import random_gamma_vector, random_mbf
from qpw.wavelets import WaveletIndex, enumerate_basis, phi, psi0, tensor_wavelet
from oracles import grid
from strategies import mbfs


def lizorkin(f: MBF) -> MBF:
    """Remove the mean by subtracting a multiple of a unit-ball indicator far from the support."""
    from qpw.mbf import integral

    m = integral(f)
    if m.is_zero():
        return f
    far = MBF.indicator(ball_canonicalize(vector([Fraction(1, 8)] * f.dim, f.prime), -1, f.prime))
    far = translate(far, tuple([16] * f.dim) if f.dim > 1 else 16)
    return f - far.scale(m * (Fraction(f.prime) ** f.dim))


class TestApply:
    def test_fractional_on_psi0(self):
        assert apply(FractionalNorm(1), psi0()) == psi0().scale(2)

    def test_fractional_on_tensor_j1(self):
        f = tensor_wavelet(WaveletIndex(2, (1, 2), 1, (Fraction(1, 2), 0)))
        assert apply(FractionalNorm(1, 2, 2), f) == f

    def test_constant_identity(self):
        f = psi0() + translate(psi0(), Fraction(1, 4)).scale(3)
        assert apply(ConstantSymbol(1), f) == f
        assert apply(ConstantSymbol(Fraction(5, 2)), f) == f.scale(Fraction(5, 2))

    def test_rejects_non_lizorkin(self):
        with pytest.raises(NotLizorkinError):
            apply(FractionalNorm(1), phi(2))

    def test_false_certificate_is_caught(self):
        honest = two_valued_test_symbol()
        lying = LocallyConstant(honest.value, lambda xi: 5)
        with pytest.raises(CertificateError):
            apply(lying, psi0())

    @given(mbfs(l=-2, N=2))
    def test_fractional_fourier_side_oracle(self, f):
        # F[D^2 f](xi) = |xi|^2 F f(xi) at every grid point xi != 0
        f = lizorkin(f)
        if f.is_zero():
            return
        g = apply(FractionalNorm(2), f).to_mbf()
        Ff, Fg = fourier(f), fourier(g)
        for xi in grid(2, 1, -6, 4):
            if xi[0].is_zero():
                assert evaluate(Fg, xi).is_zero()
                continue
            assert evaluate(Fg, xi) == evaluate(Ff, xi) * norm(xi) ** 2

    @given(mbfs(l=-2, N=2), st.integers(0, 10**6))
    def test_multiplier_brute_force(self, f, seed):
        f = lizorkin(f)
        if f.is_zero():
            return
        sym = random_table(random.Random(seed), -2, 2, exponents=False)
        fine = min(b.gamma for b in sym.table)
        raw = []
        for t in fourier(f).terms:
            parts = t.ball.split(fine) if t.ball.gamma > fine else [t.ball]
            for b in parts:
                raw.append((t.coef * sym.value(b.center).c, t.freq, b))
        expected = inverse_fourier(MBF(2, 1, raw))
        assert apply(sym, f).to_mbf() == expected

    def test_apply_power_chain(self):
        f = psi0() + translate(psi0(), Fraction(1, 4))
        a = (Fraction(1, 3), Fraction(1, 2))
        g = apply(FractionalNorm(a), f)
        back = apply_power(FractionalNorm((-a[0], -a[1])), g)
        assert back == f


def random_value(rng, exponents=True):
    c = root_of_unity(Fraction(rng.randrange(8), 8)) * rng.choice([1, 2, Fraction(1, 3)])
    w = (Fraction(rng.randrange(4), 4), Fraction(rng.randrange(3), 3)) if exponents else 0
    return PowerScalar(c, w, 2)


def random_table(rng, lo, hi, n=1, around=None, exponents=True, size=3):
    """Disjoint balls with random values, avoiding the origin."""
    table = {}
    pool = [random_value(rng, exponents) for _ in range(2)]
    for _ in range(20):
        if len(table) >= size:
            break
        gamma = rng.randint(lo, hi)
        if around is None:
            centre = [Fraction(rng.randrange(2 ** (hi - lo + 2)), 2 ** (-lo + 2)) for _ in range(n)]
        else:
            # offsets in 2^-gamma Z_2 stay inside the target ball, one extra digit may leave it
            step = Fraction(2) ** (-around.gamma - rng.randint(0, 1))
            centre = [x.to_fraction() + rng.randrange(8) * step for x in around.center]
        b = ball_canonicalize(vector(centre, 2), gamma, 2)
        if b.contains_origin():
            continue
        if any(b.contains_point(t.center) or t.contains_point(b.center) for t in table):
            continue
        table[b] = rng.choice(pool) if rng.random() < 0.5 else random_value(rng, exponents)
    if not table:
        table[ball_canonicalize(vector([1] * n, 2), -1, 2)] = random_value(rng, exponents)
    return PiecewiseConstant(table, random_value(rng, exponents) if rng.random() < 0.7 else pool[0], 2, n)


class TestCriterion:
    def test_fractional_always(self):
        for alpha in (0, 1, -1, Fraction(1, 2), (1, 1)):
            for e, n in [((1,), 1), ((1,), 2), ((2,), 2), ((1, 2), 2)]:
                for j in (-2, 0, 3):
                    assert eigen_criterion(FractionalNorm(alpha, 2, n), e, j)

    def test_constant(self):
        assert eigen_criterion(ConstantSymbol(3), (1,), 0)
        assert eigenvalue(ConstantSymbol(3), (1,), 5) == 3

    def test_two_valued(self):
        sym = two_valued_test_symbol()
        for j in (-1, 0, 1):
            assert not eigen_criterion(sym, (1,), j)
            with pytest.raises(ValueError):
                eigenvalue(sym, (1,), j)

    def test_eigenvalues(self):
        assert eigenvalue(FractionalNorm(1), (1,), 0) == 2
        assert eigenvalue(FractionalNorm(3), (1,), 1) == 1
        a = (Fraction(2, 7), Fraction(-1, 3))
        assert eigenvalue(FractionalNorm(a), (1,), 1) == 1
        lam = eigenvalue(FractionalNorm(a), (1,), -1)
        assert lam == PowerScalar(1, (2 * a[0], 2 * a[1]), 2)

    @pytest.mark.parametrize("j", [-2, -1, 0, 1, 2])
    def test_spectrum_scaling(self, j):
        for a in (1, Fraction(1, 3), (Fraction(1, 2), 2)):
            sym = FractionalNorm(a)
            step = PowerScalar(1, (-sym.alpha[0], -sym.alpha[1]), 2)
            assert eigenvalue(sym, (1,), j + 1) == eigenvalue(sym, (1,), j) * step


class TestEigenfunctions:
    def test_haar_and_psi_s(self):
        rng = random.Random(7)
        g = random_gamma_vector(rng, 1)
        for idx in [
            WaveletIndex(1, (1,), 0, (Fraction(1, 2),)),
            WaveletIndex(2, (1, 2), -1, (Fraction(1, 4), 0), s=(1, 1), gammas=(g, g)),
        ]:
            assert verify_eigenfunction(FractionalNorm(2, 2, idx.n), idx)

    def test_two_valued_fails_both_ways(self):
        for idx in enumerate_basis(2, 1, [-1, 0, 1], 1):
            r = eigen_report(two_valued_test_symbol(), idx)
            assert not r["direct"] and not r["criterion"] and r["consistent"]
            assert not verify_eigenfunction(two_valued_test_symbol(), idx)

    def test_eigen_ratio(self):
        f = psi0()
        assert eigen_ratio(PowerMBF.from_mbf(f.scale(3)), f) == 3
        assert eigen_ratio(PowerMBF.from_mbf(f + translate(f, Fraction(1, 2))), f) is None
        with pytest.raises(ValueError):
            eigen_ratio(PowerMBF.from_mbf(f), MBF.zero(2))

    def test_criterion_matches_direct_on_random_symbols(self):
        rng = random.Random(2024)
        outcomes = {True: 0, False: 0}
        for trial in range(60):
            n = rng.choice([1, 2])
            basis = enumerate_basis(2, n, [-1, 0, 1], 1)
            idx = rng.choice(basis)
            spectral = ball_canonicalize(
                vector([-Fraction(2) ** (idx.j - 1) * k for k in idx.k_e], 2), -idx.j, 2
            )
            sym = random_table(rng, -idx.j - 2, -idx.j + 1, n=n, around=spectral, size=rng.randint(1, 3))
            r = eigen_report(sym, idx)
            assert r["criterion"] == r["direct"], (trial, idx, sym.table)
            if r["criterion"]:
                assert r["eigenvalue"] == r["direct_eigenvalue"]
            outcomes[r["criterion"]] += 1
        assert outcomes[True] >= 5 and outcomes[False] >= 5

    @pytest.mark.parametrize(
        "p,k,j,alpha", [(3, 1, 0, 1), (3, 2, 1, 1), (2, 1, 2, 1), (5, 3, -1, 2), (3, 1, 0, 0), (3, 1, 1, (1, 1))]
    )
    def test_kozyrev(self, p, k, j, alpha):
        assert kozyrev_spectrum_check(p, k, j, Fraction(1, p), alpha)

    def test_kozyrev_eigenvalue_values(self):
        from qpw.wavelets import kozyrev

        th = kozyrev(3, 1, 0, 0)
        assert eigen_ratio(apply(FractionalNorm(1, 3), th), th) == 3
        th2 = kozyrev(2, 1, 2, 0)
        assert eigen_ratio(apply(FractionalNorm(1, 2), th2), th2) == Fraction(1, 2)
        assert eigen_ratio(apply(FractionalNorm(0, 3), th), th) == 1


class TestGroup:
    def test_composition_eigenvalue(self):
        a, b = Fraction(1, 3), (Fraction(1, 4), Fraction(2, 5))
        A, B = FractionalNorm(a), FractionalNorm(b)
        C = compose(A, B)
        f = psi0()
        lam = eigen_ratio(apply(C, f), f)
        assert lam == eigen_ratio(apply(A, f), f) * eigen_ratio(apply(B, f), f)
        assert lam == PowerScalar(1, (a + b[0], b[1]), 2)

    def test_inverse_pair(self):
        rng = random.Random(4)
        alpha = (Fraction(3, 4), Fraction(1, 2))
        A, Ainv = FractionalNorm(alpha), FractionalNorm((-alpha[0], -alpha[1]))
        for idx in enumerate_basis(2, 1, [-1, 0, 1], 1):
            f = tensor_wavelet(idx)
            assert apply(compose(A, Ainv), f) == f
            assert apply_power(Ainv, apply(A, f)) == f
        f = lizorkin(random_mbf(rng, l=-2, N=2))
        assert apply_power(Ainv, apply(A, f)) == f

    def test_commutative_action(self):
        rng = random.Random(9)
        for _ in range(10):
            f = lizorkin(random_mbf(rng, l=-2, N=2))
            if f.is_zero():
                continue
            A = random_table(rng, -3, 2)
            B = FractionalNorm((Fraction(rng.randrange(4), 3), 1))
            assert apply(compose(A, B), f) == apply(compose(B, A), f)
            assert apply(compose(A, ConstantSymbol(1)), f) == apply(A, f)


class TestParse:
    def test_presets(self):
        assert isinstance(parse_symbol("fractional:alpha=1"), FractionalNorm)
        assert parse_symbol("fractional:alpha=1/2,3").alpha == (Fraction(1, 2), 3)
        assert parse_symbol("constant:3/2").value(vector([1], 2)) == Fraction(3, 2)
        assert parse_symbol("two-valued-test").name == "two-valued-test"

    @pytest.mark.parametrize("bad", ["fractional", "fractional:beta=1", "constant:", "nope", "fractional:alpha=1,2,3"])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_symbol(bad)


def test_piecewise_certificate_is_sound():
    # every grid point inside a certified ball carries the same value
    sym = random_table(random.Random(1), -2, 1)
    pts = [x for x in grid(2, 1, -4, 3) if not x[0].is_zero()]
    for xi in pts:
        b = ball_canonicalize(xi, min(sym.certificate(xi), 3), 2)
        for y in pts:
            if b.contains_point(y):
                assert sym.value(y) == sym.value(xi)
