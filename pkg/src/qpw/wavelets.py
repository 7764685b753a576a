"""Wavelet constructors: the Haar family on Q_2, Kozyrev bases on Q_p and
separable tensor wavelets on Q_2^n.

Conventions: ``basis_element(f, j, a)`` is ``p**(-n j/2) f(p**j x - a)``,
and shifts always enter as ``f(. - a)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import exactmat
from .cyclo import CycloScalar, cos_turns, prime_power_sqrt, root_of_unity, sin_turns
from .mbf import MBF, affine, tensor, translate
from .padic import Ball, PAdicPoint, enumerate_Ip, point, vector

__all__ = [
    "phi",
    "psi0",
    "basis_element",
    "haar_wavelet",
    "kozyrev",
    "generalized_kozyrev",
    "kozyrev_refinable_relation",
    "GammaVector",
    "alpha_coeffs",
    "psi_s",
    "shift_matrix_D",
    "is_unitary",
    "matrix_A",
    "matrix_A_eigensystem",
    "real_gammas",
    "real_alpha",
    "real_alpha_closed_form",
    "tensor_mother",
    "real_wavelet",
    "REAL_PRESETS",
    "real_preset",
    "WaveletIndex",
    "tensor_wavelet",
    "enumerate_basis",
    "alpha_coeffs_float",
    "shift_matrix_D_float",
    "is_unitary_float",
]


def _unit_ball(p: int, n: int = 1) -> Ball:
    return Ball((PAdicPoint(0, 0, p),) * n, 0)


def phi(p: int = 2, n: int = 1) -> MBF:
    """Indicator of the unit ball Z_p^n."""
    return MBF.indicator(_unit_ball(p, n))


def psi0() -> MBF:
    """chi_2(x/2) on Z_2: +1 on 2Z_2, -1 on 1 + 2Z_2."""
    return MBF.indicator(_unit_ball(2), freq=vector([Fraction(1, 2)], 2))


def basis_element(f: MBF, j: int, a) -> MBF:
    """p**(-n j/2) * f(p**j x - a)."""
    p, n = f.prime, f.dim
    if isinstance(a, (int, Fraction, PAdicPoint)):
        a = (a,)
    return affine(f, j, vector(a, p)).scale(prime_power_sqrt(p, -n * j))


def haar_wavelet(j: int, a, psi: MBF | None = None) -> MBF:
    return basis_element(psi0() if psi is None else psi, j, a)


def _kozyrev_mother(p: int, s: Fraction) -> MBF:
    return MBF.indicator(_unit_ball(p), freq=vector([s], p))


def kozyrev(p: int, k: int, j: int = 0, a=0) -> MBF:
    """p**(-j/2) chi_p(k (p**j x - a)/p) Omega(|p**j x - a|_p)."""
    if not 1 <= k <= p - 1:
        raise ValueError(f"k must lie in 1..{p - 1}")
    return basis_element(_kozyrev_mother(p, Fraction(k, p)), j, a)


def generalized_kozyrev(p: int, m: int, s_digits: Sequence[int], j: int = 0, a=0) -> MBF:
    """As :func:`kozyrev` with frequency s = p**-m (s_0 + s_1 p + ... + s_{m-1} p**(m-1))."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if len(s_digits) != m or any(not 0 <= d < p for d in s_digits):
        raise ValueError(f"need {m} digits in 0..{p - 1}")
    if s_digits[0] == 0:
        raise ValueError("leading digit s_0 must be nonzero")
    s = Fraction(sum(d * p**i for i, d in enumerate(s_digits)), p**m)
    return basis_element(_kozyrev_mother(p, s), j, a)


def kozyrev_refinable_relation(p: int, k: int) -> tuple[MBF, MBF]:
    """(theta_k, sum_r exp(2 pi i kr/p) phi(x/p - r/p)); the two should be equal."""
    lhs = kozyrev(p, k)
    f = phi(p)
    rhs = MBF.zero(p)
    for r in range(p):
        rhs = rhs + affine(f, -1, (Fraction(r, p),)).scale(root_of_unity(Fraction(k * r, p)))
    return lhs, rhs


# -- the psi^(s) family -------------------------------------------------


@dataclass(frozen=True)
class GammaVector:
    """2**s unit-modulus parameters (gamma_0, ..., gamma_{2^s-1})."""

    s: int
    gammas: tuple
    check: bool = field(default=True, compare=False)

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("s must be >= 1")
        gs = tuple(CycloScalar._coerce(g) for g in self.gammas)
        object.__setattr__(self, "gammas", gs)
        if len(gs) != 2**self.s:
            raise ValueError(f"expected {2**self.s} gammas, got {len(gs)}")
        if self.check and not self.is_unit():
            raise ValueError("every gamma_r must have modulus 1")

    @classmethod
    def from_angles(cls, s: int, angles: Sequence) -> "GammaVector":
        """gamma_r = exp(2 pi i angle_r), angles rational with 2-power denominators."""
        return cls(s, tuple(root_of_unity(Fraction(t), 2) for t in angles))

    def is_unit(self) -> bool:
        return all(g * g.conj() == 1 for g in self.gammas)

    def perturbed(self, r: int = 0, factor=2) -> "GammaVector":
        gs = list(self.gammas)
        gs[r] = gs[r] * factor
        return GammaVector(self.s, tuple(gs), check=False)

    def to_json(self) -> dict:
        return {"s": self.s, "gammas": [g.to_json() for g in self.gammas]}

    @classmethod
    def from_json(cls, data: dict) -> "GammaVector":
        return cls(int(data["s"]), tuple(CycloScalar.from_json(g) for g in data["gammas"]))


def alpha_coeffs(g: GammaVector, strict: bool = True) -> list[CycloScalar]:
    """alpha_k = 2**-s (-1)**k sum_r gamma_r exp(-i pi (2r+1) k / 2**s)."""
    if strict and not g.is_unit():
        raise ValueError("non-unit gamma")
    s = g.s
    size = 2**s
    order = 2 ** (s + 1)
    out = []
    for k in range(size):
        acc = CycloScalar.zero()
        for r, gam in enumerate(g.gammas):
            acc = acc + gam * CycloScalar.zeta(order, -(2 * r + 1) * k)
        sign = -1 if k % 2 else 1
        out.append(acc * Fraction(sign, size))
    return out


def psi_s(g: GammaVector | Sequence[CycloScalar], strict: bool = True) -> MBF:
    """sum_k alpha_k psi0(x - k/2**s)."""
    alpha = alpha_coeffs(g, strict) if isinstance(g, GammaVector) else [CycloScalar._coerce(c) for c in g]
    size = len(alpha)
    if size & (size - 1):
        raise ValueError("need 2**s coefficients")
    base = psi0()
    out = MBF.zero(2)
    for k, c in enumerate(alpha):
        if not c.is_zero():
            out = out + translate(base, Fraction(k, size)).scale(c)
    return out


def shift_matrix_D(alpha: Sequence) -> list[list[CycloScalar]]:
    """Row r holds the psi0-coordinates of psi^(s)(x - r/2**s)."""
    alpha = [CycloScalar._coerce(c) for c in alpha]
    m = len(alpha)
    return [[alpha[c - r] if c >= r else -alpha[m + c - r] for c in range(m)] for r in range(m)]


def is_unitary(d) -> bool:
    return exactmat.is_unitary(d)


def matrix_A(s: int) -> list[list[CycloScalar]]:
    """The 2**s x 2**s skew shift: A e_i = e_{i+1}, A e_last = -e_0."""
    m = 2**s
    z, one = CycloScalar.zero(), CycloScalar.one()
    a = [[z] * m for _ in range(m)]
    a[0][m - 1] = -one
    for i in range(1, m):
        a[i][i - 1] = one
    return a


def matrix_A_eigensystem(s: int) -> tuple[list[CycloScalar], list[list[CycloScalar]]]:
    """lambda_r = -exp(i pi (2r+1)/2**s) and unit eigenvectors v_r of :func:`matrix_A`."""
    if s < 1:
        raise ValueError("s must be >= 1")
    m = 2**s
    order = 2 ** (s + 1)
    norm = prime_power_sqrt(2, -s)
    lams, vecs = [], []
    for r in range(m):
        lams.append(-CycloScalar.zeta(order, 2 * r + 1))
        vecs.append([norm * CycloScalar.zeta(order, -(2 * r + 1) * l) * (-1 if l % 2 else 1) for l in range(m)])
    return lams, vecs


# -- real families ----------------------------------------------------


def real_gammas(s: int, thetas: Sequence) -> GammaVector:
    """Unit parameters giving real psi^(s); angles in turns (theta = 2 pi t).

    s=1: (e^{-i theta}, e^{i theta}).  s=2: (e^{i t1}, e^{i t2}, e^{-i t2}, e^{-i t1}).
    """
    ts = [Fraction(t) for t in thetas]
    if s == 1:
        (t,) = ts
        return GammaVector.from_angles(1, [-t, t])
    if s == 2:
        t1, t2 = ts
        return GammaVector.from_angles(2, [t1, t2, -t2, -t1])
    raise ValueError("real families are tabulated for s = 1, 2")


def real_alpha(s: int, thetas: Sequence) -> list[CycloScalar]:
    return alpha_coeffs(real_gammas(s, thetas))


def real_wavelet(s: int, thetas: Sequence) -> MBF:
    return psi_s(real_gammas(s, thetas))


# theta_1, theta_2 as functions of the single parameter t (turns)
REAL_PRESETS = {
    "equal": lambda t: (t, t),
    "opposite": lambda t: (t, -t),
    "quarter": lambda t: (t, t - Fraction(1, 4)),
}


def real_preset(name: str, t) -> MBF:
    """One-parameter real families with s=2: theta_1 = theta_2, theta_1 = -theta_2,
    theta_1 = theta_2 + pi/2."""
    try:
        rule = REAL_PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(REAL_PRESETS)}") from None
    return real_wavelet(2, rule(Fraction(t)))


def real_alpha_closed_form(s: int, thetas: Sequence) -> list[CycloScalar]:
    """Closed-form alpha for the real families, independent of :func:`alpha_coeffs`."""
    if s == 1:
        (t,) = thetas
        return [cos_turns(t), sin_turns(t)]
    t1, t2 = thetas
    c1, c2, s1, s2 = cos_turns(t1), cos_turns(t2), sin_turns(t1), sin_turns(t2)
    r8 = prime_power_sqrt(2, 1) * 2
    half = Fraction(1, 2)
    return [
        (c1 + c2) * half,
        -(c1 - c2 + s1 + s2) / r8,
        (s1 - s2) * half,
        (c1 - c2 - s1 - s2) / r8,
    ]


# -- tensor wavelets on Q_2^n -----------------------------------------


@dataclass(frozen=True)
class WaveletIndex:
    """One element Psi^(s)_{e; j a} of the separable basis of L^2(Q_2^n).

    ``e`` is a nonempty subset of ``{1..n}``; ``s[nu] = 0`` selects psi0 in
    coordinate nu, otherwise ``gammas[nu]`` supplies the psi^(s) parameters.
    """

    n: int
    e: tuple
    j: int
    a: tuple
    s: tuple = ()
    gammas: tuple = ()
    p: int = 2

    def __post_init__(self):
        if self.p != 2:
            raise ValueError("tensor wavelets are built for p = 2")
        e = tuple(sorted(set(self.e)))
        if not e or any(not 1 <= v <= self.n for v in e):
            raise ValueError("e must be a nonempty subset of 1..n")
        object.__setattr__(self, "e", e)
        s = tuple(self.s) if self.s else (0,) * self.n
        if len(s) != self.n or any(x < 0 for x in s):
            raise ValueError("s needs n nonnegative entries")
        object.__setattr__(self, "s", s)
        gammas = tuple(self.gammas) if self.gammas else (None,) * self.n
        if len(gammas) != self.n:
            raise ValueError("gammas needs n entries")
        for nu in range(self.n):
            if (nu + 1) in e and s[nu] >= 1:
                g = gammas[nu]
                if not isinstance(g, GammaVector) or g.s != s[nu]:
                    raise ValueError(f"coordinate {nu + 1} needs a GammaVector with s={s[nu]}")
        object.__setattr__(self, "gammas", gammas)
        a = tuple(point(x, 2) for x in self.a)
        if len(a) != self.n:
            raise ValueError("a needs n coordinates")
        for x in a:
            if x.to_fraction() < 0 or x.to_fraction() >= 1:
                raise ValueError("a must lie in I_2^n")
        object.__setattr__(self, "a", a)

    @property
    def k_e(self) -> tuple:
        return tuple(1 if nu + 1 in self.e else 0 for nu in range(self.n))

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "e": list(self.e),
            "j": self.j,
            "a": [str(x.to_fraction()) for x in self.a],
            "s": list(self.s),
            "gammas": [g.to_json() if isinstance(g, GammaVector) else None for g in self.gammas],
        }

    @classmethod
    def from_json(cls, d: dict) -> "WaveletIndex":
        gam = tuple(GammaVector.from_json(g) if g else None for g in d.get("gammas") or [None] * d["n"])
        return cls(
            n=int(d["n"]),
            e=tuple(d["e"]),
            j=int(d["j"]),
            a=tuple(Fraction(x) for x in d["a"]),
            s=tuple(d.get("s") or ()),
            gammas=gam,
            p=int(d.get("p", 2)),
        )


def _factor(idx: WaveletIndex, nu: int) -> MBF:
    if nu + 1 not in idx.e:
        return phi(2)
    if idx.s[nu] == 0:
        return psi0()
    return psi_s(idx.gammas[nu])


def tensor_mother(idx: WaveletIndex) -> MBF:
    """Psi^(s)_e at unit scale and zero shift."""
    f = _factor(idx, 0)
    for nu in range(1, idx.n):
        f = tensor(f, _factor(idx, nu))
    return f


def tensor_wavelet(idx: WaveletIndex) -> MBF:
    return basis_element(tensor_mother(idx), idx.j, idx.a)


def _subsets(n: int) -> list[tuple]:
    out = []
    for size in range(1, n + 1):
        out.extend(itertools.combinations(range(1, n + 1), size))
    return out


def enumerate_basis(
    p: int,
    n: int,
    j_range: Sequence[int],
    gamma_max: int,
    s: Sequence[int] | None = None,
    gammas: Sequence | None = None,
) -> list[WaveletIndex]:
    """Indices ordered by j, then e (by size, then lexicographic), then a."""
    if p != 2:
        raise ValueError("the separable basis is built for p = 2")
    s = tuple(s) if s else (0,) * n
    gammas = tuple(gammas) if gammas else (None,) * n
    shifts = enumerate_Ip(2, gamma_max, n)
    return [
        WaveletIndex(n=n, e=e, j=j, a=tuple(a), s=s, gammas=gammas)
        for j in j_range
        for e in _subsets(n)
        for a in shifts
    ]


# -- approximate path for arbitrary real angles -------------------------


def alpha_coeffs_float(gammas: Sequence[complex]) -> np.ndarray:
    g = np.asarray(gammas, dtype=complex)
    m = len(g)
    if m & (m - 1) or m < 2:
        raise ValueError("need 2**s gammas")
    k = np.arange(m)
    r = np.arange(m)
    kernel = np.exp(-1j * np.pi * np.outer(k, 2 * r + 1) / m)
    return ((-1.0) ** k) * (kernel @ g) / m


def shift_matrix_D_float(alpha: Sequence[complex]) -> np.ndarray:
    a = np.asarray(alpha, dtype=complex)
    m = len(a)
    d = np.empty((m, m), dtype=complex)
    for r in range(m):
        for c in range(m):
            d[r, c] = a[c - r] if c >= r else -a[m + c - r]
    return d


def is_unitary_float(d: np.ndarray, tol: float = 1e-12) -> bool:
    d = np.asarray(d, dtype=complex)
    return bool(np.max(np.abs(d @ d.conj().T - np.eye(len(d)))) <= tol)
