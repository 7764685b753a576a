"""The Haar multiresolution analysis on Q_2.

Level convention: ``V_j = span{phi(2**-j x - a) : a in I_2}``, the functions
constant on cosets of ``B_{-j} = 2**j Z_2``, so ``V_j`` grows with ``j``.
``W_j`` is spanned by ``psi(2**-j x - a)``.  Coefficients reported by
:func:`project_W` and :func:`decompose` are taken against the orthonormal
functions ``2**(j/2) phi(2**-j x - a)`` and ``2**(j/2) psi(2**-j x - a)``.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import exactmat
from .cyclo import CycloScalar
from .mbf import MBF, affine, inner_product, local_constancy_params
from .padic import PAdicPoint, enumerate_Ip
from .wavelets import basis_element, phi, psi0

__all__ = [
    "check_refinement",
    "ExpansionError",
    "NotInSpaceError",
    "TruncationError",
    "v_function",
    "w_function",
    "expand_in_Vj",
    "project_W",
    "Decomposition",
    "decompose",
    "reconstruct",
    "gram_matrix",
    "is_identity",
    "intersection_triviality_probe",
    "support_radius",
]


def check_refinement(p: int, drop: int | None = None) -> bool:
    """phi(x) == sum_r phi(x/p - r/p) as canonical MBFs; ``drop`` omits one summand."""
    f = phi(p)
    rhs = MBF.zero(p)
    for r in range(p):
        if r != drop:
            rhs = rhs + affine(f, -1, (Fraction(r, p),))
    return f == rhs


class ExpansionError(ValueError):
    pass


class NotInSpaceError(ExpansionError):
    """The function is provably outside V_j."""


class TruncationError(ExpansionError):
    """The shift enumeration does not reach the whole support."""


def v_function(j: int, a) -> MBF:
    """Orthonormal 2**(j/2) phi(2**-j x - a)."""
    return basis_element(phi(2), -j, a)


def w_function(j: int, a, psi: MBF | None = None) -> MBF:
    """Orthonormal 2**(j/2) psi(2**-j x - a)."""
    return basis_element(psi0() if psi is None else psi, -j, a)


def _check_haar(f: MBF):
    if f.prime != 2 or f.dim != 1:
        raise ValueError("the Haar MRA is one-dimensional over Q_2")


def support_radius(f: MBF) -> int:
    """Smallest N with supp f inside B_N (0 for the zero function)."""
    return 0 if f.is_zero() else local_constancy_params(f)[1]


def _shifts(gamma: int) -> list[PAdicPoint]:
    return [a[0] for a in enumerate_Ip(2, max(gamma, 0), 1)]


def expand_in_Vj(f: MBF, j: int, gamma_max: int) -> dict:
    """Coefficients c_a with f = sum_a c_a phi(2**-j x - a), a in I_2, |a| <= 2**gamma_max."""
    _check_haar(f)
    if f.is_zero():
        return {}
    n_f = support_radius(f)
    if n_f > gamma_max - j:
        raise TruncationError(
            f"support reaches B_{n_f} but shifts with |a| <= 2^{gamma_max} only cover B_{gamma_max - j}"
        )
    scale = Fraction(2) ** j
    base = phi(2)
    coeffs = {}
    recon = MBF.zero(2)
    for a in _shifts(gamma_max):
        g = affine(base, -j, (a,))
        c = inner_product(f, g) * scale
        if not c.is_zero():
            coeffs[a.to_fraction()] = c
            recon = recon + g.scale(c)
    if recon != f:
        raise NotInSpaceError(f"function is not constant on cosets of B_{-j}")
    return coeffs


def _psi_radius(psi: MBF) -> int:
    return max(support_radius(psi), 0)


def project_W(f: MBF, j: int, psi: MBF | None = None, gamma_max: int | None = None) -> dict:
    """a -> <f, 2**(j/2) psi(2**-j x - a)>, nonzero entries only."""
    _check_haar(f)
    psi = psi0() if psi is None else psi
    if gamma_max is None:
        gamma_max = max(0, _psi_radius(psi), support_radius(f) + j)
    out = {}
    for a in _shifts(gamma_max):
        c = inner_product(f, w_function(j, (a,), psi))
        if not c.is_zero():
            out[a.to_fraction()] = c
    return out


@dataclass
class Decomposition:
    """f = sum_a v[a] 2^(j0/2) phi(2^-j0 x - a) + sum_(j,a) w[(j,a)] 2^(j/2) psi(2^-j x - a)."""

    j0: int
    top: int
    v: dict = field(default_factory=dict)
    w: dict = field(default_factory=dict)

    def coefficients(self):
        yield from self.v.values()
        yield from self.w.values()

    def energy(self) -> CycloScalar:
        total = CycloScalar.zero()
        for c in self.coefficients():
            total = total + c * c.conj()
        return total

    def to_json(self) -> dict:
        def fr(q: Fraction) -> str:
            return f"{q.numerator}/{q.denominator}"

        return {
            "j0": self.j0,
            "J": self.top,
            "v": [{"a": fr(a), "coef": c.to_json()} for a, c in sorted(self.v.items())],
            "w": [{"j": j, "a": fr(a), "coef": c.to_json()} for (j, a), c in sorted(self.w.items())],
        }

    @classmethod
    def from_json(cls, d: dict) -> "Decomposition":
        return cls(
            j0=int(d["j0"]),
            top=int(d["J"]),
            v={Fraction(e["a"]): CycloScalar.from_json(e["coef"]) for e in d["v"]},
            w={(int(e["j"]), Fraction(e["a"])): CycloScalar.from_json(e["coef"]) for e in d["w"]},
        )


def decompose(f: MBF, j0: int = -3, psi: MBF | None = None) -> Decomposition:
    """Split f into its V_{j0} part and W_j parts for j0 <= j < J, where f lies in V_J."""
    _check_haar(f)
    psi = psi0() if psi is None else psi
    if f.is_zero():
        return Decomposition(j0, j0)
    l_f, n_f = local_constancy_params(f)
    top = max(-l_f, j0)
    s = _psi_radius(psi)
    d = Decomposition(j0, top)
    for a in _shifts(n_f + j0):
        c = inner_product(f, v_function(j0, (a,)))
        if not c.is_zero():
            d.v[a.to_fraction()] = c
    for j in range(j0, top):
        for a in _shifts(max(s, n_f + j)):
            c = inner_product(f, w_function(j, (a,), psi))
            if not c.is_zero():
                d.w[(j, a.to_fraction())] = c
    return d


def reconstruct(d: Decomposition, psi: MBF | None = None) -> MBF:
    psi = psi0() if psi is None else psi
    raw = []
    for a, c in d.v.items():
        raw.extend(v_function(d.j0, (a,)).scale(c).terms)
    for (j, a), c in d.w.items():
        raw.extend(w_function(j, (a,), psi).scale(c).terms)
    return MBF(2, 1, raw)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("QPW_THREADS", "1")))
    except ValueError:
        return 1


def gram_matrix(fs: list, threads: int | None = None) -> list[list[CycloScalar]]:
    """G[i][k] = <f_i, f_k>; the upper triangle is computed, the rest by symmetry."""
    m = len(fs)
    threads = _threads() if threads is None else threads
    pairs = [(i, k) for i in range(m) for k in range(i, m)]

    def entry(ik):
        i, k = ik
        return inner_product(fs[i], fs[k])

    if threads > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            vals = list(pool.map(entry, pairs))
    else:
        vals = [entry(ik) for ik in pairs]
    g = [[None] * m for _ in range(m)]
    for (i, k), v in zip(pairs, vals):
        g[i][k] = v
        g[k][i] = v.conj() if i != k else v
    return g


def is_identity(m) -> bool:
    return exactmat.is_identity(m)


def intersection_triviality_probe(j_min: int, f: MBF) -> bool:
    """True when f is not in V_{j_min}, i.e. f escapes the spaces as j decreases."""
    _check_haar(f)
    if f.is_zero():
        raise ValueError("the probe needs a nonzero function")
    gamma_max = max(0, support_radius(f) + j_min)
    try:
        expand_in_Vj(f, j_min, gamma_max)
    except NotInSpaceError:
        return True
    return False
