"""Pseudo-differential operators A = F^-1 [symbol * F f] acting on MBFs.

A symbol is a function on Q_p^n minus the origin, locally constant, with a
*certificate*: ``certificate(xi)`` returns a radius exponent gamma such that
the symbol is constant on ``B_gamma(xi)``.  With that, the multiplier can be
applied exactly by splitting the support of ``F f`` until each piece lies in a
certified ball.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

from .cyclo import CycloScalar, PowerScalar
from .mbf import MBF, PowerMBF, fourier, integral, inverse_fourier, is_lizorkin
from .padic import Ball, PAdicPoint, ball_canonicalize, reduce_mod, valuation, vector

__all__ = [
    "Symbol",
    "FractionalNorm",
    "ConstantSymbol",
    "LocallyConstant",
    "PiecewiseConstant",
    "ProductSymbol",
    "two_valued_test_symbol",
    "CertificateError",
    "NotLizorkinError",
    "apply",
    "apply_power",
    "compose",
    "eigen_ratio",
    "eigen_criterion",
    "eigenvalue",
    "verify_eigenfunction",
    "eigen_report",
    "kozyrev_spectrum_check",
    "parse_symbol",
]


class CertificateError(ValueError):
    """A symbol was not constant on a ball its certificate vouched for."""


class NotLizorkinError(ValueError):
    """Operators act only on functions with zero integral."""


def _as_fraction_pair(alpha) -> tuple[Fraction, Fraction]:
    if isinstance(alpha, tuple):
        return Fraction(alpha[0]), Fraction(alpha[1])
    if isinstance(alpha, complex):
        return Fraction(alpha.real), Fraction(alpha.imag)
    return Fraction(alpha), Fraction(0)


class Symbol:
    """Base class: subclasses provide :meth:`value` and :meth:`certificate`."""

    prime: int
    dim: int

    def value(self, xi: tuple) -> PowerScalar:
        raise NotImplementedError

    def certificate(self, xi: tuple) -> int | float:
        raise NotImplementedError

    def __mul__(self, other: "Symbol") -> "Symbol":
        return compose(self, other)


class FractionalNorm(Symbol):
    """|xi|_p**alpha with complex rational alpha (the symbol of D**alpha)."""

    def __init__(self, alpha, prime: int = 2, dim: int = 1):
        self.alpha = _as_fraction_pair(alpha)
        self.prime = prime
        self.dim = dim

    def value(self, xi):
        v = valuation(xi)
        if v == math.inf:
            raise ValueError("|xi|**alpha is not evaluated at the origin")
        return PowerScalar(CycloScalar.one(), (-v * self.alpha[0], -v * self.alpha[1]), self.prime)

    def certificate(self, xi):
        v = valuation(xi)
        if v == math.inf:
            raise ValueError("no certificate at the origin")
        return -v - 1

    def __repr__(self):
        a, b = self.alpha
        return f"FractionalNorm(alpha={a}{'+' if b >= 0 else '-'}{abs(b)}i, p={self.prime}, n={self.dim})"


class ConstantSymbol(Symbol):
    def __init__(self, c, prime: int = 2, dim: int = 1):
        self.c = c if isinstance(c, PowerScalar) else PowerScalar(c, 0, prime)
        self.prime = prime
        self.dim = dim

    def value(self, xi):
        return self.c

    def certificate(self, xi):
        return math.inf


class LocallyConstant(Symbol):
    """A caller-supplied rule with its constancy certificate."""

    def __init__(self, rule: Callable, certificate: Callable, prime: int = 2, dim: int = 1, name: str = "custom"):
        self._rule = rule
        self._cert = certificate
        self.prime = prime
        self.dim = dim
        self.name = name

    def value(self, xi):
        v = self._rule(xi)
        return v if isinstance(v, PowerScalar) else PowerScalar(v, 0, self.prime)

    def certificate(self, xi):
        return self._cert(xi)

    def __repr__(self):
        return f"LocallyConstant({self.name})"


class PiecewiseConstant(Symbol):
    """Value ``table[B]`` on each ball B of a disjoint table, ``default`` elsewhere."""

    def __init__(self, table: dict, default, prime: int = 2, dim: int = 1):
        self.table = {b: (v if isinstance(v, PowerScalar) else PowerScalar(v, 0, prime)) for b, v in table.items()}
        self.default = default if isinstance(default, PowerScalar) else PowerScalar(default, 0, prime)
        self.prime = prime
        self.dim = dim

    def _home(self, xi):
        for b in self.table:
            if b.contains_point(xi):
                return b
        return None

    def value(self, xi):
        b = self._home(xi)
        return self.default if b is None else self.table[b]

    def certificate(self, xi):
        b = self._home(xi)
        if b is not None:
            return b.gamma
        cert = math.inf
        for t in self.table:
            d = valuation(tuple(x - c for x, c in zip(xi, t.center)))
            cert = min(cert, -d - 1)
        return cert


class ProductSymbol(Symbol):
    def __init__(self, a: Symbol, b: Symbol):
        if (a.prime, a.dim) != (b.prime, b.dim):
            raise ValueError("symbols live on different spaces")
        self.a, self.b = a, b
        self.prime, self.dim = a.prime, a.dim

    def value(self, xi):
        return self.a.value(xi) * self.b.value(xi)

    def certificate(self, xi):
        return min(self.a.certificate(xi), self.b.certificate(xi))

    def __repr__(self):
        return f"({self.a!r} * {self.b!r})"


def compose(a: Symbol, b: Symbol) -> Symbol:
    """Symbol of the composition A o B (multipliers commute)."""
    if isinstance(a, FractionalNorm) and isinstance(b, FractionalNorm) and (a.prime, a.dim) == (b.prime, b.dim):
        return FractionalNorm((a.alpha[0] + b.alpha[0], a.alpha[1] + b.alpha[1]), a.prime, a.dim)
    return ProductSymbol(a, b)


def _digit(x: PAdicPoint, m: int) -> int:
    """Digit of x at exponent m in its p-adic expansion."""
    p = x.prime
    y = reduce_mod(x, m + 1).to_fraction()
    return int(y / Fraction(p) ** m) % p


def two_valued_test_symbol(prime: int = 2, dim: int = 1) -> LocallyConstant:
    """2 where the first coordinate has digit 1 just above the leading exponent of |xi|, else 1.

    Constant on B_{-(v+2)}(xi) where v = v(xi); takes both values on every ball
    B_{-j}(c) with v(c) = j - 1, so no wavelet at scale j is an eigenfunction.
    """

    def rule(xi):
        v = valuation(xi)
        if v == math.inf:
            raise ValueError("not evaluated at the origin")
        return 2 if _digit(xi[0], v + 1) == 1 else 1

    def cert(xi):
        v = valuation(xi)
        if v == math.inf:
            raise ValueError("no certificate at the origin")
        return -(v + 2)

    return LocallyConstant(rule, cert, prime, dim, name="two-valued-test")


def _refine(symbol: Symbol, ball: Ball, check: bool) -> list[tuple[Ball, PowerScalar]]:
    """Split ``ball`` until the symbol's certificate covers each part."""
    out = []
    work = [ball]
    while work:
        b = work.pop()
        if b.contains_origin():
            raise ValueError(f"symbol would be sampled at the origin on {b}")
        cert = symbol.certificate(b.center)
        if cert >= b.gamma:
            val = symbol.value(b.center)
            if check:
                for child in b.children():
                    if not (symbol.value(child.center) == val):
                        raise CertificateError(f"symbol not constant on certified ball {b}")
            out.append((b, val))
        else:
            work.extend(b.children())
    return out


def apply(symbol: Symbol, f: MBF, check: bool = True) -> PowerMBF:
    """A f = F^-1[symbol * F f] for zero-mean f."""
    if (symbol.prime, symbol.dim) != (f.prime, f.dim):
        raise ValueError("symbol and function live on different spaces")
    if not is_lizorkin(f):
        raise NotLizorkinError(f"integral is {integral(f).to_complex()}, not 0")
    p, n = f.prime, f.dim
    spectrum = fourier(f)
    parts: dict = {}
    for ball, fs in spectrum.pieces().items():
        for sub, val in _refine(symbol, ball, check):
            key = val.exponent
            raw = parts.setdefault(key, [])
            for r, c in fs.items():
                raw.append((val.c * c, r, sub))
    out = PowerMBF(p, n)
    for w, raw in parts.items():
        out = out + PowerMBF(p, n, {w: inverse_fourier(MBF(p, n, raw))})
    return out


def apply_power(symbol: Symbol, g: PowerMBF, check: bool = True) -> PowerMBF:
    """A applied to each part p**w f_w of g; lets operators be chained."""
    out = PowerMBF(g.prime, g.dim)
    for w, f in g.parts.items():
        out = out + apply(symbol, f, check).scale(PowerScalar.from_exponent(w, g.prime))
    return out


def eigen_ratio(g: PowerMBF, f: MBF) -> PowerScalar | None:
    """lambda with g = lambda f, or None (for nonzero f)."""
    if f.is_zero():
        raise ValueError("zero function")
    if g.is_zero():
        return PowerScalar(0, 0, f.prime)
    if len(g.parts) != 1:
        return None
    (w, h), = g.parts.items()
    t = f.terms[0]
    hp = h.pieces()
    if t.ball not in hp or t.freq not in hp[t.ball]:
        return None
    mu = hp[t.ball][t.freq] / t.coef
    if h != f.scale(mu):
        return None
    return PowerScalar(mu, w, f.prime)


def _center_vector(e, j: int, n: int) -> tuple:
    # -2**(j-1) k_e
    return vector([-Fraction(2) ** (j - 1) if nu + 1 in e else 0 for nu in range(n)], 2)


def eigen_criterion(symbol: Symbol, e, j: int) -> bool:
    """Is the symbol constant on B_{-j}(-2**(j-1) k_e)?"""
    if symbol.prime != 2:
        raise ValueError("the criterion is stated for p = 2")
    ball = ball_canonicalize(_center_vector(e, j, symbol.dim), -j, 2)
    vals = [v for _, v in _refine(symbol, ball, check=False)]
    return all(v == vals[0] for v in vals[1:])


def eigenvalue(symbol: Symbol, e, j: int) -> PowerScalar:
    if not eigen_criterion(symbol, e, j):
        raise ValueError("symbol is not constant on the wavelet's spectral ball")
    return symbol.value(_center_vector(e, j, symbol.dim))


def eigen_report(symbol: Symbol, idx) -> dict:
    """Direct check (apply and compare) next to the criterion, for one wavelet index."""
    from .wavelets import tensor_wavelet

    psi = tensor_wavelet(idx)
    lam_direct = eigen_ratio(apply(symbol, psi), psi)
    crit = eigen_criterion(symbol, idx.e, idx.j)
    lam = eigenvalue(symbol, idx.e, idx.j) if crit else None
    return {
        "direct": lam_direct is not None,
        "criterion": crit,
        "eigenvalue": lam,
        "direct_eigenvalue": lam_direct,
        "consistent": (lam_direct is not None) == crit and (lam is None or lam == lam_direct),
    }


def verify_eigenfunction(symbol: Symbol, idx) -> bool:
    """True iff A Psi = lambda Psi holds directly with lambda from the criterion."""
    r = eigen_report(symbol, idx)
    if not r["consistent"]:
        raise AssertionError(f"criterion and direct computation disagree for {idx}")
    return r["direct"] and r["criterion"]


def kozyrev_spectrum_check(p: int, k: int, j: int, a, alpha) -> bool:
    """D**alpha theta_{k;ja} = p**(alpha(1-j)) theta_{k;ja}."""
    from .wavelets import kozyrev

    theta = kozyrev(p, k, j, a)
    sym = FractionalNorm(alpha, p, 1)
    expected = PowerScalar(1, ((1 - j) * sym.alpha[0], (1 - j) * sym.alpha[1]), p)
    lam = eigen_ratio(apply(sym, theta), theta)
    return lam is not None and lam == expected


def parse_symbol(spec: str, prime: int = 2, dim: int = 1) -> Symbol:
    """Parse 'fractional:alpha=<re>[,<im>]', 'constant:<value>' or 'two-valued-test'."""
    kind, _, rest = spec.partition(":")
    if kind == "fractional":
        key, _, val = rest.partition("=")
        if key != "alpha" or not val:
            raise ValueError("expected fractional:alpha=<re>[,<im>]")
        parts = val.split(",")
        if len(parts) > 2:
            raise ValueError("alpha takes at most two components")
        re = Fraction(parts[0])
        im = Fraction(parts[1]) if len(parts) == 2 else Fraction(0)
        return FractionalNorm((re, im), prime, dim)
    if kind == "constant":
        if not rest:
            raise ValueError("expected constant:<value>")
        return ConstantSymbol(Fraction(rest), prime, dim)
    if kind == "two-valued-test" and not rest:
        return two_valued_test_symbol(prime, dim)
    raise ValueError(f"unknown symbol {spec!r}")
