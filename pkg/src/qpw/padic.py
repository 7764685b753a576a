"""Finite p-adic expansions, norms, characters and the ball calculus.

Every quantity used by the wavelet constructions (shifts in I_p, ball
centres, character frequencies) lives in Z[1/p], so points are stored
exactly as ``num * p**exp`` with ``p`` not dividing ``num``.

Characters are returned as angles: a :class:`fractions.Fraction` ``t`` in
``[0, 1)`` standing for ``exp(2*pi*i*t)``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence

__all__ = [
    "PAdicPoint",
    "Ball",
    "point",
    "vector",
    "valuation",
    "norm",
    "frac_part",
    "reduce_mod",
    "character",
    "ball_canonicalize",
    "ball_relation",
    "ball_split",
    "enumerate_Ip",
]


def _strip(num: int, p: int) -> tuple[int, int]:
    """Return ``(u, k)`` with ``num = u * p**k`` and ``p`` not dividing ``u``."""
    k = 0
    while num % p == 0:
        num //= p
        k += 1
    return num, k


@total_ordering
@dataclass(frozen=True, slots=True)
class PAdicPoint:
    """An element ``num * prime**exp`` of Z[1/p] viewed inside Q_p."""

    num: int
    exp: int
    prime: int

    def __post_init__(self):
        if self.prime < 2:
            raise ValueError("prime must be >= 2")
        if self.num == 0:
            if self.exp != 0:
                object.__setattr__(self, "exp", 0)
        elif self.num % self.prime == 0:
            u, k = _strip(self.num, self.prime)
            object.__setattr__(self, "num", u)
            object.__setattr__(self, "exp", self.exp + k)

    @classmethod
    def from_rational(cls, value, p: int) -> "PAdicPoint":
        q = Fraction(value)
        if q == 0:
            return cls(0, 0, p)
        den, k = _strip(q.denominator, p)
        if den != 1:
            raise ValueError(f"{q} is not in Z[1/{p}]")
        return cls(q.numerator, -k, p)

    def to_fraction(self) -> Fraction:
        if self.exp >= 0:
            return Fraction(self.num * self.prime**self.exp)
        return Fraction(self.num, self.prime**-self.exp)

    def is_zero(self) -> bool:
        return self.num == 0

    @property
    def valuation(self):
        return math.inf if self.num == 0 else self.exp

    def _coerce(self, other) -> "PAdicPoint":
        if isinstance(other, PAdicPoint):
            if other.prime != self.prime:
                raise ValueError("mixed primes")
            return other
        if isinstance(other, (int, Fraction)):
            return PAdicPoint.from_rational(other, self.prime)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num == 0:
            return other
        if other.num == 0:
            return self
        p = self.prime
        e = min(self.exp, other.exp)
        num = self.num * p ** (self.exp - e) + other.num * p ** (other.exp - e)
        return PAdicPoint(num, e, p)

    __radd__ = __add__

    def __neg__(self):
        return PAdicPoint(-self.num, self.exp, self.prime)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num == 0 or other.num == 0:
            return PAdicPoint(0, 0, self.prime)
        return PAdicPoint(self.num * other.num, self.exp + other.exp, self.prime)

    __rmul__ = __mul__

    def shift(self, k: int) -> "PAdicPoint":
        """Multiply by ``p**k``."""
        if self.num == 0:
            return self
        return PAdicPoint(self.num, self.exp + k, self.prime)

    def __lt__(self, other):
        if not isinstance(other, PAdicPoint):
            return NotImplemented
        return self.to_fraction() < other.to_fraction()

    def __repr__(self):
        return f"PAdicPoint({self.to_fraction()}, p={self.prime})"

    def __str__(self):
        return str(self.to_fraction())


Vector = tuple  # tuple[PAdicPoint, ...]


def point(value, p: int) -> PAdicPoint:
    if isinstance(value, PAdicPoint):
        if value.prime != p:
            raise ValueError("mixed primes")
        return value
    return PAdicPoint.from_rational(value, p)


def vector(values: Iterable, p: int) -> tuple:
    """Build a coordinate tuple of :class:`PAdicPoint`; scalars give 1-vectors."""
    if isinstance(values, (int, Fraction, str, PAdicPoint)):
        values = [values]
    out = tuple(point(v, p) for v in values)
    if not out:
        raise ValueError("vectors need at least one coordinate")
    return out


def valuation(x) -> int | float:
    """gamma(x) with |x|_p = p**-gamma; ``math.inf`` for zero.  Vectors take the min."""
    if isinstance(x, PAdicPoint):
        return x.valuation
    return min(c.valuation for c in x)


def norm(x) -> Fraction:
    """|x|_p as an exact rational (max over coordinates for vectors)."""
    v = valuation(x)
    if v == math.inf:
        return Fraction(0)
    p = x.prime if isinstance(x, PAdicPoint) else x[0].prime
    return Fraction(p) ** (-v)


def reduce_mod(x: PAdicPoint, k: int) -> PAdicPoint:
    """Representative of ``x`` modulo ``p**k Z_p`` lying in ``[0, p**k)``."""
    if x.num == 0 or x.exp >= k:
        return PAdicPoint(0, 0, x.prime)
    p = x.prime
    return PAdicPoint(x.num % p ** (k - x.exp), x.exp, p)


def frac_part(x: PAdicPoint) -> Fraction:
    """The p-adic fractional part {x}_p: digits at negative exponents only."""
    return reduce_mod(x, 0).to_fraction()


def character(s: Sequence[PAdicPoint], x: Sequence[PAdicPoint]) -> Fraction:
    """Angle of chi_p(s.x) = exp(2 pi i sum_j {s_j x_j}_p), reduced into [0, 1)."""
    if isinstance(s, PAdicPoint):
        s = (s,)
    if isinstance(x, PAdicPoint):
        x = (x,)
    if len(s) != len(x):
        raise ValueError("dimension mismatch")
    total = Fraction(0)
    for sj, xj in zip(s, x):
        total += frac_part(sj * xj)
    return total - math.floor(total)


@dataclass(frozen=True, slots=True)
class Ball:
    """The ball B_gamma^n(center) = {x : |x - center|_p <= p**gamma}.

    ``center`` is always the canonical coset representative, so two balls are
    equal as sets iff they compare equal.
    """

    center: tuple
    gamma: int

    @property
    def prime(self) -> int:
        return self.center[0].prime

    @property
    def dim(self) -> int:
        return len(self.center)

    @property
    def measure(self) -> Fraction:
        return Fraction(self.prime) ** (self.dim * self.gamma)

    def contains_point(self, x: Sequence[PAdicPoint]) -> bool:
        return all(reduce_mod(xj, -self.gamma) == cj for xj, cj in zip(x, self.center))

    def contains_origin(self) -> bool:
        return all(c.num == 0 for c in self.center)

    def ancestor(self, gamma: int) -> "Ball":
        """The unique ball of radius p**gamma (gamma >= self.gamma) containing self."""
        if gamma < self.gamma:
            raise ValueError("ancestor must not be smaller")
        if gamma == self.gamma:
            return self
        return Ball(tuple(reduce_mod(c, -gamma) for c in self.center), gamma)

    def __contains__(self, other) -> bool:
        if isinstance(other, Ball):
            return other.gamma <= self.gamma and other.ancestor(self.gamma) == self
        return self.contains_point(other)

    def children(self) -> list["Ball"]:
        """The p**n maximal proper sub-balls, in digit-lexicographic order."""
        p = self.prime
        step = [PAdicPoint(d, -self.gamma, p) for d in range(p)]
        return [
            Ball(tuple(c + s for c, s in zip(self.center, combo)), self.gamma - 1)
            for combo in itertools.product(step, repeat=self.dim)
        ]

    def split(self, gamma_target: int) -> list["Ball"]:
        return ball_split(self, gamma_target)

    def __repr__(self):
        c = ", ".join(str(x) for x in self.center)
        return f"Ball(gamma={self.gamma}, center=({c}), p={self.prime})"


def ball_canonicalize(center, gamma: int, p: int | None = None) -> Ball:
    """Ball of radius p**gamma around ``center`` with the canonical representative."""
    if p is None:
        if isinstance(center, PAdicPoint):
            p = center.prime
        else:
            p = center[0].prime
    center = vector(center, p) if not isinstance(center, tuple) else tuple(point(c, p) for c in center)
    return Ball(tuple(reduce_mod(c, -gamma) for c in center), gamma)


def ball_relation(b1: Ball, b2: Ball) -> str:
    """One of ``'equal'``, ``'contains'`` (b1 > b2), ``'inside'`` (b1 < b2), ``'disjoint'``."""
    if b1.dim != b2.dim or b1.prime != b2.prime:
        raise ValueError("balls live in different spaces")
    if b1.gamma == b2.gamma:
        return "equal" if b1 == b2 else "disjoint"
    if b1.gamma > b2.gamma:
        return "contains" if b2.ancestor(b1.gamma) == b1 else "disjoint"
    return "inside" if b1.ancestor(b2.gamma) == b2 else "disjoint"


def ball_split(b: Ball, gamma_target: int) -> list[Ball]:
    """Canonical covering of ``b`` by p**(n(gamma - gamma_target)) disjoint balls."""
    if gamma_target > b.gamma:
        raise ValueError("cannot split a ball into larger balls")
    p = b.prime
    width = b.gamma - gamma_target
    if width == 0:
        return [b]
    offsets = [
        PAdicPoint(d, -b.gamma, p) for d in range(p**width)
    ]
    return [
        Ball(tuple(c + o for c, o in zip(b.center, combo)), gamma_target)
        for combo in itertools.product(offsets, repeat=b.dim)
    ]


def _Ip_1d(p: int, gamma_max: int) -> list[PAdicPoint]:
    out = [PAdicPoint(0, 0, p)]
    for g in range(1, gamma_max + 1):
        out.extend(PAdicPoint(m, -g, p) for m in range(1, p**g) if m % p)
    return out


def enumerate_Ip(p: int, gamma_max: int, n: int = 1) -> list[tuple]:
    """All shifts a in I_p^n with |a|_p <= p**gamma_max.

    Ordered by (gamma, value) per coordinate, product order across coordinates.
    """
    if gamma_max < 0:
        raise ValueError("gamma_max must be >= 0")
    base = _Ip_1d(p, gamma_max)
    return [tuple(c) for c in itertools.product(base, repeat=n)]
