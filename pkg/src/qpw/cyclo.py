"""Exact scalars: cyclotomic numbers and symbolic prime powers.

:class:`CycloScalar` is an element of Q(zeta_N) stored sparsely on the power
basis ``zeta_N**k, 0 <= k < phi(N)``; that representation is unique for a
fixed ``N``, so zero-testing is exact.  Values of different orders are
compared after embedding both into the lcm order.

:class:`PowerScalar` carries ``c * p**w`` for a complex exponent ``w`` with
rational parts, the form taken by the fractional operator's eigenvalues.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "CycloScalar",
    "PowerScalar",
    "root_of_unity",
    "sqrt_prime",
    "prime_power_sqrt",
    "cos_turns",
    "sin_turns",
]


@lru_cache(maxsize=None)
def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _phi(n: int) -> int:
    r = n
    for q in _factor(n):
        r = r // q * (q - 1)
    return r


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den is monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    return out


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple[int, ...]:
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _polydiv_exact(poly, list(_cyclotomic(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction(n: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    """(phi(n), nonzero low-order coefficients of Phi_n)."""
    poly = _cyclotomic(n)
    deg = len(poly) - 1
    return deg, tuple((i, c) for i, c in enumerate(poly[:-1]) if c)


def _reduce(n: int, d: dict[int, Fraction]) -> dict[int, Fraction]:
    """Reduce a dict of exponents (already taken mod n) onto the power basis."""
    deg, low = _reduction(n)
    if d and max(d) >= deg:
        for e in range(n - 1, deg - 1, -1):
            c = d.pop(e, None)
            if not c:
                continue
            base = e - deg
            for i, a in low:
                k = base + i
                d[k] = d.get(k, 0) - c * a
    return {k: v for k, v in d.items() if v}


class CycloScalar:
    """An exact element of the cyclotomic field Q(zeta_order)."""

    __slots__ = ("order", "terms")

    def __init__(self, order: int, terms: dict[int, Fraction] | None = None, *, _reduced=False):
        if order < 1:
            raise ValueError("order must be positive")
        if order == 2:
            # Q(zeta_2) = Q
            terms = {0: sum((v if k % 2 == 0 else -v) for k, v in (terms or {}).items())}
            order = 1
            _reduced = False
        if order == 1:
            total = sum((terms or {}).values(), Fraction(0))
            self.order = 1
            self.terms = {0: Fraction(total)} if total else {}
            return
        if not _reduced:
            raw: dict[int, Fraction] = {}
            for k, v in (terms or {}).items():
                if v:
                    k %= order
                    raw[k] = raw.get(k, 0) + Fraction(v)
            terms = _reduce(order, raw)
        self.order = order
        self.terms = terms
        self._demote()

    # -- constructors -------------------------------------------------
    @classmethod
    def rational(cls, q) -> "CycloScalar":
        return cls(1, {0: Fraction(q)})

    @classmethod
    def zeta(cls, order: int, k: int = 1) -> "CycloScalar":
        return cls(order, {k % order: Fraction(1)})

    @classmethod
    def zero(cls) -> "CycloScalar":
        return cls(1, {})

    @classmethod
    def one(cls) -> "CycloScalar":
        return cls(1, {0: Fraction(1)})

    # -- order management ---------------------------------------------
    def _demote(self):
        # best-effort shrink to a subfield order; equality never relies on it
        changed = True
        while changed and self.order > 1:
            changed = False
            n = self.order
            for q, e in _factor(n).items():
                if e >= 2 and all(k % q == 0 for k in self.terms):
                    self.terms = {k // q: v for k, v in self.terms.items()}
                    self.order = n // q
                    changed = True
                    break
                if e == 1 and n == q and all(k == 0 for k in self.terms):
                    self.order = 1
                    changed = True
                    break
            if self.order % 4 == 2:
                # zeta_{2m} = -zeta_m**((m+1)/2) for odd m
                m = self.order // 2
                h = (m + 1) // 2
                raw: dict[int, Fraction] = {}
                for k, v in self.terms.items():
                    kk = (k * h) % m
                    raw[kk] = raw.get(kk, 0) + (v if k % 2 == 0 else -v)
                if m == 1:
                    total = sum(raw.values(), Fraction(0))
                    self.order, self.terms = 1, ({0: total} if total else {})
                else:
                    self.order, self.terms = m, _reduce(m, raw)
                changed = True

    def promote(self, order: int) -> "CycloScalar":
        """Embed into Q(zeta_order); ``self.order`` must divide ``order``."""
        if order % self.order:
            raise ValueError(f"order {self.order} does not divide {order}")
        if order == self.order:
            return self
        f = order // self.order
        raw = {(k * f) % order: v for k, v in self.terms.items()}
        obj = object.__new__(CycloScalar)
        obj.order = order
        obj.terms = _reduce(order, raw)
        return obj

    def _aligned(self, other: "CycloScalar") -> tuple[int, dict, dict]:
        if self.order == other.order:
            return self.order, self.terms, other.terms
        n = math.lcm(self.order, other.order)
        return n, self.promote(n).terms, other.promote(n).terms

    @staticmethod
    def _coerce(x) -> "CycloScalar":
        if isinstance(x, CycloScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return CycloScalar.rational(x)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        n, a, b = self._aligned(other)
        d = dict(a)
        for k, v in b.items():
            d[k] = d.get(k, 0) + v
        return CycloScalar(n, {k: v for k, v in d.items() if v}, _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return CycloScalar(self.order, {k: -v for k, v in self.terms.items()}, _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return CycloScalar.zero()
            return CycloScalar(self.order, {k: v * other for k, v in self.terms.items()}, _reduced=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return CycloScalar.zero()
        if self.order == 1:
            return other * self.terms[0]
        if other.order == 1:
            return self * other.terms[0]
        n, a, b = self._aligned(other)
        d: dict[int, Fraction] = {}
        for k1, v1 in a.items():
            for k2, v2 in b.items():
                k = (k1 + k2) % n
                d[k] = d.get(k, 0) + v1 * v2
        return CycloScalar(n, {k: v for k, v in d.items() if v}, _reduced=False)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = CycloScalar.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "CycloScalar":
        n = self.order
        if n == 1:
            return self
        return CycloScalar(n, {(-k) % n: v for k, v in self.terms.items()})

    def galois(self, a: int) -> "CycloScalar":
        """Apply the automorphism zeta -> zeta**a (gcd(a, order) == 1)."""
        n = self.order
        if math.gcd(a, n) != 1:
            raise ValueError("not an automorphism")
        return CycloScalar(n, {(a * k) % n: v for k, v in self.terms.items()})

    def inv(self) -> "CycloScalar":
        """Multiplicative inverse via the norm: x * prod(sigma(x)) is rational."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.order == 1:
            return CycloScalar.rational(1 / self.terms[0])
        n = self.order
        others = CycloScalar.one()
        for a in range(2, n):
            if math.gcd(a, n) == 1:
                others = others * self.galois(a)
        nrm = self * others
        if nrm.order != 1:
            raise ArithmeticError("norm did not land in Q")  # pragma: no cover
        return others * (1 / nrm.terms[0])

    def abs2(self) -> "CycloScalar":
        return self * self.conj()

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return self.order == 1

    def to_fraction(self) -> Fraction:
        if self.order != 1:
            raise ValueError(f"{self!r} is not known to be rational")
        return self.terms.get(0, Fraction(0))

    def is_real(self) -> bool:
        return self == self.conj()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        _, a, b = self._aligned(other)
        return a == b

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def to_complex(self) -> complex:
        n = self.order
        if n == 1:
            return complex(self.terms.get(0, 0))
        return sum(
            (float(v) * cmath.exp(2j * math.pi * k / n) for k, v in self.terms.items()),
            0j,
        )

    def to_float(self) -> tuple[float, float]:
        z = self.to_complex()
        return (z.real, z.imag)

    # -- serialisation ------------------------------------------------
    def to_json(self) -> dict:
        size = 1 if self.order == 1 else _phi(self.order)
        coeffs = [self.terms.get(k, Fraction(0)) for k in range(size)]
        return {"order": self.order, "coeffs": [f"{c.numerator}/{c.denominator}" for c in coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "CycloScalar":
        order = int(data["order"])
        coeffs = [Fraction(c) for c in data["coeffs"]]
        size = 1 if order == 1 else _phi(order)
        if len(coeffs) != size:
            raise ValueError(f"expected {size} coefficients for order {order}")
        obj = object.__new__(cls)
        obj.order = order
        obj.terms = {k: c for k, c in enumerate(coeffs) if c}
        return obj

    def __repr__(self):
        if self.order == 1:
            return f"CycloScalar({self.terms.get(0, 0)})"
        parts = " + ".join(f"{v}*z{self.order}^{k}" for k, v in sorted(self.terms.items()))
        return f"CycloScalar({parts or 0})"


def root_of_unity(angle, p: int | None = None) -> CycloScalar:
    """exp(2 pi i * angle) for a rational angle; with ``p`` the denominator must be a p-power."""
    a = Fraction(angle)
    a -= math.floor(a)
    den = a.denominator
    if p is not None:
        d = den
        while d % p == 0:
            d //= p
        if d != 1:
            raise ValueError(f"denominator of {a} is not a power of {p}")
    return CycloScalar.zeta(den, a.numerator)


def cos_turns(t) -> CycloScalar:
    """cos(2 pi t) for rational ``t``."""
    z = root_of_unity(t)
    return (z + z.conj()) * Fraction(1, 2)


def sin_turns(t) -> CycloScalar:
    """sin(2 pi t) for rational ``t``."""
    z = root_of_unity(t)
    minus_i_half = CycloScalar.zeta(4, 3) * Fraction(1, 2)
    return (z - z.conj()) * minus_i_half


def _legendre(a: int, p: int) -> int:
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


@lru_cache(maxsize=None)
def sqrt_prime(p: int) -> CycloScalar:
    """The positive square root of the prime ``p`` as a cyclotomic number.

    p = 2 uses zeta_8 + zeta_8**-1.  Odd p goes through the quadratic Gauss
    sum g (g**2 = +-p), with a factor of -i when p = 3 mod 4.
    """
    if p == 2:
        z = CycloScalar.zeta(8)
        return z + z.conj()
    g = CycloScalar(p, {a: Fraction(_legendre(a, p)) for a in range(1, p)})
    if p % 4 == 1:
        return g
    return g * CycloScalar.zeta(4, 3)


def prime_power_sqrt(p: int, k: int) -> CycloScalar:
    """p**(k/2) exactly."""
    if k % 2 == 0:
        return CycloScalar.rational(Fraction(p) ** (k // 2))
    return sqrt_prime(p) * (Fraction(p) ** ((k - 1) // 2))


class PowerScalar:
    """The formal product ``c * p**w`` with ``w = w_re + i*w_im`` rational.

    Normalised so ``0 <= w_re < 1/2``: integer and half-integer parts of the
    exponent are folded into ``c`` (p**(1/2) is cyclotomic).  Equality is
    componentwise after normalisation, which never reports equal values as
    different unless an irrational power of p happens to be cyclotomic.
    """

    __slots__ = ("c", "w_re", "w_im", "prime")

    def __init__(self, c, w=0, prime: int = 2):
        c = CycloScalar._coerce(c)
        if isinstance(w, tuple):
            w_re, w_im = (Fraction(w[0]), Fraction(w[1]))
        elif isinstance(w, complex):
            w_re, w_im = Fraction(w.real), Fraction(w.imag)
        else:
            w_re, w_im = Fraction(w), Fraction(0)
        if c.is_zero():
            w_re = w_im = Fraction(0)
        else:
            halves = math.floor(2 * w_re)
            if halves:
                c = c * prime_power_sqrt(prime, halves)
                w_re -= Fraction(halves, 2)
        self.c = c
        self.w_re = w_re
        self.w_im = w_im
        self.prime = prime

    @property
    def exponent(self) -> tuple[Fraction, Fraction]:
        return (self.w_re, self.w_im)

    @classmethod
    def from_exponent(cls, w, prime: int) -> "PowerScalar":
        return cls(CycloScalar.one(), w, prime)

    def is_zero(self) -> bool:
        return self.c.is_zero()

    def __mul__(self, other):
        if isinstance(other, PowerScalar):
            if other.prime != self.prime:
                raise ValueError("mixed primes")
            return PowerScalar(
                self.c * other.c,
                (self.w_re + other.w_re, self.w_im + other.w_im),
                self.prime,
            )
        if isinstance(other, (CycloScalar, int, Fraction)):
            return PowerScalar(self.c * other, (self.w_re, self.w_im), self.prime)
        return NotImplemented

    __rmul__ = __mul__

    def inv(self) -> "PowerScalar":
        return PowerScalar(self.c.inv(), (-self.w_re, -self.w_im), self.prime)

    def __truediv__(self, other):
        if isinstance(other, PowerScalar):
            return self * other.inv()
        return PowerScalar(self.c / other, (self.w_re, self.w_im), self.prime)

    def __add__(self, other):
        if not isinstance(other, PowerScalar):
            other = PowerScalar(other, 0, self.prime)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if (self.w_re, self.w_im) != (other.w_re, other.w_im):
            raise ValueError("cannot add powers with different exponents exactly")
        return PowerScalar(self.c + other.c, (self.w_re, self.w_im), self.prime)

    def __neg__(self):
        return PowerScalar(-self.c, (self.w_re, self.w_im), self.prime)

    def __eq__(self, other):
        if isinstance(other, (CycloScalar, int, Fraction)):
            other = PowerScalar(other, 0, self.prime)
        if not isinstance(other, PowerScalar):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return (
            self.prime == other.prime
            and self.w_re == other.w_re
            and self.w_im == other.w_im
            and self.c == other.c
        )

    __hash__ = None

    def to_complex(self) -> complex:
        w = complex(float(self.w_re), float(self.w_im))
        return self.c.to_complex() * cmath.exp(w * math.log(self.prime))

    def to_float(self) -> tuple[float, float]:
        z = self.to_complex()
        return (z.real, z.imag)

    def to_json(self) -> dict:
        return {
            "c": self.c.to_json(),
            "w": [str(self.w_re), str(self.w_im)],
            "p": self.prime,
        }

    @classmethod
    def from_json(cls, data: dict) -> "PowerScalar":
        return cls(CycloScalar.from_json(data["c"]), (Fraction(data["w"][0]), Fraction(data["w"][1])), int(data["p"]))

    def __repr__(self):
        return f"PowerScalar({self.c!r} * {self.prime}^({self.w_re}+{self.w_im}i))"
