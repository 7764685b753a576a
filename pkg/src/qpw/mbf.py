"""Modulated ball functions.

An MBF is a finite sum ``sum_i c_i * chi_p(s_i . x) * 1_{B_i}(x)`` on Q_p^n.
The class is closed under the algebra operations, affine changes of
variable and the Fourier transform, and every value in sight is exact.

Canonical form
--------------
Internally an MBF is a map ``Ball -> {freq: coef}`` where

* the balls are the maximal balls contained in the support, so they are
  pairwise disjoint and determined by the function;
* on a ball ``B_gamma(c)`` each frequency is reduced modulo ``p**gamma Z_p``
  (characters that agree on the ball are identified; the constant left over
  is folded into the coefficient);
* no coefficient is zero.

Distinct characters are linearly independent on a ball, so two MBFs are the
same function exactly when their canonical maps coincide.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cyclo import CycloScalar, PowerScalar, root_of_unity
from .padic import Ball, PAdicPoint, ball_canonicalize, character, point, reduce_mod, valuation

__all__ = [
    "Term",
    "MBF",
    "PowerMBF",
    "canonicalize",
    "evaluate",
    "integral",
    "inner_product",
    "fourier",
    "inverse_fourier",
    "is_lizorkin",
    "local_constancy_params",
    "translate",
    "dilate",
    "modulate",
    "affine",
    "tensor",
]

Freq = tuple  # tuple[PAdicPoint, ...]


@dataclass(frozen=True)
class Term:
    """One summand ``coef * chi_p(freq . x) * 1_ball(x)``."""

    coef: CycloScalar
    freq: Freq
    ball: Ball


def _chi(angle: Fraction) -> CycloScalar:
    return root_of_unity(angle)


def _dot_angle(s: Freq, x: Sequence[PAdicPoint]) -> Fraction:
    return character(s, x)


def _zero_vec(p: int, n: int) -> Freq:
    z = PAdicPoint(0, 0, p)
    return (z,) * n


def _canon_freq(freq: Freq, ball: Ball) -> tuple[Freq, Fraction]:
    """Reduce ``freq`` modulo p**gamma; return it with the angle of the leftover constant."""
    g = ball.gamma
    r = tuple(reduce_mod(s, g) for s in freq)
    if r == freq:
        return r, Fraction(0)
    diff = tuple(s - rr for s, rr in zip(freq, r))
    return r, _dot_angle(diff, ball.center)


def _accumulate(pieces: dict, ball: Ball, freq: Freq, coef: CycloScalar) -> None:
    slot = pieces.setdefault(ball, {})
    if freq in slot:
        slot[freq] = slot[freq] + coef
    else:
        slot[freq] = coef


def _prune(pieces: dict) -> dict:
    out = {}
    for b, fs in pieces.items():
        kept = {r: c for r, c in fs.items() if not c.is_zero()}
        if kept:
            out[b] = kept
    return out


def _push_to_children(ball: Ball, fs: dict) -> list[tuple[Ball, dict]]:
    """Restrict a ball's expansion to its p**n children."""
    out = []
    for child in ball.children():
        cf: dict = {}
        for r, c in fs.items():
            r2, ang = _canon_freq(r, child)
            c2 = c * _chi(ang) if ang else c
            cf[r2] = cf[r2] + c2 if r2 in cf else c2
        out.append((child, cf))
    return out


def _disjointify(pieces: dict) -> dict:
    balls = list(pieces)
    if len(balls) <= 1:
        return pieces
    gmax = max(b.gamma for b in balls)
    strict_ancestors = set()
    for b in balls:
        for g in range(b.gamma + 1, gmax + 1):
            strict_ancestors.add(b.ancestor(g))
    if not any(b in strict_ancestors for b in balls):
        return pieces
    out: dict = {}
    work = list(pieces.items())
    while work:
        b, fs = work.pop()
        if b in strict_ancestors:
            work.extend(_push_to_children(b, fs))
        else:
            for r, c in fs.items():
                _accumulate(out, b, r, c)
    return out


def _split_to_support(pieces: dict) -> dict:
    """Split multi-frequency balls until each piece carries a single character."""
    out: dict = {}
    work = list(pieces.items())
    while work:
        b, fs = work.pop()
        fs = {r: c for r, c in fs.items() if not c.is_zero()}
        if not fs:
            continue
        if len(fs) == 1:
            out[b] = fs
        else:
            work.extend(_push_to_children(b, fs))
    return out


def _merge_up(pieces: dict, p: int, n: int) -> dict:
    """Merge complete sibling families into their parent, bottom-up."""
    if not pieces:
        return pieces
    full = p**n
    by_level: dict[int, dict] = {}
    for b, fs in pieces.items():
        by_level.setdefault(b.gamma, {})[b] = fs
    out: dict = {}
    g = min(by_level)
    top = max(by_level)
    inv_count = Fraction(1, full)
    while g in by_level or g <= top:
        level = by_level.pop(g, {})
        families: dict[Ball, list] = {}
        for b in level:
            families.setdefault(b.ancestor(g + 1), []).append(b)
        for parent, kids in families.items():
            if len(kids) < full:
                for k in kids:
                    out[k] = level[k]
                continue
            # 1_child(x) = p^-n sum_t chi(t.(x - c_child)),  t in p^(g) {0..p-1}^n
            digits = [PAdicPoint(d, g, p) for d in range(p)]
            merged: dict = {}
            for k in kids:
                for r, c in level[k].items():
                    for t in itertools.product(digits, repeat=n):
                        shift = _dot_angle(t, k.center)
                        coef = c * inv_count
                        if shift:
                            coef = coef * _chi(-shift)
                        f = tuple(ri + ti for ri, ti in zip(r, t))
                        f2, ang = _canon_freq(f, parent)
                        if ang:
                            coef = coef * _chi(ang)
                        merged[f2] = merged[f2] + coef if f2 in merged else coef
            merged = {r: c for r, c in merged.items() if not c.is_zero()}
            by_level.setdefault(g + 1, {})[parent] = merged
            top = max(top, g + 1)
        g += 1
    return out


def _canonical_pieces(raw: Iterable[tuple[Ball, Freq, CycloScalar]], p: int, n: int) -> dict:
    pieces: dict = {}
    for ball, freq, coef in raw:
        if coef.is_zero():
            continue
        r, ang = _canon_freq(freq, ball)
        _accumulate(pieces, ball, r, coef * _chi(ang) if ang else coef)
    pieces = _prune(pieces)
    pieces = _disjointify(pieces)
    pieces = _split_to_support(pieces)
    return _merge_up(pieces, p, n)


def _frac_key(v: Sequence[PAdicPoint]) -> tuple:
    return tuple(c.to_fraction() for c in v)


class MBF:
    """A modulated ball function on Q_p^n, always held in canonical form."""

    __slots__ = ("prime", "dim", "_pieces")

    def __init__(self, prime: int, dim: int, terms: Iterable = ()):
        self.prime = prime
        self.dim = dim
        raw = []
        for t in terms:
            if isinstance(t, Term):
                ball, freq, coef = t.ball, t.freq, t.coef
            else:
                coef, freq, ball = t
            coef = CycloScalar._coerce(coef)
            freq = tuple(point(s, prime) for s in freq) if not isinstance(freq, PAdicPoint) else (freq,)
            if len(freq) != dim or ball.dim != dim or ball.prime != prime:
                raise ValueError("term does not match the MBF's prime/dimension")
            raw.append((ball, freq, coef))
        self._pieces = _canonical_pieces(raw, prime, dim)

    @classmethod
    def _from_pieces(cls, prime: int, dim: int, pieces: dict) -> "MBF":
        obj = object.__new__(cls)
        obj.prime = prime
        obj.dim = dim
        obj._pieces = pieces
        return obj

    @classmethod
    def zero(cls, prime: int, dim: int = 1) -> "MBF":
        return cls._from_pieces(prime, dim, {})

    @classmethod
    def indicator(cls, ball: Ball, coef=1, freq=None) -> "MBF":
        p, n = ball.prime, ball.dim
        if freq is None:
            freq = _zero_vec(p, n)
        return cls(p, n, [(coef, freq, ball)])

    # -- structure ----------------------------------------------------
    @property
    def terms(self) -> list[Term]:
        out = []
        for b in sorted(self._pieces, key=lambda b: (_frac_key(b.center), b.gamma)):
            fs = self._pieces[b]
            for r in sorted(fs, key=_frac_key):
                out.append(Term(fs[r], r, b))
        return out

    @property
    def balls(self) -> list[Ball]:
        return sorted(self._pieces, key=lambda b: (_frac_key(b.center), b.gamma))

    def pieces(self) -> dict:
        """Copy of the canonical ``Ball -> {freq: coef}`` map."""
        return {b: dict(fs) for b, fs in self._pieces.items()}

    def is_zero(self) -> bool:
        return not self._pieces

    def __len__(self):
        return sum(len(fs) for fs in self._pieces.values())

    def _check(self, other: "MBF"):
        if not isinstance(other, MBF):
            raise TypeError(f"expected MBF, got {type(other).__name__}")
        if other.prime != self.prime or other.dim != self.dim:
            raise ValueError("MBFs live on different spaces")

    def __eq__(self, other):
        if not isinstance(other, MBF):
            return NotImplemented
        if (self.prime, self.dim) != (other.prime, other.dim):
            return False
        if self._pieces.keys() != other._pieces.keys():
            return False
        for b, fs in self._pieces.items():
            gs = other._pieces[b]
            if fs.keys() != gs.keys():
                return False
            if any(fs[r] != gs[r] for r in fs):
                return False
        return True

    __hash__ = None

    # -- algebra ------------------------------------------------------
    def _raw(self):
        for b, fs in self._pieces.items():
            for r, c in fs.items():
                yield b, r, c

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        if not other._pieces:
            return self
        if not self._pieces:
            return other
        raw = list(self._raw()) + list(other._raw())
        return MBF._from_pieces(self.prime, self.dim, _canonical_pieces(raw, self.prime, self.dim))

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        self._check(other)
        return self + (-other)

    def scale(self, c) -> "MBF":
        c = CycloScalar._coerce(c)
        if c.is_zero():
            return MBF.zero(self.prime, self.dim)
        pieces = {b: {r: v * c for r, v in fs.items()} for b, fs in self._pieces.items()}
        return MBF._from_pieces(self.prime, self.dim, pieces)

    def __mul__(self, other):
        if isinstance(other, MBF):
            return pointwise_mul(self, other)
        if isinstance(other, (CycloScalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (CycloScalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def conjugate(self) -> "MBF":
        # conj(c chi(r x)) = conj(c) chi(-r x); -r is re-reduced on the same ball
        raw = [(b, tuple(-s for s in r), c.conj()) for b, r, c in self._raw()]
        pieces: dict = {}
        for b, r, c in raw:
            r2, ang = _canon_freq(r, b)
            pieces.setdefault(b, {})[r2] = c * _chi(ang) if ang else c
        return MBF._from_pieces(self.prime, self.dim, pieces)

    def __call__(self, x) -> CycloScalar:
        return evaluate(self, x)

    # -- serialisation ------------------------------------------------
    def to_json(self) -> dict:
        def fr(v: PAdicPoint) -> str:
            q = v.to_fraction()
            return f"{q.numerator}/{q.denominator}"

        return {
            "p": self.prime,
            "n": self.dim,
            "terms": [
                {
                    "coef": t.coef.to_json(),
                    "freq": [fr(s) for s in t.freq],
                    "ball": {"center": [fr(c) for c in t.ball.center], "gamma": t.ball.gamma},
                }
                for t in self.terms
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MBF":
        p, n = int(data["p"]), int(data["n"])
        terms = []
        for t in data["terms"]:
            ball = ball_canonicalize(tuple(point(Fraction(c), p) for c in t["ball"]["center"]), int(t["ball"]["gamma"]), p)
            freq = tuple(point(Fraction(s), p) for s in t["freq"])
            terms.append((CycloScalar.from_json(t["coef"]), freq, ball))
        return cls(p, n, terms)

    def __repr__(self):
        if not self._pieces:
            return f"MBF(p={self.prime}, n={self.dim}, 0)"
        body = " + ".join(
            f"({t.coef.to_complex():.4g})chi({','.join(str(s) for s in t.freq)}.x)1[{t.ball}]" for t in self.terms
        )
        return f"MBF(p={self.prime}, n={self.dim}, {body})"


def canonicalize(f: MBF) -> MBF:
    """MBFs are canonical on construction; rebuilding from terms is idempotent."""
    return MBF(f.prime, f.dim, f.terms)


def evaluate(f: MBF, x) -> CycloScalar:
    x = tuple(point(v, f.prime) for v in x) if not isinstance(x, PAdicPoint) else (x,)
    if len(x) != f.dim:
        raise ValueError("dimension mismatch")
    for b, fs in f._pieces.items():
        if b.contains_point(x):
            total = CycloScalar.zero()
            for r, c in fs.items():
                total = total + c * _chi(_dot_angle(r, x))
            return total
    return CycloScalar.zero()


def _intersect(b1: Ball, b2: Ball) -> Ball | None:
    if b1.gamma <= b2.gamma:
        small, big = b1, b2
    else:
        small, big = b2, b1
    return small if small.ancestor(big.gamma) == big else None


def pointwise_mul(f: MBF, g: MBF) -> MBF:
    f._check(g)
    raw = []
    for b1, r1, c1 in f._raw():
        for b2, r2, c2 in g._raw():
            b = _intersect(b1, b2)
            if b is not None:
                raw.append((b, tuple(u + v for u, v in zip(r1, r2)), c1 * c2))
    return MBF._from_pieces(f.prime, f.dim, _canonical_pieces(raw, f.prime, f.dim))


def _term_integral(ball: Ball, freq: Freq, coef: CycloScalar) -> CycloScalar:
    if any(valuation(s) < ball.gamma for s in freq):
        return CycloScalar.zero()
    ang = _dot_angle(freq, ball.center)
    return coef * _chi(ang) * ball.measure if ang else coef * ball.measure


def integral(f: MBF) -> CycloScalar:
    """Integral against Haar measure normalised so that Z_p^n has measure 1."""
    total = CycloScalar.zero()
    for b, fs in f._pieces.items():
        zero = _zero_vec(f.prime, f.dim)
        if zero in fs:
            total = total + fs[zero] * b.measure
    return total


def inner_product(f: MBF, g: MBF) -> CycloScalar:
    """<f, g> = integral of f * conj(g), computed per intersecting pair of balls."""
    f._check(g)
    if len(g._pieces) > len(f._pieces):
        return inner_product(g, f).conj()
    total = CycloScalar.zero()
    index = _BallIndex(f._pieces)
    for b2, gs in g._pieces.items():
        gconj = None
        for b1 in index.meeting(b2):
            fs = f._pieces[b1]
            b = b1 if b1.gamma <= b2.gamma else b2
            for r1, c1 in fs.items():
                for r2, c2 in gs.items():
                    # the character integrates to zero unless r1 = r2 mod p^gamma
                    if any(reduce_mod(u, b.gamma) != reduce_mod(v, b.gamma) for u, v in zip(r1, r2)):
                        continue
                    if gconj is None:
                        gconj = {r: c.conj() for r, c in gs.items()}
                    diff = tuple(u - v for u, v in zip(r1, r2))
                    total = total + _term_integral(b, diff, c1 * gconj[r2])
    return total


class _BallIndex:
    """Finds, among disjoint balls, those meeting a query ball."""

    def __init__(self, balls):
        self.by_level: dict[int, set] = {}
        for b in balls:
            self.by_level.setdefault(b.gamma, set()).add(b)
        self._anc: dict[tuple, dict] = {}

    def _ancestors(self, level: int, gamma: int) -> dict:
        key = (level, gamma)
        if key not in self._anc:
            m: dict = {}
            for b in self.by_level[level]:
                m.setdefault(b.ancestor(gamma), []).append(b)
            self._anc[key] = m
        return self._anc[key]

    def meeting(self, q: Ball) -> list[Ball]:
        out = []
        for level, balls in self.by_level.items():
            if level >= q.gamma:
                a = q.ancestor(level)
                if a in balls:
                    out.append(a)
            else:
                out.extend(self._ancestors(level, q.gamma).get(q, ()))
        return out


def fourier(f: MBF) -> MBF:
    """F[f](xi) = integral of chi_p(xi . x) f(x) dx."""
    p, n = f.prime, f.dim
    raw = []
    for b, r, c in f._raw():
        ang = _dot_angle(r, b.center)
        coef = c * b.measure
        if ang:
            coef = coef * _chi(ang)
        ball = ball_canonicalize(tuple(-s for s in r), -b.gamma, p)
        raw.append((ball, b.center, coef))
    return MBF._from_pieces(p, n, _canonical_pieces(raw, p, n))


def inverse_fourier(f: MBF) -> MBF:
    """F^-1[g](x) = integral of chi_p(-x . xi) g(xi) d xi."""
    p, n = f.prime, f.dim
    raw = []
    for b, r, c in f._raw():
        ang = _dot_angle(r, b.center)
        coef = c * b.measure
        if ang:
            coef = coef * _chi(ang)
        ball = ball_canonicalize(r, -b.gamma, p)
        raw.append((ball, tuple(-a for a in b.center), coef))
    return MBF._from_pieces(p, n, _canonical_pieces(raw, p, n))


def is_lizorkin(f: MBF) -> bool:
    return integral(f).is_zero()


def local_constancy_params(f: MBF) -> tuple[int, int]:
    """(l, N): f is constant on cosets of B_l and supported in B_N, l maximal, N minimal."""
    if f.is_zero():
        raise ValueError("the zero function has no constancy parameters")
    l_val = None
    n_val = None
    for b, fs in f._pieces.items():
        vc = valuation(b.center)
        nb = b.gamma if vc == math.inf else max(b.gamma, -vc)
        n_val = nb if n_val is None else max(n_val, nb)
        lb = b.gamma
        for r in fs:
            vr = valuation(r)
            if vr != math.inf:
                lb = min(lb, vr)
        l_val = lb if l_val is None else min(l_val, lb)
    return l_val, n_val


def _vec(b, p: int, n: int) -> Freq:
    if isinstance(b, (PAdicPoint, int, Fraction)):
        if n != 1:
            raise ValueError("a vector is required in dimension > 1")
        b = (b,)
    return tuple(point(v, p) for v in b)


def translate(f: MBF, b) -> MBF:
    """x -> f(x - b)."""
    p, n = f.prime, f.dim
    b = _vec(b, p, n)
    pieces: dict = {}
    for ball, r, c in f._raw():
        nb = ball_canonicalize(tuple(u + v for u, v in zip(ball.center, b)), ball.gamma, p)
        ang = _dot_angle(r, b)
        coef = c * _chi(-ang) if ang else c
        r2, ang2 = _canon_freq(r, nb)
        if ang2:
            coef = coef * _chi(ang2)
        pieces.setdefault(nb, {})[r2] = coef
    return MBF._from_pieces(p, n, pieces)


def dilate(f: MBF, j: int) -> MBF:
    """x -> f(p**j x)."""
    p, n = f.prime, f.dim
    pieces: dict = {}
    for ball, r, c in f._raw():
        nb = ball_canonicalize(tuple(a.shift(-j) for a in ball.center), ball.gamma + j, p)
        pieces.setdefault(nb, {})[tuple(s.shift(j) for s in r)] = c
    return MBF._from_pieces(p, n, pieces)


def modulate(f: MBF, s) -> MBF:
    """x -> chi_p(s . x) f(x)."""
    p, n = f.prime, f.dim
    s = _vec(s, p, n)
    raw = [(b, tuple(u + v for u, v in zip(r, s)), c) for b, r, c in f._raw()]
    return MBF._from_pieces(p, n, _canonical_pieces(raw, p, n))


def affine(f: MBF, k: int, b) -> MBF:
    """x -> f(p**k x - b)."""
    b = _vec(b, f.prime, f.dim)
    return translate(dilate(f, k), tuple(v.shift(-k) for v in b))


def tensor(f: MBF, g: MBF) -> MBF:
    """(x, y) -> f(x) g(y) on Q_p^(n+m)."""
    if f.prime != g.prime:
        raise ValueError("mixed primes")
    p = f.prime
    raw = []
    for b1, r1, c1 in f._raw():
        for b2, r2, c2 in g._raw():
            gam = min(b1.gamma, b2.gamma)
            for s1 in b1.split(gam):
                for s2 in b2.split(gam):
                    raw.append((Ball(s1.center + s2.center, gam), r1 + r2, c1 * c2))
    return MBF._from_pieces(p, f.dim + g.dim, _canonical_pieces(raw, p, f.dim + g.dim))


class PowerMBF:
    """A finite sum ``sum_w p**w * f_w`` with MBFs ``f_w`` and complex exponents ``w``.

    Exponents are normalised as in :class:`PowerScalar`, so equal values with
    the same formal exponents compare equal.
    """

    __slots__ = ("prime", "dim", "parts")

    def __init__(self, prime: int, dim: int, parts: dict | None = None):
        self.prime = prime
        self.dim = dim
        self.parts: dict = {}
        for w, f in (parts or {}).items():
            self._add_part(w, f)

    def _add_part(self, w, f: MBF):
        norm = PowerScalar(CycloScalar.one(), w, self.prime)
        key = norm.exponent
        if norm.c != 1:
            f = f.scale(norm.c)
        cur = self.parts.get(key)
        f = f if cur is None else cur + f
        if f.is_zero():
            self.parts.pop(key, None)
        else:
            self.parts[key] = f

    @classmethod
    def from_mbf(cls, f: MBF) -> "PowerMBF":
        return cls(f.prime, f.dim, {(Fraction(0), Fraction(0)): f})

    def scale(self, c) -> "PowerMBF":
        if not isinstance(c, PowerScalar):
            c = PowerScalar(c, 0, self.prime)
        out = PowerMBF(self.prime, self.dim)
        for (wr, wi), f in self.parts.items():
            out._add_part((wr + c.w_re, wi + c.w_im), f.scale(c.c))
        return out

    def __add__(self, other: "PowerMBF") -> "PowerMBF":
        out = PowerMBF(self.prime, self.dim, self.parts)
        for w, f in other.parts.items():
            out._add_part(w, f)
        return out

    def is_zero(self) -> bool:
        return not self.parts

    def to_mbf(self) -> MBF:
        """The underlying MBF when every exponent is 0."""
        if not self.parts:
            return MBF.zero(self.prime, self.dim)
        if set(self.parts) != {(Fraction(0), Fraction(0))}:
            raise ValueError("value carries an irrational power of p")
        return self.parts[(Fraction(0), Fraction(0))]

    def __eq__(self, other):
        if isinstance(other, MBF):
            other = PowerMBF.from_mbf(other)
        if not isinstance(other, PowerMBF):
            return NotImplemented
        return self.parts.keys() == other.parts.keys() and all(self.parts[w] == other.parts[w] for w in self.parts)

    __hash__ = None

    def evaluate_float(self, x) -> complex:
        total = 0j
        for (wr, wi), f in self.parts.items():
            total += PowerScalar(evaluate(f, x), (wr, wi), self.prime).to_complex()
        return total

    def to_json(self) -> dict:
        return {
            "p": self.prime,
            "n": self.dim,
            "parts": [
                {"w": [str(wr), str(wi)], "mbf": f.to_json()}
                for (wr, wi), f in sorted(self.parts.items())
            ],
        }

    def __repr__(self):
        return f"PowerMBF({self.parts!r})"
