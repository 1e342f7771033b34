"""Truncated Laurent q-series over Z, Q or Z/p, and the concrete families
built from them: eta quotients, Eisenstein series, the Jacobi theta
function, the theta operator and character twists.

A :class:`LaurentSeries` stores the coefficients of ``q^offset`` up to
(but excluding) ``q^prec``.  Every operation works out the precision it
can actually guarantee; nothing is silently padded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterable, Sequence

from . import _mul
from .arith import QuadraticChar, bernoulli, char_eval, divisor_sigma_table, is_prime
from .errors import FractionalExponent, NonUnitLeading, NotPIntegral, RingMismatch


@dataclass(frozen=True)
class Ring:
    """Coefficient ring tag: ``ZZ``, ``QQ`` or ``GF`` (with prime ``p``)."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("ZZ", "QQ", "GF"):
            raise ValueError(f"unknown ring {self.kind!r}")
        if self.kind == "GF" and not is_prime(self.p or 0):
            raise ValueError(f"GF needs a prime modulus, got {self.p}")

    def __str__(self):
        return f"GF({self.p})" if self.kind == "GF" else self.kind

    @classmethod
    def parse(cls, text: str) -> "Ring":
        if text in ("ZZ", "QQ"):
            return cls(text)
        if text.startswith("GF(") and text.endswith(")"):
            return cls("GF", int(text[3:-1]))
        raise ValueError(f"cannot parse ring {text!r}")

    def coerce(self, x):
        if self.kind == "ZZ":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"{x} is not an integer")
                return x.numerator
            return int(x)
        if self.kind == "QQ":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise NotPIntegral(f"{x} is not {self.p}-integral")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def normalize(self, xs):
        if self.kind == "GF":
            p = self.p
            return [x % p for x in xs]
        return list(xs)

    def zero(self):
        return Fraction(0) if self.kind == "QQ" else 0

    def is_unit(self, x) -> bool:
        if self.kind == "ZZ":
            return x in (1, -1)
        if self.kind == "QQ":
            return x != 0
        return x % self.p != 0

    def inverse(self, x):
        if self.kind == "ZZ":
            if x not in (1, -1):
                raise NonUnitLeading(f"{x} is not a unit in ZZ")
            return x
        if self.kind == "QQ":
            return 1 / Fraction(x)
        return pow(x, -1, self.p)


ZZ = Ring("ZZ")
QQ = Ring("QQ")


def GF(p: int) -> Ring:
    return Ring("GF", p)


class LaurentSeries:
    """A truncated series ``sum_{offset <= n < prec} c[n - offset] q^n``."""

    __slots__ = ("offset", "coeffs", "prec", "ring")

    def __init__(self, coeffs: Iterable, offset: int = 0, prec: int | None = None, ring: Ring = ZZ):
        coeffs = [ring.coerce(c) for c in coeffs]
        if prec is None:
            prec = offset + len(coeffs)
        if prec < offset:
            raise ValueError(f"precision {prec} lies below offset {offset}")
        length = prec - offset
        if len(coeffs) < length:
            coeffs.extend([ring.zero()] * (length - len(coeffs)))
        else:
            del coeffs[length:]
        self.offset = offset
        self.coeffs = coeffs
        self.prec = prec
        self.ring = ring

    @classmethod
    def _raw(cls, coeffs, offset, prec, ring):
        obj = cls.__new__(cls)
        obj.offset, obj.coeffs, obj.prec, obj.ring = offset, coeffs, prec, ring
        return obj

    @classmethod
    def monomial(cls, n: int, prec: int, c=1, ring: Ring = ZZ) -> "LaurentSeries":
        if n >= prec:
            return cls([], offset=prec, prec=prec, ring=ring)
        return cls([c], offset=n, prec=prec, ring=ring)

    @classmethod
    def from_dict(cls, terms: dict, prec: int, ring: Ring = ZZ) -> "LaurentSeries":
        if not terms:
            return cls([], offset=0, prec=prec, ring=ring)
        lo = min(terms)
        cs = [ring.zero()] * (prec - lo)
        for n, c in terms.items():
            if n < prec:
                cs[n - lo] = c
        return cls(cs, offset=lo, prec=prec, ring=ring)

    # -- access --------------------------------------------------------
    def __getitem__(self, n: int):
        if n >= self.prec:
            raise IndexError(f"coefficient of q^{n} is beyond precision {self.prec}")
        if n < self.offset:
            return self.ring.zero()
        return self.coeffs[n - self.offset]

    coeff = __getitem__

    def items(self):
        """(exponent, coefficient) pairs for every stored term."""
        return zip(range(self.offset, self.prec), self.coeffs)

    def nonzero(self):
        return {n: c for n, c in self.items() if c}

    def valuation(self) -> int | None:
        for n, c in self.items():
            if c:
                return n
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        shown = []
        for n, c in self.items():
            if c:
                shown.append(f"{c}*q^{n}")
            if len(shown) == 6:
                shown.append("...")
                break
        body = " + ".join(shown) if shown else "0"
        return f"LaurentSeries({body} + O(q^{self.prec}), {self.ring})"

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if self.ring != other.ring or self.prec != other.prec:
            return False
        lo = min(self.offset, other.offset)
        return all(self[n] == other[n] for n in range(lo, self.prec))

    __hash__ = None

    # -- structural ----------------------------------------------------
    def truncate(self, prec: int) -> "LaurentSeries":
        prec = min(prec, self.prec)
        if prec <= self.offset:
            return LaurentSeries._raw([], prec, prec, self.ring)
        return LaurentSeries._raw(self.coeffs[: prec - self.offset], self.offset, prec, self.ring)

    def trimmed(self) -> "LaurentSeries":
        """Same series with leading zero coefficients dropped."""
        v = self.valuation()
        if v is None:
            return LaurentSeries._raw([], self.prec, self.prec, self.ring)
        return LaurentSeries._raw(self.coeffs[v - self.offset :], v, self.prec, self.ring)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by q^k."""
        return LaurentSeries._raw(list(self.coeffs), self.offset + k, self.prec + k, self.ring)

    def subs_power(self, d: int) -> "LaurentSeries":
        """Substitute q -> q^d (d >= 1); precision scales by d."""
        if d < 1:
            raise ValueError("q -> q^d needs d >= 1")
        if d == 1:
            return self
        out = [self.ring.zero()] * (d * len(self.coeffs))
        out[::d] = self.coeffs
        prec = d * self.prec
        return LaurentSeries(out, offset=d * self.offset, prec=prec, ring=self.ring)

    def change_ring(self, ring: Ring) -> "LaurentSeries":
        return LaurentSeries(self.coeffs, self.offset, self.prec, ring)

    def reduce(self, p: int) -> "LaurentSeries":
        """Reduce coefficients mod p (raises NotPIntegral on p | denominator)."""
        return self.change_ring(GF(p))

    def to_integer(self) -> "LaurentSeries":
        return self.change_ring(ZZ)

    def congruent(self, other: "LaurentSeries", p: int) -> bool:
        """Coefficientwise congruence mod p below the shared precision."""
        a, b = self.reduce(p), other.reduce(p)
        prec = min(a.prec, b.prec)
        lo = min(a.offset, b.offset)
        return all(a[n] == b[n] for n in range(lo, prec))

    # -- ring operations -----------------------------------------------
    def _check(self, other):
        if not isinstance(other, LaurentSeries):
            return None
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            return self + LaurentSeries.monomial(0, self.prec, other, self.ring)
        self._check(other)
        prec = min(self.prec, other.prec)
        lo = min(self.offset, other.offset)
        if prec <= lo:
            return LaurentSeries._raw([], prec, prec, self.ring)
        out = [self[n] + other[n] for n in range(lo, prec)]
        return LaurentSeries._raw(self.ring.normalize(out), lo, prec, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries._raw(self.ring.normalize([-c for c in self.coeffs]), self.offset, self.prec, self.ring)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "LaurentSeries":
        c = self.ring.coerce(c)
        return LaurentSeries._raw(self.ring.normalize([c * x for x in self.coeffs]), self.offset, self.prec, self.ring)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        return mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        if e < 0:
            return invert(self) ** (-e)
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else mul(result, base)
            e >>= 1
            if e:
                base = mul(base, base)
        if result is None:
            v = self.valuation()
            return LaurentSeries([1], prec=self.prec - (self.prec if v is None else v), ring=self.ring)
        return result

    # -- serialization -------------------------------------------------
    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_dict(self) -> dict:
        return {
            "offset": self.offset,
            "precision": self.prec,
            "ring": str(self.ring),
            "coeffs": [str(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, text: str) -> "LaurentSeries":
        return cls.from_mapping(json.loads(text))

    @classmethod
    def from_mapping(cls, d: dict) -> "LaurentSeries":
        ring = Ring.parse(d["ring"])
        conv = Fraction if ring.kind == "QQ" else int
        return cls([conv(c) for c in d["coeffs"]], offset=d["offset"], prec=d["precision"], ring=ring)


def _kind(ring: Ring):
    return ring.kind, ring.p


def mul(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    """Exact product; precision min(N_f + v_g, N_g + v_f) with v the valuations."""
    if f.ring != g.ring:
        raise RingMismatch(f"{f.ring} vs {g.ring}")
    f, g = f.trimmed(), g.trimmed()
    prec = min(f.prec + g.offset, g.prec + f.offset)
    off = f.offset + g.offset
    n = prec - off
    if n <= 0:
        return LaurentSeries._raw([], prec, prec, f.ring)
    if f.is_zero() or g.is_zero():
        return LaurentSeries([], offset=off, prec=prec, ring=f.ring)
    kind, p = _kind(f.ring)
    return LaurentSeries._raw(_mul.convolve(f.coeffs, g.coeffs, n, kind, p), off, prec, f.ring)


def _power_series_inverse(a, n, ring):
    """Inverse of a power series with unit constant term, to n terms (Newton)."""
    kind, p = _kind(ring)
    inv0 = ring.inverse(a[0])
    b = [inv0]
    m = 1
    while m < n:
        m2 = min(2 * m, n)
        # b <- b + b (1 - a b)
        ab = _mul.convolve(a[:m2], b, m2, kind, p)
        e = [-x for x in ab[m:m2]]
        corr = _mul.convolve(b, e, m2 - m, kind, p)
        b = b + ring.normalize(corr)
        m = m2
    return ring.normalize(b[:n])


def invert(f: LaurentSeries, terms: int | None = None) -> LaurentSeries:
    """Multiplicative inverse q^-v (c + ...)^-1 at the full achievable precision.

    The leading (lowest nonzero) coefficient must be a unit of the ring.
    ``terms`` optionally caps the number of returned coefficients.
    """
    t = f.trimmed()
    if t.is_zero():
        raise NonUnitLeading("cannot invert a series with no known nonzero term")
    if not t.ring.is_unit(t.coeffs[0]):
        raise NonUnitLeading(f"leading coefficient {t.coeffs[0]} is not a unit in {t.ring}")
    rel = t.prec - t.offset
    if terms is not None:
        rel = min(rel, terms)
    coeffs = _power_series_inverse(t.coeffs, rel, t.ring)
    return LaurentSeries._raw(coeffs, -t.offset, -t.offset + rel, t.ring)


# --------------------------------------------------------------------------
# eta quotients


@dataclass(frozen=True)
class EtaQuotientSpec:
    """Formal product of eta(delta z)^r_delta, given as (delta, r) pairs."""

    factors: tuple

    def __init__(self, factors):
        merged: dict[int, int] = {}
        for d, r in (factors.items() if isinstance(factors, dict) else factors):
            if d < 1:
                raise ValueError(f"eta multiplier must be positive, got {d}")
            merged[d] = merged.get(d, 0) + r
        object.__setattr__(self, "factors", tuple(sorted((d, r) for d, r in merged.items() if r)))

    @property
    def order_24(self) -> int:
        """24 times the leading q-exponent."""
        return sum(d * r for d, r in self.factors)

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(r for _, r in self.factors), 2)

    def leading_exponent(self) -> int:
        s = self.order_24
        if s % 24:
            raise FractionalExponent(f"leading exponent {s}/24 is not an integer")
        return s // 24


@lru_cache(maxsize=None)
def _pentagonal(n: int) -> tuple:
    """Sparse (k, c) terms of prod_{m>=1} (1 - q^m) below q^n."""
    terms = [(0, 1)]
    j = 1
    while True:
        e1 = j * (3 * j - 1) // 2
        if e1 >= n:
            break
        s = -1 if j & 1 else 1
        terms.append((e1, s))
        e2 = j * (3 * j + 1) // 2
        if e2 < n:
            terms.append((e2, s))
        j += 1
    return tuple(sorted(terms))


@lru_cache(maxsize=64)
def euler_power(r: int, n: int) -> tuple:
    """Coefficients of prod_{m>=1} (1 - q^m)^r below q^n, for any integer r.

    Uses the power recurrence g_k = (1/k) sum_j ((r+1) j - k) f_j g_{k-j}
    on the sparse pentagonal series f, which is exact over Z.
    """
    if n <= 0:
        return ()
    f = [(j, c) for j, c in _pentagonal(n) if j]
    g = [0] * n
    g[0] = 1
    r1 = r + 1
    for k in range(1, n):
        s = 0
        for j, c in f:
            if j > k:
                break
            s += (r1 * j - k) * c * g[k - j]
        g[k] = s // k
    return tuple(g)


def eta_quotient(spec, N: int) -> LaurentSeries:
    """Integer q-expansion of an eta quotient, trusted below q^N."""
    if not isinstance(spec, EtaQuotientSpec):
        spec = EtaQuotientSpec(spec)
    v = spec.leading_exponent()
    rel = N - v
    if rel <= 0:
        return LaurentSeries([], offset=N, prec=N)
    result = None
    for d, r in spec.factors:
        m = (rel - 1) // d + 1
        part = LaurentSeries(euler_power(r, m), offset=0, prec=m).subs_power(d)
        result = part if result is None else mul(result, part)
    if result is None:
        result = LaurentSeries([1], prec=rel)
    return result.truncate(rel).shift(v)


# --------------------------------------------------------------------------
# Eisenstein series, theta functions, operators


def eisenstein(k: int, N: int) -> LaurentSeries:
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n over QQ, trusted below q^N."""
    if k < 4 or k % 2:
        raise ValueError(f"Eisenstein series needs even k >= 4, got {k}")
    c = Fraction(-2 * k) / bernoulli(k)
    sig = divisor_sigma_table(k - 1, N)
    coeffs = [Fraction(1)] + [c * s for s in sig[1:]]
    return LaurentSeries(coeffs, offset=0, prec=N, ring=QQ)


def jacobi_theta(N: int) -> LaurentSeries:
    """T(z) = 1 + 2 sum q^{n^2}, trusted below q^N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    cs = [0] * N
    cs[0] = 1
    for n in range(1, isqrt(N - 1) + 1):
        cs[n * n] = 2
    return LaurentSeries(cs, prec=N)


def theta_op(f: LaurentSeries) -> LaurentSeries:
    """q d/dq: multiplies the coefficient of q^n by n."""
    out = [n * c for n, c in f.items()]
    return LaurentSeries._raw(f.ring.normalize(out), f.offset, f.prec, f.ring)


def twist(f: LaurentSeries, chi: QuadraticChar) -> LaurentSeries:
    """Coefficientwise a(n) -> chi(n) a(n)."""
    out = [char_eval(chi, n) * c for n, c in f.items()]
    return LaurentSeries._raw(f.ring.normalize(out), f.offset, f.prec, f.ring)


@dataclass(frozen=True)
class FormMeta:
    """Advisory weight/level/character data; never checked against the series."""

    twice_weight: int
    level: int = 1
    character: QuadraticChar = field(default_factory=QuadraticChar.trivial)

    def __post_init__(self):
        if self.twice_weight < 0 or self.level < 1:
            raise ValueError("need twice_weight >= 0 and level >= 1")

    @property
    def weight(self) -> Fraction:
        return Fraction(self.twice_weight, 2)

    @property
    def is_half_integral(self) -> bool:
        return self.twice_weight % 2 == 1


def delta_series(N: int) -> LaurentSeries:
    """Delta = eta(z)^24."""
    return eta_quotient({1: 24}, N)


def series_from_sequence(seq: Sequence, offset: int = 0, ring: Ring = ZZ) -> LaurentSeries:
    return LaurentSeries(seq, offset=offset, ring=ring)
