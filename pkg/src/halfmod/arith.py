"""Exact scalar arithmetic: Kronecker symbols, Bernoulli numbers, residues
mod p and real (quadratic) Dirichlet characters.

Rationals are :class:`fractions.Fraction`, which already keeps
``gcd(num, den) == 1`` and ``den > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, isqrt
from typing import Tuple

from sympy import factorint, isprime

from .errors import NotPIntegral

Rational = Fraction

__all__ = [
    "Rational",
    "Residue",
    "QuadraticChar",
    "kronecker",
    "bernoulli",
    "reduce_mod",
    "char_eval",
    "is_prime",
    "primes_upto",
    "prime_factors",
    "squarefree_part",
    "is_squarefree",
    "divisor_sigma_table",
]


def is_prime(n: int) -> bool:
    return n >= 2 and bool(isprime(n))


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i in range(n + 1) if sieve[i]]


def prime_factors(n: int) -> dict[int, int]:
    return {int(q): int(e) for q, e in factorint(abs(n)).items()}


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for e in prime_factors(n).values())


def squarefree_part(n: int) -> int:
    """The unique square-free s > 0 with n = s * m^2 (n > 0)."""
    if n <= 0:
        raise ValueError("squarefree_part needs n > 0")
    s = 1
    for q, e in prime_factors(n).items():
        if e & 1:
            s *= q
    return s


def divisor_sigma_table(k: int, n: int) -> list[int]:
    """``[sigma_k(0)=0, sigma_k(1), ..., sigma_k(n-1)]`` by a divisor sieve."""
    sig = [0] * n
    for d in range(1, n):
        dk = d**k
        for m in range(d, n, d):
            sig[m] += dk
    return sig


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers a, n.

    The factor at 2 uses (a/2) = (-1)^((a^2-1)/8) for odd a.
    """
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    v = (n & -n).bit_length() - 1
    if v:
        if a % 2 == 0:
            return 0
        n >>= v
        if v & 1 and a % 8 in (3, 5):
            sign = -sign
    # Jacobi symbol (a/n), n odd positive
    a %= n
    t = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return sign * t if n == 1 else 0


@lru_cache(maxsize=None)
def _bernoulli_all(m: int) -> Tuple[Fraction, ...]:
    # sum_{j=0}^{m} C(m+1, j) B_j = 0, B_0 = 1
    bs = [Fraction(1)]
    for k in range(1, m + 1):
        s = sum(comb(k + 1, j) * bs[j] for j in range(k))
        bs.append(-s / (k + 1))
    return tuple(bs)


def bernoulli(k: int) -> Fraction:
    """The Bernoulli number B_k for even k >= 2 (convention B_1 = -1/2)."""
    if k < 2 or k % 2:
        raise ValueError(f"bernoulli needs an even index >= 2, got {k}")
    return _bernoulli_all(k)[k]


@dataclass(frozen=True)
class Residue:
    """An element of Z/pZ, stored as its least nonnegative representative."""

    value: int
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        object.__setattr__(self, "value", self.value % self.p)

    def __int__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return (self.value - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __add__(self, other):
        return Residue(self.value + int(other), self.p)

    def __mul__(self, other):
        return Residue(self.value * int(other), self.p)

    def __neg__(self):
        return Residue(-self.value, self.p)

    def inverse(self) -> "Residue":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.p}")
        return Residue(pow(self.value, -1, self.p), self.p)

    def __repr__(self):
        return f"Residue({self.value} mod {self.p})"


def reduce_mod(r, p: int) -> Residue:
    """Reduce an integer or rational into Z/pZ; raises NotPIntegral if p | den."""
    r = Fraction(r)
    if r.denominator % p == 0:
        raise NotPIntegral(f"{r} has denominator divisible by {p}")
    return Residue(r.numerator * pow(r.denominator, -1, p), p)


@dataclass(frozen=True)
class QuadraticChar:
    """A real Dirichlet character.

    kinds:
      ``trivial``   n -> 1 if gcd(n, level) == 1 else 0
      ``bottom``    n -> (n/Q), written chi_Q
      ``top``       n -> (D/n), e.g. the (4/.) twist
      ``product``   pointwise product of ``factors``
      ``hecke_star`` n -> chi(n) * ((-1)^k / n) for base ``chi``
    """

    kind: str
    modulus: int = 1
    param: int = 0
    factors: Tuple["QuadraticChar", ...] = ()
    k: int = 0

    @classmethod
    def trivial(cls, level: int = 1) -> "QuadraticChar":
        return cls("trivial", modulus=level)

    @classmethod
    def chi(cls, Q: int) -> "QuadraticChar":
        """n -> (n/Q)."""
        if Q < 1:
            raise ValueError("chi_Q needs Q >= 1")
        return cls("bottom", modulus=Q, param=Q)

    @classmethod
    def kronecker_top(cls, D: int) -> "QuadraticChar":
        """n -> (D/n)."""
        m = abs(D) if D % 4 in (0, 1) else 4 * abs(D)
        return cls("top", modulus=m, param=D)

    @classmethod
    def product(cls, *chars: "QuadraticChar") -> "QuadraticChar":
        mod = 1
        for c in chars:
            mod = mod * c.modulus // gcd(mod, c.modulus)
        return cls("product", modulus=mod, factors=tuple(chars))

    @classmethod
    def hecke_star(cls, base: "QuadraticChar", k: int) -> "QuadraticChar":
        return cls("hecke_star", modulus=base.modulus, factors=(base,), k=k)

    @property
    def level(self) -> int:
        return self.modulus

    def __call__(self, n: int) -> int:
        return char_eval(self, n)

    def __mul__(self, other: "QuadraticChar") -> "QuadraticChar":
        return QuadraticChar.product(self, other)


def char_eval(chi: QuadraticChar, n: int) -> int:
    kind = chi.kind
    if kind == "trivial":
        return 1 if gcd(n, chi.modulus) == 1 else 0
    if kind == "bottom":
        return kronecker(n, chi.param)
    if kind == "top":
        return kronecker(chi.param, n)
    if kind == "product":
        v = 1
        for c in chi.factors:
            v *= char_eval(c, n)
            if not v:
                return 0
        return v
    if kind == "hecke_star":
        return char_eval(chi.factors[0], n) * kronecker((-1) ** chi.k, n)
    raise ValueError(f"unknown character kind {kind!r}")
