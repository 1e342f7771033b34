"""Hurwitz class numbers H(-n) from sums of three squares, with an
independent count over reduced binary quadratic forms.

Values are carried as ``six_times = 6 H(-n)``, which is always an integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from .errors import HurwitzUnreachable, InvalidArgument, InvalidDiscriminant
from .moduli import omega, reduced_forms
from .qseries import LaurentSeries, jacobi_theta

__all__ = [
    "HurwitzValue",
    "r3_series",
    "r3_values",
    "hurwitz_from_r3",
    "hurwitz_oracle",
    "hurwitz_table",
    "r3_reachable",
]


@dataclass(frozen=True, order=True)
class HurwitzValue:
    six_times: int

    def __post_init__(self):
        if self.six_times < 0:
            raise ValueError("Hurwitz class numbers are nonnegative")

    @property
    def value(self) -> Fraction:
        return Fraction(self.six_times, 6)

    def display(self) -> str:
        v = self.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

    def __str__(self):
        return self.display()


def r3_series(N: int) -> LaurentSeries:
    """T(z)^3 = sum r_3(n) q^n, trusted below q^N."""
    return jacobi_theta(N) ** 3


_R3: list[LaurentSeries] = []


def _r3(n: int) -> int:
    if not _R3 or _R3[0].prec <= n:
        size = max(2 * n + 2, 1024)
        _R3[:] = [r3_series(size)]
    return _R3[0][n]


def r3_reachable(n: int) -> bool:
    """False exactly for n = 4^k m with m = 7 (mod 8), where r_3 carries no
    information about H(-n)."""
    while n % 4 == 0 and n:
        n //= 4
    return n % 8 != 7


def _six_h(n: int) -> int:
    # r_3(n) = 12 (H(4n) - 2 H(n)); the case table for n = 1,2 (mod 4) and
    # n = 3 (mod 8) is the special case with H(n) = 0 resp. H(4n) = 4 H(n)
    if n % 8 == 3:
        r = _r3(n)
        assert r % 4 == 0
        return r // 4
    if n % 8 == 7:
        raise HurwitzUnreachable(
            f"r_3 vanishes on n = 7 (mod 8); H(-{n}) is not recoverable from r_3"
        )
    m = n // 4
    r = _r3(m)
    assert r % 2 == 0
    if m % 4 in (1, 2):
        return r // 2
    return r // 2 + 2 * _six_h(m)


def hurwitz_from_r3(n: int) -> HurwitzValue:
    """H(-n) read off the coefficients of T(z)^3.

    n = 3 (mod 8):      24 H(-n) = r_3(n)
    n = 4m, m = 1,2 (4): 12 H(-n) = r_3(m)
    n = 4m otherwise:    recurse through r_3(m) = 12 (H(-4m) - 2 H(-m))

    Raises HurwitzUnreachable on the n = 4^k (8j + 7) tower, where every
    relevant r_3 value is zero.
    """
    if n < 3 or n % 4 not in (0, 3):
        raise InvalidArgument(f"H(-{n}) needs n >= 3 with n = 0, 3 (mod 4)")
    return HurwitzValue(_six_h(n))


def hurwitz_oracle(n: int) -> HurwitzValue:
    """Count reduced forms of discriminant -n with weights 1, 1/2, 1/3."""
    if n <= 0 or n % 4 not in (0, 3):
        raise InvalidDiscriminant(f"-{n} is not a negative discriminant")
    return HurwitzValue(sum(6 // omega(F) for F in reduced_forms(n)))


def hurwitz_table(X: int) -> list[int]:
    """``six_times`` of H(-n) for 0 <= n <= X (zero off n = 0, 3 mod 4),
    from one sweep over all reduced forms with |disc| <= X."""
    six = [0] * (X + 1)
    for a in range(1, isqrt(X // 3) + 1):
        for b in range(-a + 1, a + 1):
            c = max(a, (b * b + 3) // (4 * a))
            while True:
                d = 4 * a * c - b * b
                if d > X:
                    break
                if c == a and b < 0:
                    c += 1
                    continue
                if b == 0 and a == c:
                    six[d] += 3
                elif a == b == c:
                    six[d] += 2
                else:
                    six[d] += 6
                c += 1
    return six


def r3_values(indices, chunk: int = 4096) -> dict[int, int]:
    """r_3(n) at arbitrary (possibly large) n via a table of r_2.

    Memory is one int32 array of length max(indices) + 1.
    """
    indices = sorted(set(int(n) for n in indices))
    if not indices:
        return {}
    top = indices[-1]
    r2 = np.zeros(top + 1, dtype=np.int32)
    s = isqrt(top)
    ys = np.arange(s + 1, dtype=np.int64) ** 2
    wy = np.where(np.arange(s + 1) == 0, 1, 2).astype(np.int32)
    for x in range(s + 1):
        base = x * x
        lim = np.searchsorted(ys, top - base, side="right")
        wx = 1 if x == 0 else 2
        r2[base + ys[:lim]] += wx * wy[:lim]
    out = {}
    zs = np.arange(s + 1, dtype=np.int64) ** 2
    wz = np.where(np.arange(s + 1) == 0, 1, 2).astype(np.int64)
    for start in range(0, len(indices), chunk):
        for n in indices[start : start + chunk]:
            lim = np.searchsorted(zs, n, side="right")
            out[n] = int((r2[n - zs[:lim]].astype(np.int64) * wz[:lim]).sum())
    return out
