"""Overpartitions: the generating function W = eta(2z)/eta(z)^2, two
independent checks on it, and the mod-p twist combination
G = W - (-1/p) W_{chi_p} (optionally times F_p^(p^beta))."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arith import QuadraticChar, is_prime, kronecker
from .errors import TooLarge
from .moduli import fp_series
from .qseries import LaurentSeries, eta_quotient, twist

__all__ = [
    "OverpartitionCount",
    "overpartition_series",
    "overpartition_enumerate",
    "overpartition_product",
    "g_twist_series",
    "g_twist_expected",
]

ENUMERATION_LIMIT = 40


@dataclass(frozen=True)
class OverpartitionCount:
    n: int
    count: int

    def __post_init__(self):
        if self.n < 0 or self.count < 1:
            raise ValueError("need n >= 0 and count >= 1")
        if self.n >= 1 and self.count % 2:
            raise ValueError(f"overpartition counts are even for n >= 1, got {self.count}")


def overpartition_series(N: int) -> LaurentSeries:
    """W = eta(2z)/eta(z)^2 = sum Pbar(n) q^n, trusted below q^N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return eta_quotient({2: 1, 1: -2}, N)


def overpartition_enumerate(n: int) -> OverpartitionCount:
    """Pbar(n) by walking every partition of n; each distinct part size may
    have its first occurrence overlined or not."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > ENUMERATION_LIMIT:
        raise TooLarge(f"enumeration is capped at n = {ENUMERATION_LIMIT}")

    def walk(rest, largest):
        # parts in nonincreasing order; each new size doubles the choices
        if rest == 0:
            return 1
        total = 0
        for part in range(min(rest, largest), 0, -1):
            for mult in range(1, rest // part + 1):
                total += 2 * walk(rest - mult * part, part - 1)
        return total

    return OverpartitionCount(n, walk(n, n))


def overpartition_product(N: int) -> LaurentSeries:
    """prod_{k>=1} (1 + q^k)/(1 - q^k) below q^N, multiplied out factor by
    factor; shares no code with the eta-quotient route."""
    if N < 1:
        raise ValueError("N must be >= 1")
    dp = np.zeros(N, dtype=object)
    dp[:] = 0
    dp[0] = 1
    for k in range(1, N):
        dp[k:] = dp[k:] + dp[:-k]
        # dividing by 1 - q^k is an in-place prefix recurrence, done k at a time
        for j in range(k, N, k):
            e = min(j + k, N)
            dp[j:e] += dp[j - k : e - k]
    return LaurentSeries([int(c) for c in dp], prec=N)


def g_twist_series(p: int, N: int, beta: int | None = None) -> LaurentSeries:
    """(W - (-1/p) W_{chi_p}) reduced mod p, below q^N.

    With ``beta`` the factor F_p^(p^beta) is multiplied in; it is = 1 mod p,
    so the residues do not change.
    """
    if p < 5 or not is_prime(p):
        raise ValueError(f"need a prime p >= 5, got {p}")
    W = overpartition_series(N).reduce(p)
    G = W - twist(W, QuadraticChar.chi(p)).scale(kronecker(-1, p))
    if beta is not None:
        F = fp_series(p, N).reduce(p)
        G = G * F ** (p**beta)
    return G


def g_twist_expected(p: int, pbar: LaurentSeries) -> dict[int, int]:
    """The three-branch shape for 1 <= n < prec: 2 Pbar(n) where (-n/p) = -1,
    Pbar(n) where p | n, and 0 where (-n/p) = +1 (all mod p)."""
    out = {}
    for n in range(1, pbar.prec):
        k = kronecker(-n, p)
        if k == -1:
            out[n] = 2 * pbar[n] % p
        elif k == 0:
            out[n] = pbar[n] % p
        else:
            out[n] = 0
    return out
