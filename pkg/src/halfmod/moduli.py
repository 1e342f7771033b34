"""Traces of singular moduli.

Two independent routes to the Hecke traces t_m(d):

* numerically, by summing j_m over CM points of reduced binary quadratic
  forms (:func:`trace_numeric`), and
* algebraically, as minus the coefficient of q^d in h | T(m^2, 1, chi_0)
  (:func:`B_m`), where h = eta(z)^2/eta(2z) * E_4(4z)/eta(4z)^6.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt, log, pi, sqrt

import mpmath

from .arith import QuadraticChar, is_prime, kronecker
from .errors import (
    InsufficientPrecision,
    InvalidDiscriminant,
    NonIntegral,
    NotReduced,
    PrecisionLoss,
    RoundingAmbiguous,
)
from .operators import hecke_half_composite
from .qseries import LaurentSeries, delta_series, eisenstein, eta_quotient, twist

__all__ = [
    "BQF",
    "TraceValue",
    "reduced_forms",
    "omega",
    "j_numeric",
    "trace_numeric",
    "h_series",
    "B_m",
    "B_m_table",
    "h1p_series",
    "h1p_expected",
    "fp_series",
    "fp_congruence_holds",
    "smallest_fp_alpha",
    "trace_table",
]

ROUNDING_TOLERANCE = 0.25
WARN_RESIDUAL = 1e-3


@dataclass(frozen=True)
class BQF:
    """Positive definite binary quadratic form a x^2 + b x y + c y^2."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0 or self.disc >= 0:
            raise ValueError(f"[{self.a},{self.b},{self.c}] is not positive definite")

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def root(self):
        """The root of F(x, 1) in the upper half plane, as an mpmath complex."""
        return mpmath.mpc(-self.b, mpmath.sqrt(-self.disc)) / (2 * self.a)

    def __iter__(self):
        return iter((self.a, self.b, self.c))


def reduced_forms(d: int) -> list[BQF]:
    """One reduced representative per SL2(Z)-class of discriminant -d,
    imprimitive classes included."""
    if d <= 0 or d % 4 not in (0, 3):
        raise InvalidDiscriminant(f"-{d} is not a negative discriminant")
    forms = []
    for a in range(1, isqrt(d // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b - d) % 2:
                continue
            num = b * b + d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            forms.append(BQF(a, b, c))
    return forms


def omega(F: BQF) -> int:
    if not F.is_reduced():
        raise NotReduced(f"{tuple(F)} is not reduced")
    if F.b == 0 and F.a == F.c:
        return 2
    if F.a == F.b == F.c:
        return 3
    return 1


# --------------------------------------------------------------------------
# numerical j


@lru_cache(maxsize=8)
def _j_coefficients(terms: int):
    e4 = [int(c) for c in eisenstein(4, terms).coeffs]
    dl = delta_series(terms + 1).coeffs  # Delta/q: 1, -24, 252, ...
    return e4, dl[:terms]


def _to_fundamental_domain(tau):
    for _ in range(10_000):
        tau = tau - mpmath.nint(tau.real)
        if abs(tau) < 1 - mpmath.mpf(10) ** (-mpmath.mp.dps + 5):
            tau = -1 / tau
        else:
            return tau
    raise PrecisionLoss("fundamental-domain reduction did not terminate")


def _horner(coeffs, q):
    s = mpmath.mpc(0)
    for c in reversed(coeffs):
        s = s * q + c
    return s


def _tail_majorants(terms: int, r):
    """Bounds on the omitted tails of E_4 and Delta/q at |q| = r."""
    t = terms
    # |240 sigma_3(n)| <= 240 n^4 and |tau(n)| <= 2 n^6, summed geometrically
    ratio_e = r * ((t + 2) / mpmath.mpf(t + 1)) ** 4
    ratio_d = r * ((t + 2) / mpmath.mpf(t + 1)) ** 6
    if ratio_e >= 1 or ratio_d >= 1:
        return mpmath.inf, mpmath.inf
    e_tail = 240 * (t + 1) ** 4 * r**t / (1 - ratio_e)
    d_tail = 2 * (t + 1) ** 6 * r**t / (1 - ratio_d)
    return e_tail, d_tail


def j_numeric(tau, terms: int = 60, rel_tol=None):
    """j(tau) = E_4^3 / Delta from truncated q-expansions.

    ``tau`` is first moved into the standard fundamental domain, so
    |q| <= exp(-pi sqrt 3).  Raises PrecisionLoss if the certified truncation
    error exceeds ``rel_tol * max(1, |j|)`` (default rel_tol 10^-(dps-5)).
    """
    tau = mpmath.mpc(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    if terms < 1:
        raise ValueError("terms must be >= 1")
    tau = _to_fundamental_domain(tau)
    q = mpmath.expjpi(2 * tau)
    r = abs(q)
    if rel_tol is None:
        rel_tol = mpmath.mpf(10) ** (-mpmath.mp.dps + 5)
    e4, dl = _j_coefficients(terms)
    E = _horner(e4, q)
    Dq = _horner(dl, q)  # Delta / q
    j = E**3 / (Dq * q)
    e_err, d_err = _tail_majorants(terms, r)
    if abs(Dq) <= d_err:
        raise PrecisionLoss("Delta is not separated from zero by its tail bound")
    Eb = abs(E) + e_err
    num_err = 3 * Eb**2 * e_err
    bound = (num_err + abs(E) ** 3 * d_err / abs(Dq)) / (r * (abs(Dq) - d_err))
    if bound > rel_tol * max(1, abs(j)):
        raise PrecisionLoss(f"tail bound {mpmath.nstr(bound, 5)} exceeds tolerance")
    return j


@dataclass(frozen=True)
class TraceValue:
    value: int
    residual: float

    def __post_init__(self):
        if not (0 <= self.residual < ROUNDING_TOLERANCE):
            raise RoundingAmbiguous(f"residual {self.residual} is not below {ROUNDING_TOLERANCE}")

    def __int__(self):
        return self.value


def _hecke_points(alpha, m: int):
    for a in range(1, m + 1):
        if m % a:
            continue
        d = m // a
        for b in range(d):
            yield (a * alpha + b) / d


def trace_numeric(m: int, d: int, terms: int = 60, extra_digits: int = 30) -> TraceValue:
    """t_m(d) = sum_F j_m(alpha_F) / omega_F, evaluated numerically.

    j_m is the plain Hecke sum over ad = m, 0 <= b < d of j((a z + b)/d)
    minus 744 sigma_1(m), i.e. normalized to q^-m + O(q).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    forms = reduced_forms(d)
    # largest |j| involved is about exp(pi m sqrt(d))
    dps = extra_digits + int(pi * m * sqrt(d) / log(10)) + 1
    sigma1 = sum(x for x in range(1, m + 1) if m % x == 0)
    # each term buys at least -log10(exp(-pi sqrt 3)) = 2.36 digits
    terms = max(terms, int(dps / 2.36) + 10)
    with mpmath.workdps(dps):
        total = mpmath.mpc(0)
        for F in forms:
            alpha = F.root()
            jm = sum(j_numeric(t, terms) for t in _hecke_points(alpha, m)) - 744 * sigma1
            total += jm / omega(F)
        value = int(mpmath.nint(total.real))
        residual = float(max(abs(total.real - value), abs(total.imag)))
    return TraceValue(value, residual)


# --------------------------------------------------------------------------
# generating functions

_H_CACHE: dict[str, LaurentSeries] = {}


def h_series(N: int) -> LaurentSeries:
    """h = eta(z)^2/eta(2z) * E_4(4z)/eta(4z)^6 over ZZ, trusted below q^N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    cached = _H_CACHE.get("h")
    if cached is not None and cached.prec >= N:
        return cached.truncate(N)
    eta_part = eta_quotient({1: 2, 2: -1, 4: -6}, N)
    m = N // 4 + 1
    e4 = eisenstein(4, m).to_integer().subs_power(4)
    h = (eta_part * e4).truncate(N)
    _H_CACHE["h"] = h
    return h


def B_m(m: int, d: int, N: int | None = None) -> int:
    """Coefficient of q^d in h | T(m^2, 1, chi_0) for squarefree m."""
    need = m * m * d + 1
    if N is None:
        N = need
    elif N < need:
        raise InsufficientPrecision(f"B_{m}({d}) needs h below q^{need}, have {N}")
    g = hecke_half_composite(h_series(N), m, 1, QuadraticChar.trivial())
    c = g[d]
    if getattr(c, "denominator", 1) != 1:
        raise NonIntegral(f"B_{m}({d}) = {c} is not an integer")
    return int(c)


def B_m_table(m: int, max_d: int) -> LaurentSeries:
    """h | T(m^2, 1, chi_0) trusted below q^(max_d + 1)."""
    return hecke_half_composite(h_series(m * m * max_d + 1), m, 1, QuadraticChar.trivial())


def h1p_series(p: int, N: int, modp: bool = False) -> LaurentSeries:
    """h_{1,p} = h - (-1/p) h_{chi_p}."""
    if p < 5 or not is_prime(p):
        raise ValueError(f"h_(1,p) needs a prime p >= 5, got {p}")
    h = h_series(N)
    out = h - twist(h, QuadraticChar.chi(p)).scale(kronecker(-1, p))
    return out.reduce(p) if modp else out


def h1p_expected(p: int, t1, N: int) -> LaurentSeries:
    """The branch form of h_{1,p} below q^N, built from traces t1(d):

        -2 - sum_{p | d} t1(d) q^d - 2 sum_{(-d/p) = -1} t1(d) q^d

    over d = 0, 3 (mod 4).  ``t1`` is a callable or anything indexable.
    """
    get = t1 if callable(t1) else t1.__getitem__
    terms = {0: -2}
    for d in range(3, N):
        if d % 4 not in (0, 3):
            continue
        k = kronecker(-d, p)
        if k == 0:
            terms[d] = -get(d)
        elif k == -1:
            terms[d] = -2 * get(d)
    return LaurentSeries.from_dict(terms, N)


def fp_series(p: int, N: int, denominator: str = "p2") -> LaurentSeries:
    """F_p = eta(4z)^(p^2) / eta(4 p^2 z).

    ``denominator="p"`` gives the eta(4 p z) variant, whose leading exponent
    (p^2 - p)/6 is fractional for p = 5 and raises FractionalExponent.
    """
    if denominator == "p2":
        spec = {4: p * p, 4 * p * p: -1}
    elif denominator == "p":
        spec = {4: p * p, 4 * p: -1}
    else:
        raise ValueError("denominator must be 'p2' or 'p'")
    return eta_quotient(spec, N)


def fp_congruence_holds(p: int, alpha: int, N: int) -> bool:
    """Whether h_{1,p} F_p^alpha = h_{1,p} (mod p) below q^N."""
    h = h1p_series(p, N, modp=True)
    F = fp_series(p, N).reduce(p)
    return (h * F**alpha).congruent(h, p)


def smallest_fp_alpha(p: int, N: int, max_alpha: int = 8) -> int | None:
    for alpha in range(1, max_alpha + 1):
        if fp_congruence_holds(p, alpha, N):
            return alpha
    return None


def trace_table(ms, max_d: int, numeric: bool = True):
    """Rows (d, t_m(d) for each m, residual) over valid d <= max_d.

    With ``numeric`` the traces come from :func:`trace_numeric` and the
    residual is the worst one in the row; otherwise from -B_m and the
    residual column is 0.
    """
    ms = list(ms)
    series = None if numeric else {m: B_m_table(m, max_d) for m in ms}
    rows = []
    for d in range(3, max_d + 1):
        if d % 4 not in (0, 3):
            continue
        vals, worst = [], 0.0
        for m in ms:
            if numeric:
                tv = trace_numeric(m, d)
                vals.append(tv.value)
                worst = max(worst, tv.residual)
            else:
                vals.append(-int(series[m][d]))
        rows.append((d, *vals, worst))
    return rows
