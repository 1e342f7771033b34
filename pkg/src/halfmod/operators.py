"""Rankin-Cohen 1-bracket, the theta^(p-1) lift through Eisenstein
brackets, and half-integral weight Hecke operators T(Q^2, k, chi)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import QuadraticChar, char_eval, is_prime, kronecker, prime_factors
from .errors import InsufficientPrecision, NonIntegralScalar, NonSquarefree, RingMismatch
from .qseries import QQ, LaurentSeries, Ring, eisenstein, theta_op

__all__ = [
    "BracketInput",
    "rc_bracket1",
    "bracket_theta_unit",
    "theta_lift",
    "hecke_half",
    "hecke_half_composite",
]


@dataclass(frozen=True)
class BracketInput:
    """Two series with their weights, stored doubled so halves stay exact."""

    F: LaurentSeries
    w1: int
    G: LaurentSeries
    w2: int

    def __post_init__(self):
        if self.w1 < 0 or self.w2 < 0:
            raise ValueError("twice-weights must be nonnegative")


def _as_rational_or_modp(f: LaurentSeries) -> LaurentSeries:
    return f.change_ring(QQ) if f.ring.kind == "ZZ" else f


def rc_bracket1(F: LaurentSeries, w1: int, G: LaurentSeries, w2: int) -> LaurentSeries:
    """[F, G]_1 = (w2/2) theta(F) G - (w1/2) F theta(G).

    ``w1`` and ``w2`` are twice the weights, so the scalars are the weights
    themselves.  Integer inputs are promoted to QQ; a GF(p) input keeps its
    ring (the halves are inverted mod p).
    """
    if isinstance(F, BracketInput):
        F, w1, G, w2 = F.F, F.w1, F.G, F.w2
    F, G = _as_rational_or_modp(F), _as_rational_or_modp(G)
    if F.ring != G.ring:
        if F.ring.kind == "GF" and G.ring.kind == "QQ":
            G = G.change_ring(F.ring)
        elif G.ring.kind == "GF" and F.ring.kind == "QQ":
            F = F.change_ring(G.ring)
        else:
            raise RingMismatch(f"{F.ring} vs {G.ring}")
    ring = F.ring
    c2 = ring.coerce(Fraction(w2, 2))
    c1 = ring.coerce(Fraction(w1, 2))
    return theta_op(F) * G * c2 - F * theta_op(G) * c1


def bracket_theta_unit(p: int, f: LaurentSeries, w: int, N: int | None = None) -> int | None:
    """The u in GF(p) with [E_{p-1}, f]_1 = u theta(f) mod p, if one exists.

    Returns None when theta(f) vanishes mod p below the shared precision, and
    raises ValueError when no single scalar works.
    """
    N = f.prec if N is None else N
    E = eisenstein(p - 1, N)
    br = rc_bracket1(E, 2 * (p - 1), f.truncate(N), w).reduce(p)
    th = theta_op(f.truncate(N)).reduce(p)
    prec = min(br.prec, th.prec)
    u = None
    for n in range(min(br.offset, th.offset), prec):
        a, b = br[n], th[n]
        if b:
            cand = a * pow(b, -1, p) % p
            if u is None:
                u = cand
            elif cand != u:
                raise ValueError(f"bracket is not a scalar multiple of theta mod {p} (q^{n})")
        elif a:
            raise ValueError(f"bracket is nonzero where theta vanishes mod {p} (q^{n})")
    return u


def theta_lift(f: LaurentSeries, p: int, iterations: int | None = None, w: int = 1) -> LaurentSeries:
    """u^-i B^i(f) mod p, where B(g) = [E_{p-1}, g]_1 and i = ``iterations``.

    The bracket is applied with E_{p-1} reduced mod p (reduction is a ring map,
    so this equals reducing the exact bracket).  The unit u is measured once
    on the reference series q rather than assumed; the result then agrees
    with theta^i(f) mod p.
    ``w`` is the twice-weight of f and only affects the tracked weights.
    """
    if p < 5 or not is_prime(p):
        raise ValueError(f"theta_lift needs a prime p >= 5, got {p}")
    if iterations is None:
        iterations = p - 1
    g = f.reduce(p)
    E = eisenstein(p - 1, g.prec).reduce(p)
    u = bracket_theta_unit(p, LaurentSeries([0, 1], prec=2), 1) or 1
    uinv = pow(u, -1, p)
    wE = 2 * (p - 1)
    for _ in range(iterations):
        g = rc_bracket1(E, wE, g, w).scale(uinv)
        w += wE + 4
    return g


def _scalar(ring: Ring, Q: int, e: int):
    if e >= 0:
        return ring.coerce(Q**e)
    if ring.kind == "ZZ":
        raise NonIntegralScalar(f"{Q}^{e} is not an integer; use QQ or GF(p)")
    if ring.kind == "GF" and ring.p == Q:
        raise NonIntegralScalar(f"{Q}^{e} does not exist mod {Q}")
    return ring.coerce(Fraction(1, Q**-e))


def hecke_half(F: LaurentSeries, Q: int, k: int, chi: QuadraticChar | None = None) -> LaurentSeries:
    """F | T(Q^2, k, chi) on a weight k + 1/2 series.

    coefficient of q^n:
        a(Q^2 n) + chi*(Q) (n/Q) Q^(k-1) a(n) + chi*(Q^2) Q^(2k-1) a(n/Q^2)
    with chi*(n) = chi(n) ((-1)^k / n).  Works for negative exponents.
    """
    if not is_prime(Q):
        raise ValueError(f"Q = {Q} is not prime")
    chi = chi or QuadraticChar.trivial()
    if chi.modulus % Q == 0:
        raise ValueError(f"Q = {Q} divides the character modulus {chi.modulus}")
    star = QuadraticChar.hecke_star(chi, k)
    ring = F.ring
    s1 = ring.coerce(char_eval(star, Q)) * _scalar(ring, Q, k - 1)
    s2 = ring.coerce(char_eval(star, Q * Q)) * _scalar(ring, Q, 2 * k - 1)
    Q2 = Q * Q
    v, N = F.offset, F.prec
    if N < 1:
        raise InsufficientPrecision(f"series known only below q^{N}")
    prec = (N - 1) // Q2 + 1
    lo = min(-((-v) // Q2), v, Q2 * v)
    if prec <= lo:
        return LaurentSeries([], offset=prec, prec=prec, ring=ring)
    out = []
    for n in range(lo, prec):
        c = F[Q2 * n]
        if s1:
            kr = kronecker(n, Q)
            if kr:
                c += kr * s1 * F[n]
        if s2 and n % Q2 == 0:
            c += s2 * F[n // Q2]
        out.append(c)
    return LaurentSeries(out, offset=lo, prec=prec, ring=ring)


def hecke_half_composite(F: LaurentSeries, m: int, k: int, chi: QuadraticChar | None = None) -> LaurentSeries:
    """Composition of T(Q^2, k, chi) over the primes Q of a squarefree m."""
    if m < 1:
        raise ValueError("m must be positive")
    fac = prime_factors(m)
    if any(e > 1 for e in fac.values()):
        raise NonSquarefree(f"m = {m} is not squarefree; prime-power Hecke operators are not supported")
    for Q in sorted(fac):
        F = hecke_half(F, Q, k, chi)
    return F


def required_precision(prec_out: int, m: int) -> int:
    """Input precision so that T(m^2) output is trusted below ``prec_out``."""
    if prec_out < 1:
        raise InsufficientPrecision("output precision must be positive")
    return m * m * (prec_out - 1) + 1
