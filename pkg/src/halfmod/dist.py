"""Residue distribution machinery: tallies with Property-A conformance,
square-class support detection, the Hecke eigenform congruence check and
scans for primes Q with g | T(Q^2) = 0 or 2g (mod p)."""

from __future__ import annotations

import csv
import io
import json
import warnings
from dataclasses import dataclass, field
from math import log, sqrt
from typing import Callable, Iterable

from .arith import QuadraticChar, char_eval, is_prime, kronecker, prime_factors, primes_upto, squarefree_part
from .errors import InsufficientPrecision
from .operators import hecke_half
from .qseries import GF, LaurentSeries

__all__ = [
    "TallyReport",
    "SquareClassProfile",
    "LazySeries",
    "tally",
    "square_class_support",
    "eigen_congruence_check",
    "eigen_pivot_holds",
    "hecke_image_coeff",
    "find_hecke_primes",
    "trace_tally",
    "hurwitz_tally",
    "overpartition_tally",
]

DEFAULT_C = 0.01


@dataclass
class TallyReport:
    p: int
    X: int
    counts: dict
    gcd_filtered: bool = False
    c: float = DEFAULT_C
    label: str = ""

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def threshold(self, r: int) -> float:
        if r % self.p == 0:
            return self.c * self.X
        return self.c * sqrt(self.X) / log(self.X) if self.X > 1 else 0.0

    @property
    def conformance(self) -> dict:
        return {
            r: {"count": n, "threshold": self.threshold(r), "pass": n >= self.threshold(r)}
            for r, n in sorted(self.counts.items())
        }

    def all_residues_hit(self) -> bool:
        return all(self.counts[r] > 0 for r in range(self.p))

    def passes(self) -> bool:
        return all(v["pass"] for v in self.conformance.values())

    def merge(self, other: "TallyReport") -> "TallyReport":
        if (self.p, self.gcd_filtered) != (other.p, other.gcd_filtered):
            raise ValueError("can only merge tallies with the same p and filter")
        counts = {r: self.counts[r] + other.counts[r] for r in range(self.p)}
        return TallyReport(self.p, max(self.X, other.X), counts, self.gcd_filtered, self.c, self.label)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "p": self.p,
            "X": self.X,
            "c": self.c,
            "gcd_filtered": self.gcd_filtered,
            "total": self.total,
            "counts": {str(r): n for r, n in sorted(self.counts.items())},
            "conformance": {str(r): v for r, v in self.conformance.items()},
            "all_residues_hit": self.all_residues_hit(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["residue", "count", "threshold", "pass"])
        for r, v in self.conformance.items():
            w.writerow([r, v["count"], repr(v["threshold"]), int(v["pass"])])
        return buf.getvalue()


def tally(seq, p: int, X: int, gcd_filter: bool = False, indices: Iterable[int] | None = None,
          c: float = DEFAULT_C, label: str = "") -> TallyReport:
    """Histogram of seq(n) mod p over 1 <= n <= X.

    ``seq`` may be a sequence indexed by n, a mapping, a LaurentSeries or a
    callable.  ``indices`` restricts the index set (e.g. valid
    discriminants); ``gcd_filter`` drops n divisible by p.
    """
    get = _getter(seq)
    idx = range(1, X + 1) if indices is None else (n for n in indices if 1 <= n <= X)
    counts = {r: 0 for r in range(p)}
    for n in idx:
        if gcd_filter and n % p == 0:
            continue
        counts[int(get(n)) % p] += 1
    return TallyReport(p, X, counts, gcd_filter, c, label)


def _getter(seq) -> Callable[[int], int]:
    if callable(seq) and not isinstance(seq, LaurentSeries):
        return seq
    return seq.__getitem__


# --------------------------------------------------------------------------


@dataclass
class SquareClassProfile:
    classes: frozenset
    exceptional: list = field(default_factory=list)
    bound: int = 10
    divisibility_violations: list = field(default_factory=list)

    @property
    def sparse(self) -> bool:
        return len(self.classes) <= self.bound

    def reconstruct(self, f: LaurentSeries, X: int) -> LaurentSeries:
        """Sum over detected classes n_i m^2 (p not dividing the exponent)
        of the coefficients of f, below q^X."""
        p = f.ring.p
        X = min(X, f.prec)
        terms = {}
        for s in self.classes:
            m = 1
            while s * m * m < X:
                n = s * m * m
                if n % p:
                    terms[n] = f[n]
                m += 1
        for n in self.exceptional:
            if n < X:
                terms[n] = f[n]
        return LaurentSeries.from_dict(terms, X, f.ring)


def square_class_support(f: LaurentSeries, X: int | None = None, bound: int = 10,
                         level: int | None = None) -> SquareClassProfile:
    """Square-free parts of the exponents 0 < n < X with p not dividing n
    and a nonzero coefficient mod p.

    Negative exponents are listed as exceptional.  With ``level`` given, odd
    primes l dividing a class but with p not dividing (l-1) l (l+1) N and l
    not dividing N are recorded as ``divisibility_violations``.
    """
    if f.ring.kind != "GF":
        raise ValueError("square_class_support expects a series over GF(p)")
    p = f.ring.p
    X = f.prec if X is None else min(X, f.prec)
    classes, exceptional = set(), []
    for n, c in f.items():
        if n >= X:
            break
        if not c:
            continue
        if n < 0:
            exceptional.append(n)
        elif n > 0 and n % p:
            classes.add(squarefree_part(n))
    bad = []
    if level is not None:
        for s in sorted(classes):
            for ell in prime_factors(s):
                if ell == 2:
                    continue
                if ((ell - 1) * ell * (ell + 1) * level) % p and level % ell:
                    bad.append((s, ell))
    return SquareClassProfile(frozenset(classes), exceptional, bound, bad)


# --------------------------------------------------------------------------


def eigen_congruence_check(g: LaurentSeries, ell: int, lam: int, chi: QuadraticChar | None,
                           eps: int, p: int) -> bool:
    """(ell - 1) g | T(ell^2, lam, chi) = eps chi(p) ((-1)^lam/ell)
    (ell^lam + ell^(lam-1)) (ell - 1) g  (mod p), below the shared precision."""
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    chi = chi or QuadraticChar.trivial()
    if ell == p or ell == 2 or not is_prime(ell) or chi.modulus % ell == 0:
        raise ValueError(f"ell = {ell} must be an odd prime not dividing the level or p")
    g = g.reduce(p)
    lhs = hecke_half(g, ell, lam, chi).scale(ell - 1)
    # ell^(lam - 1) taken mod p, ell invertible since ell != p
    e = (pow(ell, lam, p) + pow(ell, lam - 1, p)) % p if lam >= 1 else (1 + pow(ell, -1, p)) % p
    factor = eps * char_eval(chi, p) * kronecker((-1) ** lam, ell) * e * (ell - 1)
    rhs = g.scale(factor)
    prec = min(lhs.prec, rhs.prec)
    lo = min(lhs.offset, rhs.offset)
    return all((lhs[n] - rhs[n]) % p == 0 for n in range(lo, prec))


def eigen_pivot_holds(g: LaurentSeries, ell: int, lam: int, chi, p: int) -> bool:
    """If the check passes for both signs then (ell^lam + ell^(lam-1))(ell-1) g
    must vanish mod p below the Hecke output precision."""
    both = eigen_congruence_check(g, ell, lam, chi, 1, p) and eigen_congruence_check(g, ell, lam, chi, -1, p)
    if not both:
        return True
    g = g.reduce(p)
    e = (pow(ell, lam, p) + pow(ell, lam - 1, p)) % p if lam >= 1 else (1 + pow(ell, -1, p)) % p
    prec = (g.prec - 1) // (ell * ell) + 1
    return all((e * (ell - 1) * g[n]) % p == 0 for n in range(g.offset, min(prec, g.prec)))


# --------------------------------------------------------------------------


class LazySeries:
    """Coefficients mod p given by a function; trusted at every exponent.

    Used where a dense series would be too long, e.g. scanning Hecke primes
    up to 500 needs coefficients near 500^2 * 50.
    """

    def __init__(self, func: Callable[[int], int], p: int, prefetch: Callable | None = None):
        self.func = func
        self.p = p
        self.ring = GF(p)
        self.prec = float("inf")
        self.offset = 0
        self.prefetch = prefetch

    def __getitem__(self, n: int) -> int:
        if n < 0:
            return 0
        return self.func(n) % self.p


def hecke_image_coeff(a: Callable[[int], int], n: int, Q: int, lam: int, chi: QuadraticChar, p: int) -> int:
    """Coefficient of q^n in g | T(Q^2, lam, chi), mod p."""
    star = QuadraticChar.hecke_star(chi, lam)
    s1 = char_eval(star, Q) * (pow(Q, lam - 1, p) if lam >= 1 else pow(Q, -1, p))
    s2 = char_eval(star, Q * Q) * (pow(Q, 2 * lam - 1, p) if lam >= 1 else pow(Q, -1, p))
    c = a(Q * Q * n) + s1 * kronecker(n, Q) * a(n)
    if n % (Q * Q) == 0:
        c += s2 * a(n // (Q * Q))
    return c % p


def find_hecke_primes(g, lam: int, chi: QuadraticChar | None, p: int, mode: str, Q_bound: int,
                      congruence_class: tuple | None = None, min_depth: int = 50,
                      depth: int | None = None) -> list[int]:
    """Primes Q <= Q_bound (Q != p, Q coprime to the character modulus, and
    in ``congruence_class`` = (r, M) if given) with g | T(Q^2, lam, chi)
    congruent to 0 (``mode="annihilate"``) or 2g (``mode="double"``) mod p.

    For a dense series the tested exponents are 0 <= n < ceil(prec / Q^2);
    a LazySeries is tested on 0 <= n < ``depth`` (default ``min_depth``).
    Raises InsufficientPrecision if fewer than ``min_depth`` are testable.
    """
    if mode not in ("annihilate", "double"):
        raise ValueError("mode must be 'annihilate' or 'double'")
    chi = chi or QuadraticChar.trivial()
    lazy = isinstance(g, LazySeries)
    if not lazy:
        g = g.reduce(p)
    candidates = [
        Q for Q in primes_upto(Q_bound)
        if Q not in (2, p) and chi.modulus % Q and (congruence_class is None or Q % congruence_class[1] == congruence_class[0] % congruence_class[1])
    ]

    def testable(Q):
        if lazy:
            return depth or min_depth
        return (g.prec - 1) // (Q * Q) + 1 if g.prec >= 1 else 0

    for Q in candidates:
        if testable(Q) < min_depth:
            raise InsufficientPrecision(
                f"Q = {Q} leaves only {testable(Q)} testable coefficients (< {min_depth})"
            )
    if lazy and g.prefetch is not None:
        need = set()
        for Q in candidates:
            for n in range(testable(Q)):
                need.update((Q * Q * n, n))
        g.prefetch(need)
    found = []
    a = g.__getitem__
    for Q in candidates:
        target = 0 if mode == "annihilate" else 2
        start = 0 if lazy else max(g.offset, 0)
        ok = all(
            hecke_image_coeff(a, n, Q, lam, chi, p) == (target * a(n)) % p
            for n in range(start, testable(Q))
        )
        if ok:
            found.append(Q)
    return found


# --------------------------------------------------------------------------


def _check_p(p: int, need_2mod3: bool, allow_any_p: bool):
    if p < 5 or not is_prime(p):
        raise ValueError(f"need a prime p >= 5, got {p}")
    if need_2mod3 and p % 3 != 2:
        if not allow_any_p:
            raise ValueError(f"p = {p} is not 2 mod 3; pass allow_any_p=True to override")
        warnings.warn(f"p = {p} is outside the p = 2 (mod 3) hypothesis", stacklevel=3)


def _discriminants(X: int):
    return [d for d in range(3, X + 1) if d % 4 in (0, 3)]


def trace_tally(p: int, X: int, gcd_filter: bool = False, c: float = DEFAULT_C,
                allow_any_p: bool = False) -> TallyReport:
    """t_1(d) mod p over valid discriminants d <= X, with t_1(d) = -coeff of h."""
    from .moduli import h_series

    _check_p(p, True, allow_any_p)
    h = h_series(X + 1)
    return tally(lambda d: -h[d], p, X, gcd_filter, _discriminants(X), c, label="t_1")


def hurwitz_tally(p: int, X: int, gcd_filter: bool = False, c: float = DEFAULT_C) -> TallyReport:
    """6 H(-n) mod p over n = 0, 3 (mod 4), n <= X."""
    from .classnum import hurwitz_table

    _check_p(p, False, True)
    six = hurwitz_table(X)
    return tally(six, p, X, gcd_filter, _discriminants(X), c, label="6H")


def overpartition_tally(p: int, X: int, gcd_filter: bool = False, c: float = DEFAULT_C,
                        allow_any_p: bool = False) -> TallyReport:
    from .partitions import overpartition_series

    _check_p(p, True, allow_any_p)
    W = overpartition_series(X + 1)
    return tally(W, p, X, gcd_filter, None, c, label="Pbar")
