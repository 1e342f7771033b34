"""Acceptance criteria, one test per criterion.

Run with ``pytest tests/test_acceptance.py -v``; each test prints a single
``[ACCEPT n] PASS|FAIL ...`` line (visible with ``-s``).
Tolerances: exact everywhere except the numerical traces, where the
rounding residual must be below 1e-4.
"""

import time

import pytest

from halfmod.arith import QuadraticChar, kronecker, prime_factors
from halfmod.checks import lifted_theta_cubed
from halfmod.classnum import hurwitz_from_r3, hurwitz_oracle, hurwitz_table, r3_reachable
from halfmod.dist import eigen_congruence_check, eigen_pivot_holds, find_hecke_primes, hurwitz_tally, overpartition_tally, tally, trace_tally
from halfmod.errors import HurwitzUnreachable
from halfmod.moduli import B_m_table, h1p_expected, h1p_series, h_series, trace_numeric
from halfmod.operators import bracket_theta_unit, theta_lift
from halfmod.partitions import g_twist_expected, g_twist_series, overpartition_enumerate, overpartition_product, overpartition_series
from halfmod.qseries import GF, LaurentSeries, delta_series, eisenstein, jacobi_theta

RESIDUAL_TOL = 1e-4

# frozen from the first run after every oracle suite passed
COVERAGE_GOLDENS = {
    (5, "t_1"): [1081, 980, 1029, 954, 956],
    (5, "6H"): [1230, 987, 949, 925, 909],
    (5, "Pbar"): [2776, 1816, 1766, 1840, 1802],
    (11, "t_1"): [457, 462, 460, 460, 429, 475, 442, 468, 482, 418, 447],
    (11, "6H"): [330, 477, 435, 441, 455, 483, 499, 419, 539, 415, 507],
    (11, "Pbar"): [1077, 905, 835, 867, 908, 890, 860, 916, 863, 977, 902],
}
SCAN_GOLDEN = {
    "annihilate": [19, 59, 79, 139, 179, 199, 239, 359, 379, 419, 439, 479, 499],
    "double": [41, 61, 101, 181, 241, 281, 401, 421, 461],
}


def report(n, ok, detail):
    print(f"\n[ACCEPT {n}] {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


def test_01_eisenstein_congruence():
    bad = [p for p in (5, 7, 11, 13) if eisenstein(p - 1, 2000).reduce(p) != LaurentSeries([1], prec=2000, ring=GF(p))]
    report(1, not bad, f"E_(p-1) = 1 mod p below q^2000 for p in 5,7,11,13; failures {bad}")


def test_02_bracket_theta():
    N = 1000
    T = jacobi_theta(N)
    targets = {"T": (T, 1), "T^3": (T**3, 3), "Delta": (delta_series(N), 24)}
    units, lift_bad = set(), []
    for p in (5, 7):
        for name, (f, w) in targets.items():
            units.add((p, bracket_theta_unit(p, f, w)))
            want = LaurentSeries.from_dict({n: c for n, c in f.reduce(p).items() if n % p}, N, GF(p))
            if theta_lift(f, p) != want:
                lift_bad.append((p, name))
    one_unit = all(len({u for q, u in units if q == p}) == 1 for p in (5, 7))
    report(2, one_unit and not lift_bad, f"units {sorted(units)}, theta^(p-1) identity failures {lift_bad}")


def test_03_zagier_identity():
    t0 = time.time()
    bad, worst = [], 0.0
    for m in (1, 2, 3, 5, 6):
        B = B_m_table(m, 100)
        for d in range(3, 101):
            if d % 4 in (0, 3):
                tv = trace_numeric(m, d)
                worst = max(worst, tv.residual)
                if tv.value != -B[d]:
                    bad.append((m, d, tv.value, -B[d]))
    dt = time.time() - t0
    ok = not bad and worst < RESIDUAL_TOL and dt < 60
    report(3, ok, f"t_m(d) = -B_m(d), m in 1,2,3,5,6, d <= 100: mismatches {bad[:3]}, worst residual {worst:.1e}, {dt:.1f}s")


def test_04_pinned_constants():
    t13 = trace_numeric(1, 3).value
    h3 = 4 * hurwitz_from_r3(3).six_times
    pb3 = overpartition_series(4)[3]
    ok = abs(2 * t13) == 2**4 * 31 == 496 and h3 == 8 and pb3 == 8
    report(4, ok, f"|2 t_1(3)| = {abs(2 * t13)}, 24 H(-3) = {h3}, Pbar(3) = {pb3}")


def test_05_hurwitz_equivalence():
    # literal criterion: every valid n <= 10^4 through r_3.  Fails on the
    # n = 4^k (8j + 7) tower, where r_3 carries no class-number information.
    t0 = time.time()
    mismatches, unreachable = [], []
    for n in range(3, 10_001):
        if n % 4 not in (0, 3):
            continue
        try:
            if hurwitz_from_r3(n) != hurwitz_oracle(n):
                mismatches.append(n)
        except HurwitzUnreachable:
            unreachable.append(n)
    dt = time.time() - t0
    ok = not mismatches and not unreachable and dt < 60
    report(5, ok, f"{len(mismatches)} mismatches, {len(unreachable)} valid n with H(-n) not recoverable "
                  f"from r_3 (first {unreachable[:4]}), {dt:.1f}s")


def test_05b_hurwitz_equivalence_where_r3_determines_h():
    six = hurwitz_table(10_000)
    reach = [n for n in range(3, 10_001) if n % 4 in (0, 3) and r3_reachable(n)]
    bad = [n for n in reach if hurwitz_from_r3(n).six_times != six[n]]
    spot = [n for n in reach[::37] if hurwitz_oracle(n).six_times != six[n]]
    report("5b", not bad and not spot, f"{len(reach)} reachable n <= 10^4: {len(bad)} mismatches vs form sweep, {len(spot)} sweep/oracle disagreements")


def test_06_overpartition_oracles():
    W = overpartition_series(10_001)
    enum_bad = [n for n in range(41) if overpartition_enumerate(n).count != W[n]]
    prod_ok = overpartition_product(10_001) == W
    report(6, not enum_bad and prod_ok, f"enumeration n <= 40 mismatches {enum_bad}; product n <= 10^4 equal: {prod_ok}")


@pytest.mark.parametrize("p", [5, 11])
def test_07_twist_shapes(p):
    N = 2000
    h = h_series(N + 1)
    h_ok = h1p_series(p, N) == h1p_expected(p, lambda d: -h[d], N)
    G = g_twist_series(p, N)
    want = g_twist_expected(p, overpartition_series(N))
    g_bad = [n for n in range(1, N) if G[n] != want[n]]
    report(7, h_ok and not g_bad, f"p = {p}: h_1p branch form {h_ok}, G mismatches {g_bad[:5]}")


@pytest.mark.parametrize("p", [5, 11])
def test_08_residue_coverage(p):
    t0 = time.time()
    reps = [trace_tally(p, 10_000), hurwitz_tally(p, 10_000), overpartition_tally(p, 10_000)]
    # the Hurwitz and Pbar tallies recomputed from the independent routes
    six = {n: hurwitz_oracle(n).six_times for n in range(3, 10_001) if n % 4 in (0, 3)}
    alt_h = tally(six.__getitem__, p, 10_000, indices=six)
    alt_w = tally(overpartition_product(10_001), p, 10_000)
    dt = time.time() - t0
    hit = all(r.all_residues_hit() for r in reps)
    golden = all([r.counts[i] for i in range(p)] == COVERAGE_GOLDENS[(p, r.label)] for r in reps)
    cross = alt_h.counts == reps[1].counts and alt_w.counts == reps[2].counts
    report(8, hit and golden and cross and dt < 300,
           f"p = {p}: all residues hit {hit}, goldens {golden}, cross-routes {cross}, {dt:.1f}s")


def _single_class(n1, ell, lam, eps, p, N):
    terms, m = {}, 1
    while n1 * m * m < N:
        e = prime_factors(m).get(ell, 0)
        terms[n1 * m * m] = (eps * kronecker((-1) ** lam, ell)) ** e * pow(m, lam, p)
        m += 1
    return LaurentSeries.from_dict(terms, N, GF(p))


def test_09_eigenform_pivot():
    p, chi = 5, QuadraticChar.trivial(4)
    rows = []
    for n1, ell, lam in ((1, 3, 1), (3, 7, 1), (2, 13, 2), (6, 7, 3), (1, 17, 1)):
        eps = kronecker(n1, ell)
        g = _single_class(n1, ell, lam, eps, p, 4000)
        zero = g.is_zero()
        rows.append((n1, ell, eigen_congruence_check(g, ell, lam, chi, eps, p),
                     zero or not eigen_congruence_check(g, ell, lam, chi, -eps, p),
                     eigen_pivot_holds(g, ell, lam, chi, p)))
    ok = all(all(r[2:]) for r in rows)
    report(9, ok, f"(n1, ell, matching eps passes, -eps fails, pivot lemma) {rows}")


def test_10_prime_scan():
    g = lifted_theta_cubed(5)
    dense = theta_lift(jacobi_theta(3000) ** 3, 5)
    g.prefetch(range(3000))
    same = all(g[n] == dense[n] for n in range(3000))
    chi = QuadraticChar.trivial(4)
    got = {
        "annihilate": find_hecke_primes(g, 25, chi, 5, "annihilate", 500, (-1, 20)),
        "double": find_hecke_primes(g, 25, chi, 5, "double", 500, (1, 20)),
    }
    ok = same and got == SCAN_GOLDEN and (got["annihilate"] or got["double"])
    report(10, bool(ok), f"lazy lift = theta_lift(T^3, 5) on 3000 terms: {same}; Q <= 500 scan {got}")
