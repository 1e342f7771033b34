from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from halfmod import _mul
from halfmod.arith import QuadraticChar
from halfmod.errors import FractionalExponent, NonUnitLeading, RingMismatch
from halfmod.qseries import (
    GF,
    QQ,
    ZZ,
    EtaQuotientSpec,
    LaurentSeries,
    delta_series,
    eisenstein,
    eta_quotient,
    euler_power,
    invert,
    jacobi_theta,
    theta_op,
    twist,
)
from halfmod.partitions import overpartition_enumerate

ints = st.integers(-10**6, 10**6)


def schoolbook(a, b, n):
    return oracles.poly_mul(list(a), list(b), n)


# --- multiplication kernels -------------------------------------------------


@settings(max_examples=60)
@given(st.lists(ints, min_size=1, max_size=200), st.lists(ints, min_size=1, max_size=200))
def test_convolve_zz_matches_schoolbook(a, b):
    n = len(a) + len(b) - 1
    assert _mul.convolve(a, b, n, "ZZ") == schoolbook(a, b, n)


@settings(max_examples=40)
@given(st.lists(st.integers(0, 4), min_size=50, max_size=150), st.lists(st.integers(0, 4), min_size=50, max_size=150))
def test_convolve_gf_matches_schoolbook(a, b):
    n = min(len(a), len(b))
    assert _mul.convolve(a, b, n, "GF", 5) == [x % 5 for x in schoolbook(a, b, n)]


@settings(max_examples=30)
@given(st.lists(st.fractions(max_denominator=50), min_size=1, max_size=80),
       st.lists(st.fractions(max_denominator=50), min_size=1, max_size=80))
def test_convolve_qq_matches_schoolbook(a, b):
    n = len(a) + len(b) - 1
    got = _mul.convolve(a, b, n, "QQ")
    want = [sum((a[i] * b[k - i] for i in range(len(a)) if 0 <= k - i < len(b)), Fraction(0)) for k in range(n)]
    assert got == want


def test_convolve_large_signed_values():
    a = [(-1) ** i * 10**40 + i for i in range(300)]
    b = [(-1) ** (i // 3) * (7**i % 10**30) for i in range(300)]
    assert _mul.convolve(a, b, 300, "ZZ") == schoolbook(a, b, 300)


# --- LaurentSeries basics ---------------------------------------------------


def test_mul_examples():
    f = LaurentSeries([1, 1], prec=10)
    g = LaurentSeries([1, -1], prec=10)
    assert f * g == LaurentSeries([1, 0, -1], prec=10)
    a = LaurentSeries.monomial(-1, 10)
    b = LaurentSeries.monomial(2, 10)
    prod = a * b
    assert prod[1] == 1 and dict(prod.nonzero()) == {1: 1}


def test_delta_squared_against_direct_eta48():
    d = eta_quotient({1: 24}, 40)
    sq = d * d
    off, want = oracles.eta_quotient_naive({1: 48}, 38)
    assert off == 2
    assert [sq[n] for n in range(2, 40)] == want
    assert sq[2] == 1 and sq[3] == -48


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        LaurentSeries([1], prec=3) + LaurentSeries([1], prec=3, ring=GF(5))
    with pytest.raises(RingMismatch):
        LaurentSeries([1], prec=3, ring=GF(5)) * LaurentSeries([1], prec=3, ring=GF(7))


def test_precision_rule():
    f = LaurentSeries([1, 2, 3], prec=3)            # known below q^3
    g = LaurentSeries([5], offset=2, prec=6)       # 5 q^2, known below q^6
    h = f * g
    assert h.prec == min(3 + 2, 6 + 0)
    assert h[2] == 5 and h[3] == 10 and h[4] == 15


def test_getitem_beyond_precision():
    f = LaurentSeries([1, 2], prec=2)
    assert f[-5] == 0
    with pytest.raises(IndexError):
        f[2]


def test_invert_examples():
    inv = invert(LaurentSeries([1, -1], prec=12))
    assert inv == LaurentSeries([1] * 12, prec=12)
    g = invert(LaurentSeries([0, 1, -1], prec=12))
    assert g.offset == -1 and g[-1] == 1 and g[5] == 1


def test_invert_eta2_gives_overpartitions():
    N = 41
    # q-free parts: prod (1 - q^2n) / prod (1 - q^n)^2
    e2 = LaurentSeries(euler_power(1, N), prec=N).subs_power(2).truncate(N)
    W = e2 * invert(LaurentSeries(euler_power(2, N), prec=N))
    assert [W[n] for n in range(N)] == [overpartition_enumerate(n).count for n in range(N)]


def test_invert_nonunit():
    with pytest.raises(NonUnitLeading):
        invert(LaurentSeries([2, 1], prec=5))
    with pytest.raises(NonUnitLeading):
        invert(LaurentSeries([5, 5], prec=5, ring=GF(5)))
    # 5 = 0 in GF(5), so the leading term is q
    assert invert(LaurentSeries([5, 1], prec=5, ring=GF(5))).offset == -1
    assert invert(LaurentSeries([2, 1], prec=5, ring=QQ))[0] == Fraction(1, 2)


@settings(max_examples=40)
@given(st.lists(st.integers(-20, 20), min_size=1, max_size=60), st.integers(-5, 5))
def test_invert_roundtrip(tail, off):
    f = LaurentSeries([1] + tail, offset=off, prec=off + 1 + len(tail))
    one = f * invert(f)
    assert one[0] == 1
    assert all(one[n] == 0 for n in range(one.offset, one.prec) if n)


@settings(max_examples=40)
@given(st.lists(st.integers(-99, 99), min_size=1, max_size=40),
       st.lists(st.integers(-99, 99), min_size=1, max_size=40),
       st.lists(st.integers(-99, 99), min_size=1, max_size=40))
def test_ring_laws(a, b, c):
    f, g, h = (LaurentSeries(x, prec=len(x)) for x in (a, b, c))
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@settings(max_examples=40)
@given(st.lists(st.integers(-99, 99), min_size=1, max_size=60), st.sampled_from([5, 7, 11]))
def test_reduction_is_a_ring_map(a, p):
    f = LaurentSeries(a, prec=len(a))
    g = LaurentSeries(list(reversed(a)), prec=len(a))
    assert (f * g).congruent(f.reduce(p) * g.reduce(p), p)


@settings(max_examples=30)
@given(st.lists(st.integers(-9, 9), min_size=1, max_size=30), st.integers(-4, 4))
def test_json_roundtrip(a, off):
    for ring in (ZZ, QQ, GF(7)):
        f = LaurentSeries(a, offset=off, ring=ring)
        assert LaurentSeries.from_json(f.to_json()) == f


def test_json_is_stable():
    f = LaurentSeries([Fraction(1, 3), 2], offset=-1, ring=QQ)
    assert f.to_json() == '{"coeffs": ["1/3", "2"], "offset": -1, "precision": 1, "ring": "QQ"}'


def test_pow_zero_and_negative():
    f = LaurentSeries([0, 1, 3], prec=6)
    assert (f**0)[0] == 1
    assert (f**-1 * f)[0] == 1


# --- eta quotients ----------------------------------------------------------


def test_eta24_is_delta():
    d = eta_quotient({1: 24}, 8)
    assert [d[n] for n in range(1, 8)] == [1, -24, 252, -1472, 4830, -6048, -16744]
    assert delta_series(8) == d


@pytest.mark.parametrize("r", [-3, -1, 1, 2, 5, 24])
def test_euler_power_against_product(r):
    assert list(euler_power(r, 30)) == oracles.euler_product(r, 30)


@pytest.mark.parametrize("spec", [{2: 1, 1: -2}, {1: 2, 2: -1}, {1: 8, 2: 8}, {1: 4, 2: -2, 4: 6}])
def test_eta_quotient_against_naive(spec):
    s = EtaQuotientSpec(spec)
    v = s.leading_exponent()
    f = eta_quotient(spec, v + 30)
    off, want = oracles.eta_quotient_naive(spec, 30)
    assert off == v
    assert [f[n] for n in range(v, v + 30)] == want


def test_overpartition_eta_quotient():
    W = eta_quotient({2: 1, 1: -2}, 6)
    assert [W[n] for n in range(6)] == [1, 2, 4, 8, 14, 24]


def test_h_assembly():
    e4 = eisenstein(4, 10).to_integer().subs_power(4)
    h = eta_quotient({1: 2, 2: -1}, 40) * invert(eta_quotient({4: 6}, 44)) * e4
    assert h[-1] == 1 and h[0] == -2 and h[3] == 248 and h[4] == -492


def test_fractional_exponent():
    with pytest.raises(FractionalExponent):
        eta_quotient({1: 1}, 5)
    with pytest.raises(FractionalExponent):
        eta_quotient({4: 25, 20: -1}, 5)


def test_eta_spec_merges():
    s = EtaQuotientSpec([(1, 2), (1, -2), (2, 3)])
    assert s.factors == ((2, 3),)
    assert s.weight == Fraction(3, 2)


# --- Eisenstein, theta, twist ------------------------------------------------


def test_eisenstein_examples():
    E4 = eisenstein(4, 10)
    assert E4[0] == 1 and E4[1] == 240 and E4[2] == 2160 and E4[3] == 6720
    assert E4.reduce(5) == LaurentSeries([1], prec=10, ring=GF(5))


@pytest.mark.parametrize("k", [4, 6, 8, 10, 12, 14])
def test_eisenstein_against_sigma(k):
    E = eisenstein(k, 30)
    c = Fraction(-2 * k) / oracles.bernoulli(k)
    assert all(E[n] == c * oracles.sigma(k - 1, n) for n in range(1, 30))


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17])
def test_eisenstein_p_minus_1_is_one_mod_p(p):
    assert eisenstein(p - 1, 500).reduce(p) == LaurentSeries([1], prec=500, ring=GF(p))


def test_ramanujan_691():
    # E_12 - Delta * 65520/691 has integral sigma_11 coefficients; tau = sigma_11 mod 691
    d = delta_series(200)
    assert all((d[n] - oracles.sigma(11, n)) % 691 == 0 for n in range(1, 200))


def test_theta_op_examples():
    assert theta_op(LaurentSeries([1], prec=5)).is_zero()
    assert theta_op(LaurentSeries([0, 1, 3], prec=5)) == LaurentSeries([0, 1, 6], prec=5)
    assert theta_op(LaurentSeries.monomial(-1, 3))[-1] == -1


def test_twist_examples():
    f = LaurentSeries([0, 1, 1, 1], prec=4)
    assert twist(f, QuadraticChar.trivial(1)) == f
    assert twist(f, QuadraticChar.chi(5)) == LaurentSeries([0, 1, -1, -1], prec=4)


@settings(max_examples=30)
@given(st.lists(st.integers(-50, 50), min_size=1, max_size=40), st.sampled_from([3, 5, 7]))
def test_twist_twice_kills_multiples(a, Q):
    f = LaurentSeries(a, prec=len(a))
    chi = QuadraticChar.chi(Q)
    g = twist(twist(f, chi), chi)
    assert all(g[n] == (0 if n % Q == 0 else f[n]) for n in range(len(a)))


def test_jacobi_theta():
    assert jacobi_theta(5) == LaurentSeries([1, 2, 0, 0, 2], prec=5)
    T3 = jacobi_theta(50) ** 3
    assert T3[0] == 1 and T3[1] == 6
    assert [T3[n] for n in range(50)] == [oracles.r3_count(n) for n in range(50)]
