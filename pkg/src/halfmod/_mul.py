"""Truncated convolution of exact coefficient lists.

Short inputs use schoolbook multiplication; long ones are packed into a
single big integer (Kronecker substitution) and multiplied with GMP.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import gmpy2

#: switch to Kronecker substitution when both operands are at least this long
KRONECKER_CUTOFF = 48


def _schoolbook(a, b, n):
    out = [0] * n
    for i, ai in enumerate(a):
        if not ai:
            continue
        lim = min(len(b), n - i)
        for j in range(lim):
            out[i + j] += ai * b[j]
    return out


def _pack(coeffs, width):
    return int.from_bytes(b"".join(c.to_bytes(width, "little") for c in coeffs), "little")


def _pack_signed(coeffs, width):
    pos = _pack([c if c > 0 else 0 for c in coeffs], width)
    neg = _pack([-c if c < 0 else 0 for c in coeffs], width)
    return pos - neg


def _kronecker_int(a, b, n):
    """Signed integer convolution truncated to n terms."""
    ma = max(map(abs, a))
    mb = max(map(abs, b))
    if not ma or not mb:
        return [0] * n
    bound = ma * mb * min(len(a), len(b))
    width = (bound.bit_length() + 2 + 7) // 8
    bits = 8 * width
    z = gmpy2.mpz(_pack_signed(a, width)) * gmpy2.mpz(_pack_signed(b, width))
    half = 1 << (bits - 1)
    # every low digit lands in [0, 2^bits) once biased, so no borrows leak
    z = int(gmpy2.f_mod(z + _pack([half] * n, width), gmpy2.mpz(1) << (bits * n)))
    raw = z.to_bytes(width * n, "little")
    return [int.from_bytes(raw[k * width : (k + 1) * width], "little") - half for k in range(n)]


def _kronecker_nonneg(a, b, n, bound):
    width = (bound.bit_length() + 1 + 7) // 8
    z = gmpy2.mpz(_pack(a, width)) * gmpy2.mpz(_pack(b, width))
    z = int(gmpy2.f_mod(z, gmpy2.mpz(1) << (8 * width * n)))
    raw = z.to_bytes(width * n, "little")
    return [int.from_bytes(raw[k * width : (k + 1) * width], "little") for k in range(n)]


def convolve(a, b, n, kind="ZZ", p=None):
    """First ``n`` coefficients of the product of two coefficient lists.

    ``kind`` is one of ``"ZZ"`` (ints), ``"QQ"`` (Fractions) or ``"GF"``
    (ints already reduced into ``[0, p)``).
    """
    a = a[:n]
    b = b[:n]
    if n <= 0:
        return []
    if not a or not b:
        return [Fraction(0) if kind == "QQ" else 0] * n
    if kind == "QQ":
        da = lcm(*(Fraction(x).denominator for x in a))
        db = lcm(*(Fraction(x).denominator for x in b))
        ia = [int(x * da) for x in a]
        ib = [int(x * db) for x in b]
        d = da * db
        return [Fraction(c, d) for c in convolve(ia, ib, n, "ZZ")]
    if min(len(a), len(b)) < KRONECKER_CUTOFF:
        out = _schoolbook(a, b, n)
    elif kind == "GF":
        out = _kronecker_nonneg(a, b, n, (p - 1) ** 2 * min(len(a), len(b)))
    else:
        out = _kronecker_int(a, b, n)
    if kind == "GF":
        out = [c % p for c in out]
    return out
