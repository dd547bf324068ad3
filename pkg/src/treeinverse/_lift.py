"""High-order integer power series from an algebraic equation, quickly.

Given P(y,t) = sum c_i(t) y^i with integer polynomial coefficients and an
integer-series branch y(t), Newton's iteration
y <- y - P(y)/P_y(y) doubles the number of correct coefficients per step.
Every quantity here lives in (Z/M)[[t]] for one odd modulus M chosen so
large that the true coefficients are recovered exactly from balanced
residues; working modulo M keeps the reciprocal of P_y (whose constant term
is a power of 2 for the curve we care about) in integer arithmetic.

Series are ascending lists of residues.  Multiplication packs a polynomial
into a single huge integer with fixed-width slots (Kronecker substitution),
multiplies once with gmpy2, and unpacks; GMP's FFT does the heavy lifting.
"""

from __future__ import annotations

import gmpy2

from .rings import ConsistencyError, InputError


def _mul_mod(a: list, b: list, n: int, modulus: int, slot_bytes: int) -> list:
    """First n coefficients of a*b, residues mod modulus, via one big product."""
    a = a[:n]
    b = b[:n]
    if not a or not b:
        return []
    width = slot_bytes * 8
    pa = int.from_bytes(
        b"".join(x.to_bytes(slot_bytes, "little") for x in a), "little"
    )
    pb = int.from_bytes(
        b"".join(x.to_bytes(slot_bytes, "little") for x in b), "little"
    )
    prod = int(gmpy2.mpz(pa) * gmpy2.mpz(pb))
    take = min(n, len(a) + len(b) - 1)
    raw = prod.to_bytes((len(a) + len(b)) * slot_bytes, "little")
    out = []
    for i in range(take):
        chunk = raw[i * slot_bytes : (i + 1) * slot_bytes]
        out.append(int.from_bytes(chunk, "little") % modulus)
    return out


class _ModSeries:
    """Arithmetic closure over one modulus with precomputed slot width."""

    def __init__(self, modulus: int, length_hint: int):
        if modulus % 2 == 0:
            raise InputError("modulus must be odd")
        self.modulus = modulus
        bits = 2 * modulus.bit_length() + max(length_hint, 2).bit_length() + 2
        self.slot_bytes = (bits + 7) // 8

    def reduce(self, a):
        return [x % self.modulus for x in a]

    def mul(self, a, b, n):
        return _mul_mod(a, b, n, self.modulus, self.slot_bytes)

    def add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = (out[i] + x) % self.modulus
        return out

    def sub(self, a, b):
        out = list(a) + [0] * max(0, len(b) - len(a))
        for i, x in enumerate(b):
            out[i] = (out[i] - x) % self.modulus
        return out

    def reciprocal(self, b, n):
        """1/b mod t^n by Newton doubling; needs b[0] invertible."""
        if not b or b[0] % self.modulus == 0:
            raise InputError("series reciprocal needs an invertible constant term")
        u = [pow(b[0], -1, self.modulus)]
        m = 1
        while m < n:
            m = min(2 * m, n)
            bu = self.mul(b, u, m)
            two_minus = [(-x) % self.modulus for x in bu]
            two_minus[0] = (two_minus[0] + 2) % self.modulus
            u = self.mul(u, two_minus, m)
        return u[:n]

    def poly_eval(self, coeff_polys, y, n):
        """sum coeff_polys[i] * y^i mod t^n by Horner, highest first."""
        acc = list(coeff_polys[-1][:n])
        for cp in reversed(coeff_polys[:-1]):
            acc = self.add(self.mul(acc, y, n), cp[:n])
        return acc


def lift_algebraic_series(
    curve_coeffs: list, seed: list, order: int, growth_bits_per_term: float = 3.0
) -> list:
    """Extend an integer series satisfying P(y,t) = 0 to the given order.

    curve_coeffs: ascending-degree integer coefficient lists c_0..c_d of P in
    y.  seed: ascending integer coefficients of y, exact as far as given (at
    least two terms).  Returns coefficients 0..order.  growth_bits_per_term
    calibrates the modulus: it must exceed log2 of the coefficient growth
    rate (for the curve used here the growth is about 2.83 bits per term).

    The result is verified by substituting back into P modulo both t^(order+1)
    and the modulus; a mismatch raises ConsistencyError.
    """
    if order < len(seed) - 1:
        return seed[: order + 1]
    if len(seed) < 2:
        raise InputError("seed must contain at least two coefficients")
    n = order + 1
    bits = int(growth_bits_per_term * n) + 192
    modulus = (1 << bits) | 1
    ctx = _ModSeries(modulus, 2 * n)

    cpolys = [ctx.reduce(c) for c in curve_coeffs]
    dpolys = [
        ctx.reduce([i * x for x in c]) for i, c in enumerate(curve_coeffs) if i > 0
    ]

    y = ctx.reduce(seed)
    m = len(seed)
    u = None
    while m < n:
        m2 = min(2 * m, n)
        deriv = ctx.poly_eval(dpolys, y, m)
        if u is None:
            u = ctx.reciprocal(deriv, m)
        else:
            # one refinement step reuses the previous half-precision inverse
            bu = ctx.mul(deriv, u, m)
            two_minus = [(-x) % modulus for x in bu]
            two_minus[0] = (two_minus[0] + 2) % modulus
            u = ctx.mul(u, two_minus, m)
        value = ctx.poly_eval(cpolys, y, m2)
        if any(value[:m]):
            raise ConsistencyError("seed does not satisfy the curve equation")
        correction = ctx.mul(value, u, m2)
        y = ctx.sub(y + [0] * (m2 - len(y)), correction)[:m2]
        m = m2

    residual = ctx.poly_eval(cpolys, y, n)
    if any(residual):
        raise ConsistencyError("lifted series fails the curve equation")

    half = modulus // 2
    out = [x - modulus if x > half else x for x in y]
    top = max(abs(x) for x in out)
    if top * 4 > modulus:
        raise ConsistencyError(
            "modulus margin too small for the lifted coefficients; "
            "increase growth_bits_per_term"
        )
    return out
