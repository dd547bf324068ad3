"""The nine-letter square-lattice system and its degree-4 algebraic curve.

One specific arity-2 model on the alphabet {o, N, NW, W, SW, S, SE, E, NE}
has a generating function y(t) = -t + sum of the nine per-letter series that
satisfies a quartic P(y, t) = 0 with explicit integer polynomial
coefficients.  This module ships those matrices and curve coefficients as a
checksummed data file, recomputes y from the fixed-point solver, checks the
printed reduction g_o = g_N = g_W and the reduced seven-equation system,
substitutes y into P, and lifts y to high order by Newton iteration on the
curve.  The discriminant's printed factorization is cross-checked by an
exact resultant computation.
"""

from __future__ import annotations

import hashlib
import json
import math
from fractions import Fraction
from importlib import resources

from ._lift import lift_algebraic_series
from .rings import QQ, ConsistencyError, InputError
from .series import Series
from .solve import solve_regular
from .spin import SpinModel, uniform_model

_DATA_CHECKSUM = "311e2b3ca025881ef8abe9cc62bf3c21b2656a4b45a133573374aff1465e8d96"


# -- integer polynomial helpers (ascending coefficient lists) ---------------


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _ppow(a, e):
    out = [1]
    for _ in range(e):
        out = _pmul(out, a)
    return out


def _ptrim(a):
    n = len(a)
    while n > 1 and a[n - 1] == 0:
        n -= 1
    return list(a[:n])


def _peval(a, t):
    acc = a[-1] * 0  # zero of whatever arithmetic t uses
    for c in reversed(a):
        acc = acc * t + c
    return acc


def _pdiv_exact(num, den):
    """Quotient of an exact polynomial division; None when it does not divide."""
    num = [Fraction(x) for x in _ptrim(num)]
    den = [Fraction(x) for x in _ptrim(den)]
    if len(num) < len(den):
        return None
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    rem = list(num)
    for i in range(len(q) - 1, -1, -1):
        coef = rem[i + len(den) - 1] / den[-1]
        q[i] = coef
        if coef:
            for j, d in enumerate(den):
                rem[i + j] -= coef * d
    if any(rem[: len(den) - 1]):
        return None
    return q


# -- curve -------------------------------------------------------------------


class AlgebraicCurve:
    """P(y, t) = sum_i c_i(t) y^i with exact integer polynomial coefficients.

    coeffs holds ascending-degree integer lists c_0..c_d; discriminant
    factors (r1, r2, r3, r_inf and the known ends of r4) ride along as
    metadata for the singularity analysis.
    """

    def __init__(self, coeffs, discriminant_factors=None):
        self.coeffs = [_ptrim([int(x) for x in c]) for c in coeffs]
        if len(self.coeffs) < 2:
            raise InputError("a curve needs degree at least 1 in y")
        self.discriminant_factors = discriminant_factors or {}

    @property
    def y_degree(self):
        return len(self.coeffs) - 1

    def derivative_coeffs(self):
        """Coefficient lists of dP/dy, ascending in y."""
        return [[i * x for x in c] for i, c in enumerate(self.coeffs) if i >= 1]

    def t_derivative_coeffs(self):
        """Coefficient lists of dP/dt, ascending in y."""
        return [[j * x for j, x in enumerate(c)][1:] or [0] for c in self.coeffs]

    def y_polynomial_at(self, t_value):
        """[c_0(t), ..., c_d(t)] evaluated with whatever arithmetic t uses."""
        return [_peval(c, t_value) for c in self.coeffs]

    def eval_series(self, y: Series) -> Series:
        """P(y(t), t) as a truncated series; zero iff y lies on the curve."""
        ring = y.ring
        order = y.order
        acc = Series.from_x_coeffs(ring, self.coeffs[-1], order, y.weights)
        for c in reversed(self.coeffs[:-1]):
            acc = acc * y + Series.from_x_coeffs(ring, c, order, y.weights)
        return acc

    def factor(self, name):
        got = self.discriminant_factors.get(name)
        if got is None:
            raise InputError(f"no discriminant factor named {name!r}")
        return [int(x) for x in got]


def _data_payload():
    text = resources.files("treeinverse").joinpath("data/loday_curve.json").read_text()
    data = json.loads(text)
    stored = data.pop("checksum", None)
    canonical = json.dumps(data, sort_keys=True, separators=(",", ":"))
    digest = hashlib.sha256(canonical.encode()).hexdigest()
    if stored != digest or digest != _DATA_CHECKSUM:
        raise ConsistencyError("curve data file failed its checksum")
    return data


_payload_cache = None


def _payload():
    global _payload_cache
    if _payload_cache is None:
        data = _data_payload()
        if int(data["c"][1][0]) != 1024:
            raise ConsistencyError("curve data spot check failed: c1(0) != 1024")
        _payload_cache = data
    return _payload_cache


def curve_from_json(data) -> AlgebraicCurve:
    """Build a curve from a parsed payload: coefficient lists under "c"
    (ascending in t, one list per power of y), plus optional named
    discriminant factors."""
    return AlgebraicCurve(
        [[int(x) for x in c] for c in data["c"]],
        discriminant_factors=data.get("discriminant_factors", {}),
    )


def load_curve() -> AlgebraicCurve:
    return curve_from_json(_payload())


# -- the model and its series -------------------------------------------------


def loday_model(ring=QQ) -> SpinModel:
    """The nine-letter arity-2 model with the shipped 0/1 matrices, Y = 1."""
    data = _payload()
    alphabet = list(data["alphabet"])
    m1 = [[ring.coerce(v) for v in row] for row in data["m1"]]
    m2 = [[ring.coerce(v) for v in row] for row in data["m2"]]
    return uniform_model(ring, alphabet, [m1, m2], y_values={a: 1 for a in alphabet})


_REDUCED_ALPHABET = ["o", "NW", "SW", "S", "SE", "E", "NE"]
_REDUCED_M1 = [
    [1, 0, 0, 0, 0, 0, 0],
    [3, 1, 0, 0, 0, 0, 0],
    [3, 1, 1, 0, 0, 0, 0],
    [2, 0, 0, 0, 0, 0, 0],
    [3, 1, 0, 1, 0, 0, 0],
    [3, 0, 0, 0, 0, 0, 0],
    [3, 1, 0, 0, 0, 0, 0],
]
_REDUCED_M2 = [
    [2, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0],
    [1, 1, 1, 1, 0, 0, 0],
    [0, 0, 1, 0, 1, 1, 1],
    [0, 1, 0, 0, 0, 1, 1],
    [0, 0, 0, 0, 0, 1, 1],
]
_REDUCED_MULTIPLICITY = {"o": 3, "NW": 1, "SW": 1, "S": 1, "SE": 1, "E": 1, "NE": 1}


def reduced_model(ring=QQ) -> SpinModel:
    """Seven-equation system obtained by eliminating g_N = g_W = g_o.

    The eliminated letters fold into integer matrix entries; the full sum of
    nine series becomes -t + sum of multiplicity * g over this alphabet.
    """
    m1 = [[ring.coerce(v) for v in row] for row in _REDUCED_M1]
    m2 = [[ring.coerce(v) for v in row] for row in _REDUCED_M2]
    return uniform_model(
        ring, list(_REDUCED_ALPHABET), [m1, m2],
        y_values={a: 1 for a in _REDUCED_ALPHABET},
    )


def loday_system(order: int):
    """Raw solver output for the nine-letter model (both g and g~)."""
    if order < 2:
        raise InputError("order must be at least 2")
    return solve_regular(loday_model(), order)


def assert_reduction(system) -> None:
    """The printed symmetry: the o, N and W components coincide."""
    if not (system.g["o"] == system.g["N"] == system.g["W"]):
        raise ConsistencyError("expected g_o = g_N = g_W in the nine-letter system")


def loday_series(order: int) -> Series:
    """y(t) = -t + sum of the nine per-letter series, checked for symmetry."""
    system = loday_system(order)
    assert_reduction(system)
    return system.g_total


def loday_series_complementary(order: int) -> Series:
    """y~(u) = -u + sum of the nine complementary series."""
    return loday_system(order).g_tilde_total


def reduced_series(order: int) -> Series:
    """The same y(t) from the seven-equation system, for cross-checking."""
    system = solve_regular(reduced_model(), order)
    total = -Series.x(QQ, order)
    for alpha, mult in _REDUCED_MULTIPLICITY.items():
        total = total + system.g[alpha].scale(mult)
    return total


def minpoly_check(y: Series, curve: AlgebraicCurve = None) -> Series:
    """Residual P(y(t), t); identically zero when y solves the curve."""
    if curve is None:
        curve = load_curve()
    if not y.is_pure_x():
        raise InputError("minimal polynomial check needs a univariate series")
    return curve.eval_series(y)


def transposition_check(order: int, curve: AlgebraicCurve = None) -> Series:
    """Residual P(u, y~(u)): the complementary series solves the transposed
    curve, i.e. P with the roles of the two coordinates swapped."""
    if curve is None:
        curve = load_curve()
    y_tilde = loday_series_complementary(order)
    ring = y_tilde.ring
    u = Series.x(ring, order)
    # P(u, y~) = sum_i c_i(y~) * u^i: evaluate each c_i at the series y~,
    # then Horner in u.
    acc = None
    for c in reversed(curve.coeffs):
        c_of_ytilde = _series_poly_eval(c, y_tilde)
        acc = c_of_ytilde if acc is None else acc * u + c_of_ytilde
    return acc


def _series_poly_eval(int_poly, s: Series) -> Series:
    """p(s) for an integer coefficient list p and a series s, by Horner."""
    ring = s.ring
    acc = Series.const(ring, int_poly[-1], s.order, s.weights)
    for c in reversed(int_poly[:-1]):
        acc = acc * s + Series.const(ring, c, s.order, s.weights)
    return acc


def lift_from_curve(curve: AlgebraicCurve, seed: Series, order: int) -> Series:
    """Newton-extend an integer-coefficient branch of the curve to high order.

    The seed must already satisfy the curve to its own order; its
    coefficients are preserved verbatim and the result is verified against
    the curve before being returned.
    """
    if curve is None:
        curve = load_curve()
    if not seed.is_pure_x():
        raise InputError("lifting needs a univariate seed")
    ints = []
    for c in seed.x_coeffs():
        f = Fraction(c)
        if f.denominator != 1:
            raise InputError("lifting is implemented for integer-coefficient branches")
        ints.append(f.numerator)
    lifted = lift_algebraic_series(curve.coeffs, ints, order)
    return Series.from_x_coeffs(QQ, lifted, order)


# -- discriminant cross-check -------------------------------------------------


def _det_bareiss(m):
    """Exact integer determinant, fraction-free Gaussian elimination."""
    a = [row[:] for row in m]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _resultant_y(curve: AlgebraicCurve):
    """Res_y(P, dP/dy) as an exact integer polynomial in t.

    The Sylvester determinant is evaluated at enough integer points and
    interpolated; 7x7 integer determinants keep everything exact.
    """
    p = curve.coeffs
    q = curve.derivative_coeffs()
    dp, dq = len(p) - 1, len(q) - 1
    size = dp + dq
    deg_bound = dq * max(len(c) - 1 for c in p) + dp * max(len(c) - 1 for c in q)
    nodes = []
    values = []
    t = 0
    while len(nodes) < deg_bound + 1:
        t = -t + (1 if t <= 0 else 0)  # 0, 1, -1, 2, -2, ...
        pe = [_peval(c, t) for c in p]
        qe = [_peval(c, t) for c in q]
        m = []
        for i in range(dq):
            m.append([0] * i + list(reversed(pe)) + [0] * (dq - 1 - i))
        for i in range(dp):
            m.append([0] * i + list(reversed(qe)) + [0] * (dp - 1 - i))
        nodes.append(t)
        values.append(_det_bareiss(m))
    # Newton divided differences, then expansion to monomial coefficients
    coeffs_dd = [Fraction(v) for v in values]
    for j in range(1, len(nodes)):
        for i in range(len(nodes) - 1, j - 1, -1):
            coeffs_dd[i] = (coeffs_dd[i] - coeffs_dd[i - 1]) / (nodes[i] - nodes[i - j])
    basis = [Fraction(1)]
    out = [Fraction(0)] * len(nodes)
    for j, alpha in enumerate(coeffs_dd):
        for i, b in enumerate(basis):
            out[i] += alpha * b
        new_basis = [Fraction(0)] * (len(basis) + 1)
        for i, b in enumerate(basis):
            new_basis[i + 1] += b
            new_basis[i] -= b * nodes[j]
        basis = new_basis
    ints = []
    for x in _ptrim(out):
        if x.denominator != 1:
            raise ConsistencyError("resultant interpolation gave a non-integer")
        ints.append(x.numerator)
    return ints


def discriminant_check(curve: AlgebraicCurve = None) -> dict:
    """Divide Res_y(P, P_y) by c4 and the printed factors; inspect the rest.

    The printed factorization says the quotient must be the square of the
    one factor whose middle is not printed: a degree-53 polynomial with
    known leading and trailing coefficients.  We verify the quotient has
    degree 106, is a perfect square, and that the square root's printed ends
    match.
    """
    if curve is None:
        curve = load_curve()
    res = _resultant_y(curve)
    quotient = _pdiv_exact(res, curve.coeffs[-1])
    if quotient is None:
        raise ConsistencyError("resultant is not divisible by the leading coefficient")
    for name, power in (("r1", 2), ("r2", 1), ("r3", 2), ("rinf", 1)):
        divisor = _ppow(curve.factor(name), power) if power > 1 else curve.factor(name)
        quotient = _pdiv_exact(quotient, divisor)
        if quotient is None:
            raise ConsistencyError(f"discriminant not divisible by {name}^{power}")
    quotient = _ptrim([Fraction(x) for x in quotient])
    degree = len(quotient) - 1
    report = {"quotient_degree": degree, "is_square": False, "ends_match": False}
    if degree % 2:
        return report
    # try to extract an integer square root, constant term upward
    half = degree // 2
    c0 = quotient[0]
    if c0 <= 0:
        return report
    s0 = _fraction_sqrt(c0)
    if s0 is None:
        return report
    trailing = [int(x) for x in curve.discriminant_factors.get("r4_trailing", [])]
    if trailing and trailing[-1] < 0:
        s0 = -s0
    s = [s0]
    for j in range(1, half + 1):
        acc = quotient[j]
        for i in range(1, j):
            if i <= half and j - i <= half and i < len(s) and j - i < len(s):
                acc -= s[i] * s[j - i]
        s.append(acc / (2 * s0))
    square = _pmul(s, s)
    square = square + [0] * (len(quotient) - len(square))
    if [Fraction(x) for x in square] != quotient:
        return report
    report["is_square"] = True
    report["sqrt_degree"] = half
    leading = [int(x) for x in curve.discriminant_factors.get("r4_leading", [])]
    ok = True
    for i, want in enumerate(leading):
        ok = ok and s[half - i] == want
    for i, want in enumerate(reversed(trailing)):
        ok = ok and s[i] == want
    report["ends_match"] = ok
    report["sqrt_leading"] = [int(x) for x in s[half : half - len(leading) : -1]] if leading else []
    report["sqrt_trailing"] = [int(x) for x in s[: len(trailing)]]
    return report


def _fraction_sqrt(f: Fraction):
    num = math.isqrt(f.numerator)
    den = math.isqrt(f.denominator)
    if num * num == f.numerator and den * den == f.denominator:
        return Fraction(num, den)
    return None
