"""Numeric singularity analysis for plane algebraic curves.

A power series y(t) that satisfies a polynomial equation P(y(t), t) = 0
inherits its coefficient growth from the singularity of y nearest the
origin.  For the curve studied in `loday` that singularity is a
square-root branch point: at t = rho two sheets of the curve collide,
y(t) behaves like h(t) + g(t) * sqrt(rho - t), and the coefficients obey

    |a_n|  ~  C * |rho|**(-n) * n**(-3/2)

with the constant determined by local data of P at the double point,

    gamma_sqrt_rho = sqrt| 2 * rho * P_t / P_yy |,
    C              = gamma_sqrt_rho / (2 * sqrt(pi)).

This module supplies the pieces of that analysis.  `real_roots` isolates
the real roots of an exact one-variable polynomial by Sturm counts and
bisection over Fraction endpoints, then polishes each root with Newton
iteration in mpmath.  `branch_point` locates rho inside a caller-supplied
hint interval, finds the double root y_rho as a root of dP/dy (much
better conditioned than chasing the collision in P itself), and packages
the growth constant.  `predict_coefficients` evaluates the law at a given
index, and `radius_report` surveys every real singularity candidate in an
interval: roots of the named discriminant factors, where sheets collide,
and roots of the leading coefficient, where a sheet escapes to infinity.

High-precision values are mpmath floats created under an explicit working
precision; every public function takes a `digits` argument (default 60)
and carries roughly 20 guard digits internally.  The exact part of the
pipeline, isolation, never rounds at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .rings import ConsistencyError, InputError

DEFAULT_DIGITS = 60

_GUARD = 20


def _as_fraction_scalar(x):
    """Interval endpoints arrive as int, Fraction, str, or float."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        # Read floats through their decimal spelling so that an endpoint
        # written as -0.15 means -3/20, not the nearest binary double.
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x)
    raise InputError(f"cannot use {x!r} as an interval endpoint")


# ----------------------------------------------------------------------
# Exact polynomial arithmetic on ascending Fraction coefficient lists.


def _poly_from(coeffs):
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_deriv(p):
    return [i * c for i, c in enumerate(p)][1:]


def _poly_eval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _poly_divmod(num, den):
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    num = list(num)
    q = [Fraction(0)] * max(0, len(num) - len(den) + 1)
    inv = 1 / den[-1]
    for shift in range(len(num) - len(den), -1, -1):
        coeff = num[shift + len(den) - 1] * inv
        if coeff:
            q[shift] = coeff
            for i, d in enumerate(den):
                num[shift + i] -= coeff * d
    rem = num[: len(den) - 1]
    while rem and rem[-1] == 0:
        rem.pop()
    return q, rem


def _poly_gcd(a, b):
    a, b = list(a), list(b)
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _squarefree_part(coeffs):
    """The same roots, each once: p divided by gcd(p, p')."""
    p = _poly_from(coeffs)
    if len(p) <= 1:
        return p
    g = _poly_gcd(p, _poly_deriv(p))
    if len(g) <= 1:
        return p
    q, r = _poly_divmod(p, g)
    if r:
        raise ConsistencyError("gcd failed to divide its polynomial")
    return q


def _deflate(p, root):
    """Divide p by (x - root) for a known exact rational root."""
    q, r = _poly_divmod(p, [-root, Fraction(1)])
    if r:
        raise ConsistencyError("deflation by a non-root")
    return q


# ----------------------------------------------------------------------
# Sturm chains: exact counts of distinct real roots in an interval.


def _sturm_chain(p):
    chain = [list(p), _poly_deriv(p)]
    while chain[-1]:
        _, r = _poly_divmod(chain[-2], chain[-1])
        chain.append([-c for c in r])
    chain.pop()
    return chain


def _sign_variations(chain, x):
    signs = []
    for p in chain:
        v = _poly_eval(p, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _count_roots(chain, lo, hi):
    """Distinct real roots in (lo, hi]; the chain's head must not vanish at lo."""
    return _sign_variations(chain, lo) - _sign_variations(chain, hi)


# ----------------------------------------------------------------------
# Root polishing at working precision.


def _mpf_from_fraction(r):
    return mpmath.mpf(r.numerator) / mpmath.mpf(r.denominator)


def _mpf_poly_eval(p, x):
    acc = mpmath.mpf(0)
    for c in reversed(p):
        if isinstance(c, Fraction):
            c = _mpf_from_fraction(c)
        acc = acc * x + c
    return acc


def _polish(p, dp, lo, hi, digits):
    """One simple root of p in [lo, hi], with a sign change across it.

    Exact bisection first narrows the bracket far enough that Newton
    converges from its midpoint; Newton then doubles the digit count per
    step.  If an iterate ever leaves the bracket the routine falls back
    to plain floating-point bisection, which the sign change keeps safe.
    """
    flo = _poly_eval(p, lo)
    fhi = _poly_eval(p, hi)
    for _ in range(64):
        mid = (lo + hi) / 2
        fmid = _poly_eval(p, mid)
        if fmid == 0:
            return _mpf_from_fraction(mid)
        if (flo < 0) == (fmid < 0):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid

    with mpmath.workdps(digits + _GUARD):
        a, b = _mpf_from_fraction(lo), _mpf_from_fraction(hi)
        x = (a + b) / 2
        eps = mpmath.mpf(10) ** (-(digits + _GUARD // 2))
        for _ in range(200):
            fx = _mpf_poly_eval(p, x)
            dfx = _mpf_poly_eval(dp, x)
            if dfx == 0:
                break
            step = fx / dfx
            x -= step
            if not (a <= x <= b):
                break
            if abs(step) <= eps * max(1, abs(x)):
                return x

        # Bisection fallback: ~3.4 bits per decimal digit requested.
        neg_at_a = _poly_eval(p, lo) < 0
        for _ in range(int((digits + _GUARD) * 3.5) + 8):
            x = (a + b) / 2
            fx = _mpf_poly_eval(p, x)
            if fx == 0:
                return x
            if (fx < 0) == neg_at_a:
                a = x
            else:
                b = x
        return (a + b) / 2


def real_roots(poly, interval, digits=DEFAULT_DIGITS):
    """All real roots of an exact polynomial in a closed interval.

    `poly` is an ascending coefficient list of ints, Fractions, or
    anything Fraction accepts.  The polynomial must be square-free;
    repeated factors break sign-change isolation, so they are rejected
    with instructions rather than guessed around.  Roots are returned in
    increasing order as mpmath floats carrying `digits` good digits.
    """
    lo = _as_fraction_scalar(interval[0])
    hi = _as_fraction_scalar(interval[1])
    if lo >= hi:
        raise InputError("interval must satisfy lo < hi")
    p = _poly_from(poly)
    if not p:
        raise InputError("the zero polynomial has no isolated roots")
    if len(p) == 1:
        return []
    g = _poly_gcd(p, _poly_deriv(p))
    if len(g) > 1:
        raise InputError(
            "polynomial has repeated factors; divide by gcd(p, p') and "
            "isolate roots of the square-free part instead"
        )

    exact = []
    if _poly_eval(p, lo) == 0:
        exact.append(lo)
        p = _deflate(p, lo)
    if len(p) > 1 and _poly_eval(p, hi) == 0:
        exact.append(hi)
        p = _deflate(p, hi)

    # Rational roots strictly inside the interval surface as exact zeros
    # of bisection midpoints; deflate and restart so Sturm counts stay
    # valid for the polynomial actually being isolated.
    while True:
        if len(p) <= 1:
            brackets = []
            break
        chain = _sturm_chain(p)
        restart = False
        brackets = []
        work = [(lo, hi, _count_roots(chain, lo, hi))]
        while work:
            a, b, n = work.pop()
            if n == 0:
                continue
            if n == 1:
                brackets.append((a, b))
                continue
            mid = (a + b) / 2
            if _poly_eval(p, mid) == 0:
                exact.append(mid)
                p = _deflate(p, mid)
                restart = True
                break
            left = _count_roots(chain, a, mid)
            work.append((a, mid, left))
            work.append((mid, b, n - left))
        if not restart:
            break

    dp = _poly_deriv(p)
    roots = [_polish(p, dp, a, b, digits) for a, b in brackets]
    with mpmath.workdps(digits + _GUARD):
        roots.extend(_mpf_from_fraction(r) for r in exact)
    return sorted(roots)


# ----------------------------------------------------------------------
# Branch-point data.


@dataclass(frozen=True)
class BranchPoint:
    """Local data of a square-root branch point of y(t).

    rho is the singular t, y_rho the double root in y above it,
    gamma_sqrt_rho the magnitude |gamma * sqrt(rho)| entering the
    coefficient law, factor the name of the discriminant factor that
    vanishes at rho, and digits the precision the values carry.
    """

    rho: object
    y_rho: object
    gamma_sqrt_rho: object
    factor: str
    digits: int

    @property
    def growth_constant(self):
        """C in |a_n| ~ C * |rho|**(-n) * n**(-3/2)."""
        with mpmath.workdps(self.digits + _GUARD):
            return self.gamma_sqrt_rho / (2 * mpmath.sqrt(mpmath.pi))


_DISCRIMINANT_FACTOR_NAMES = ("r1", "r2", "r3", "rinf")


def _curve_factor_polys(curve):
    out = {}
    for name in _DISCRIMINANT_FACTOR_NAMES:
        got = curve.discriminant_factors.get(name)
        if isinstance(got, list):
            out[name] = [int(c) for c in got]
    return out


def branch_point(curve, rho_hint_interval, digits=DEFAULT_DIGITS):
    """Locate the branch point of `curve` inside a hint interval.

    The hint interval must isolate exactly one root of exactly one named
    discriminant factor; that root is rho.  The double root y_rho above
    it is computed as the real root of dP/dy(., rho) at which P itself
    vanishes, and the growth data follows from the second-order local
    expansion of P.  Residuals are checked against 10**(8 - digits); the
    slack absorbs the size of the curve's integer coefficients.
    """
    lo = _as_fraction_scalar(rho_hint_interval[0])
    hi = _as_fraction_scalar(rho_hint_interval[1])
    if lo >= hi:
        raise InputError("hint interval must satisfy lo < hi")

    hits = []
    for name, coeffs in _curve_factor_polys(curve).items():
        sf = _squarefree_part(coeffs)
        if len(sf) <= 1:
            continue
        if _poly_eval(sf, lo) == 0 or _poly_eval(sf, hi) == 0:
            raise InputError("hint interval endpoint is itself a root; shrink it")
        chain = _sturm_chain(sf)
        n = _count_roots(chain, lo, hi)
        if n:
            hits.append((name, sf, n))
    if not hits:
        raise InputError("no discriminant-factor root in the hint interval")
    if len(hits) > 1 or hits[0][2] > 1:
        raise InputError("hint interval does not isolate a single root; shrink it")

    factor_name, sf, _ = hits[0]
    (rho_val,) = real_roots(sf, (lo, hi), digits=digits)

    with mpmath.workdps(digits + _GUARD):
        rho = +rho_val
        c_at_rho = [_mpf_poly_eval(c, rho) for c in curve.coeffs]
        dc_at_rho = [_mpf_poly_eval(c, rho) for c in curve.t_derivative_coeffs()]
        p_y = [i * c for i, c in enumerate(c_at_rho)][1:]
        p_yy = [i * c for i, c in enumerate(p_y)][1:]

        roots = mpmath.polyroots(
            list(reversed(p_y)), maxsteps=200, extraprec=digits
        )
        bound = mpmath.mpf(10) ** (8 - digits)
        imag_tol = mpmath.mpf(10) ** (-(digits // 2))
        best = None
        for r in roots:
            if abs(mpmath.im(r)) > imag_tol:
                continue
            y = mpmath.re(r)
            resid = abs(_mpf_poly_eval(c_at_rho, y))
            if best is None or resid < best[1]:
                best = (y, resid)
        if best is None or best[1] > bound:
            raise ConsistencyError(
                "no real root of dP/dy annihilates P at rho; not a "
                "square-root branch point at this precision"
            )
        y_rho, residual = best
        dpy = abs(_mpf_poly_eval(p_y, y_rho))
        if dpy > bound:
            raise ConsistencyError("dP/dy residual too large at the double root")
        curvature = _mpf_poly_eval(p_yy, y_rho)
        if abs(curvature) < mpmath.mpf(10) ** (-10):
            raise ConsistencyError("dd P/dy dy vanishes: root is more than double")
        p_t = _mpf_poly_eval(dc_at_rho, y_rho)
        gamma_sqrt_rho = mpmath.sqrt(abs(2 * rho * p_t / curvature))

    return BranchPoint(
        rho=rho,
        y_rho=y_rho,
        gamma_sqrt_rho=gamma_sqrt_rho,
        factor=factor_name,
        digits=digits,
    )


def predict_coefficients(bp: BranchPoint, n: int):
    """The coefficient-law value C * |rho|**(-n) * n**(-3/2), signed.

    A singularity on the negative real axis makes the coefficients
    alternate, so the sign (-1)**n is attached when rho < 0.
    """
    if n < 1:
        raise InputError("prediction needs n >= 1")
    with mpmath.workdps(bp.digits + _GUARD):
        value = (
            bp.growth_constant
            * abs(bp.rho) ** (-n)
            * mpmath.mpf(n) ** mpmath.mpf("-1.5")
        )
        if bp.rho < 0 and n % 2:
            value = -value
        return value


# ----------------------------------------------------------------------
# Survey of real singularity candidates.


def radius_report(curve, digits=DEFAULT_DIGITS, rho=None, interval=None):
    """All real singularity candidates of y(t) in an interval.

    Candidates come from two sources: roots of the named discriminant
    factors, where two sheets of the curve collide, and roots of the
    leading coefficient c4, where a sheet escapes to infinity.  Rows are
    sorted by distance from the origin and annotated with every source
    that vanishes there.  Passing the branch point's rho marks which row
    is the actual radius of convergence; candidates can lie closer to the
    origin than rho without being singularities of the chosen branch.
    The default interval is [-0.15, 0], wide enough to contain the whole
    candidate list of the curve in `loday`.
    """
    if interval is None:
        interval = (Fraction(-3, 20), Fraction(0))
    sources = dict(_curve_factor_polys(curve))
    sources["c4"] = list(curve.coeffs[-1])

    with mpmath.workdps(digits + _GUARD):
        tol = mpmath.mpf(10) ** (-(digits - 10))
        rows = []
        for name, coeffs in sources.items():
            sf = _squarefree_part(coeffs)
            if len(sf) <= 1:
                continue
            for root in real_roots(sf, interval, digits=digits):
                for row in rows:
                    if abs(row["t"] - root) <= tol:
                        row["names"].append(name)
                        break
                else:
                    rows.append({"t": root, "names": [name]})

        rows.sort(key=lambda row: (abs(row["t"]), row["t"]))
        out = []
        for row in rows:
            names = sorted(
                set(row["names"]),
                key=lambda n: (_DISCRIMINANT_FACTOR_NAMES + ("c4",)).index(n),
            )
            collide = any(n != "c4" for n in names)
            pole = "c4" in names
            notes = []
            if collide:
                notes.append("discriminant factor root: sheets collide")
            if pole:
                notes.append("leading coefficient vanishes: a sheet has a pole")
            if rho is not None:
                if abs(row["t"] - rho) <= tol:
                    notes.append("radius of convergence: dominant branch point")
                elif abs(row["t"]) > abs(rho) + tol:
                    notes.append("beyond the dominant radius")
            out.append(
                {"t": row["t"], "factor": ",".join(names), "note": "; ".join(notes)}
            )
        return out


def singularity_report(curve, rho_hint_interval, digits=DEFAULT_DIGITS) -> dict:
    """Branch point plus candidate table, with values rendered as strings.

    This is the JSON-friendly bundle the command line prints: rho, the
    double root above it, the growth constant, the working precision, and
    the full candidate table.
    """
    bp = branch_point(curve, rho_hint_interval, digits=digits)
    table = radius_report(curve, digits=digits, rho=bp.rho)
    fmt = lambda x: mpmath.nstr(x, digits, strip_zeros=False)
    return {
        "rho": fmt(bp.rho),
        "y_rho": fmt(bp.y_rho),
        "gamma_sqrt_rho": fmt(bp.gamma_sqrt_rho),
        "constant": fmt(bp.growth_constant),
        "factor": bp.factor,
        "digits": digits,
        "table": [
            {"t": fmt(row["t"]), "factor": row["factor"], "note": row["note"]}
            for row in table
        ],
    }
