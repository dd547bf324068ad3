#!/usr/bin/env python3
"""From an exact algebraic series to the growth law of its coefficients.

The nine-letter model shipped with the package produces a series y(t) that
satisfies a quartic polynomial equation P(t, y) = 0 with integer
coefficients.  Its coefficients a_n grow like C * gamma^n * n^(-3/2) with an
alternating sign, the universal square-root-singularity law.  The script
checks the quartic exactly, locates the dominant branch point of the curve
with certified real-root isolation, prints the constants of the growth law
to 60 digits, and compares the prediction against exact coefficients pulled
from a high-order lift of the series.
"""

from fractions import Fraction

import mpmath

from treeinverse.asymptotics import branch_point, predict_coefficients
from treeinverse.loday import lift_from_curve, load_curve, loday_series, minpoly_check

HINT = (Fraction("-0.1413"), Fraction("-0.1412"))


def main() -> None:
    y = loday_series(12)
    print("series coefficients:", [str(c) for c in y.x_coeffs()][1:])

    curve = load_curve()
    residual = minpoly_check(y)
    print("quartic satisfied through the working order:", residual.is_zero())
    print()

    bp = branch_point(curve, HINT, digits=60)
    with mpmath.workdps(60):
        print("dominant branch point (60 digits)")
        print("  rho   =", mpmath.nstr(bp.rho, 50))
        print("  y(rho) =", mpmath.nstr(bp.y_rho, 30))
        print("  growth constant =", mpmath.nstr(bp.growth_constant, 20))
    print()

    top = 1600
    lifted = lift_from_curve(curve, loday_series(12), top)
    print("exact lift to order", top,
          "(a_%d has %d digits)" % (top, len(str(abs(int(lifted.coeff_x(top)))))))
    print("law C * gamma^n * n^(-3/2) closing in on the exact coefficients:")
    with mpmath.workdps(60):
        for n in (200, 400, 800, 1600):
            exact = int(lifted.coeff_x(n))
            predicted = predict_coefficients(bp, n)
            ratio = mpmath.mpf(abs(exact)) / abs(predicted)
            print("  n = %4d   exact / predicted = %s" % (n, mpmath.nstr(ratio, 8)))


if __name__ == "__main__":
    main()
