#!/usr/bin/env python3
"""Compositional inversion two ways: Newton iteration and tree counting.

revert_newton solves f(f^(-1)(X)) = X by doubling the working precision of a
truncated inverse, which is the standard computer-algebra route.  The
combinatorial route, invert_via_trees, encodes the same problem as a
fixed-point system for a one-letter spin model whose arity weights are read
off from the coefficients of f, so the inverse series arrives as a signed
sum over planar rooted trees.  Both must agree coefficient for coefficient,
and the script checks that they do on a hand-picked series and on the
simplest model of all, where the inverse coefficients are signed Catalan
numbers.
"""

from fractions import Fraction

from treeinverse.rings import QQ
from treeinverse.series import Series, compose_in_x, revert_newton
from treeinverse.solve import all_ones_model, invert_via_trees, solve


def main() -> None:
    order = 10
    coeffs = [0, -1, 1, Fraction(-1, 2), Fraction(2, 3)]
    f = Series.from_x_coeffs(QQ, coeffs, order)
    print("f =", f)
    print()

    by_trees = invert_via_trees(f)
    by_newton = revert_newton(f)
    print("inverse via trees: ", by_trees)
    print("inverse via Newton:", by_newton)
    print("agree:", by_trees == by_newton)
    print("f(inverse) =", compose_in_x(f, by_trees))
    print()

    system = solve(all_ones_model(QQ), order)
    print("all-ones model: signed Catalan numbers against a quadratic")
    print("  g  =", system.g_total)
    print("  g~ =", system.g_tilde_total)
    print("g matches the tree inversion of g~ = -X + X^2:",
          system.g_total == invert_via_trees(
              Series.from_x_coeffs(QQ, [0, -1, 1], order)))


if __name__ == "__main__":
    main()
