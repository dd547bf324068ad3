#!/usr/bin/env python3
"""Counting monotone vertex labelings of planar rooted trees.

A labeling of a tree by {1, ..., m} is monotone when labels never decrease
from a vertex to its children, and restricted monotone when, additionally,
leaves take the top label m.  For a fixed tree the count is a polynomial in
m; summed over a family of trees, term by term in the leaf count, the
counts line up with the coefficients of the series solved elsewhere in the
package, which is why they make good cross-checks.  The script prints both
views plus the surjective counts that tie the polynomial to chain
quotients.
"""

from treeinverse.morph import (
    gamma_recursive,
    morphism_sequence,
    order_polynomial,
    surjective,
    tangent_like_numbers,
)
from treeinverse.trees import tree_from_text

TREE_TEXT = "(((L L) ((L L) L)) (L (L (L L))))"


def main() -> None:
    tree = tree_from_text(TREE_TEXT)
    print("tree:", TREE_TEXT)
    print("restricted monotone labelings with m = 2:",
          gamma_recursive(tree, 2, restricted=True))
    print("monotone labelings with m = 2:          ",
          gamma_recursive(tree, 2, restricted=False))
    print("surjective monotone labelings:          ", surjective(tree))
    print()

    p = order_polynomial(tree, restricted=False)
    print("count as a polynomial in m, degree", p.degree)
    print("  values at m = 1..5:", [int(p.eval(m)) for m in range(1, 6)])
    print("  binomial-basis coefficients (surjections onto a j-chain):")
    print("   ", p.binomial_coeffs)
    print()

    print("summed over all binary trees, restricted, m = 2:")
    print(" ", morphism_sequence(2, 2, True, 8))
    print("summed over all trees, m = 1 (plain tree counts):")
    print(" ", morphism_sequence("all", 1, True, 8))
    print("alternating-permutation-like diagonal:")
    print(" ", tangent_like_numbers(7))


if __name__ == "__main__":
    main()
