"""Monotone tree labelings: recursions, families, surjections, polynomials."""

from fractions import Fraction
from itertools import count

import pytest

from treeinverse.morph import (
    comparable_pairs_sequence,
    count_bruteforce,
    gamma_recursive,
    morphism_sequence,
    order_polynomial,
    surjective,
    surjective_total,
    tangent_like_numbers,
)
from treeinverse.rings import InputError, SizeLimitError
from treeinverse.trees import enumerate_general, tree_from_text

BIG = "(((L L) ((L L) L)) (L (L (L L))))"


class TestSingleTree:
    def test_big_tree_values(self):
        t = tree_from_text(BIG)
        assert gamma_recursive(t, 2, restricted=True) == 29
        assert gamma_recursive(t, 2, restricted=False) == 1289
        assert surjective(t) == 492011520

    def test_three_chain(self):
        assert gamma_recursive(tree_from_text("((L L) L)"), 3) == 53

    def test_m_zero(self):
        assert gamma_recursive(tree_from_text("(L L)"), 0) == 0
        assert count_bruteforce(tree_from_text("(L L)"), 0) == 0

    def test_negative_m(self):
        with pytest.raises(InputError):
            gamma_recursive(tree_from_text("(L L)"), -1)

    def test_bruteforce_guard(self):
        t = tree_from_text(BIG)
        with pytest.raises(SizeLimitError):
            count_bruteforce(t, 100)


class TestBruteforceAgreement:
    def test_counts_small_trees(self):
        for t in enumerate_general(count(1), 8):
            for m in (1, 2, 3):
                for restricted in (False, True):
                    assert count_bruteforce(t, m, restricted) == gamma_recursive(
                        t, m, restricted
                    ), (t.to_text(), m, restricted)

    def test_surjections_small_trees(self):
        for t in enumerate_general(count(1), 6):
            n = t.vertex_count()
            assert count_bruteforce(t, n, surjective=True) == surjective(t), t.to_text()

    def test_big_tree_bruteforce(self):
        t = tree_from_text(BIG)
        assert count_bruteforce(t, 2, restricted=True) == 29
        assert count_bruteforce(t, 2, restricted=False) == 1289


class TestFamilySequences:
    def test_binary_m2(self):
        assert morphism_sequence(2, 2, True, 8) == [1, 2, 6, 21, 80, 322, 1348, 5814]
        assert morphism_sequence(2, 2, False, 6) == [2, 5, 22, 118, 706, 4530]

    def test_all_trees_m2(self):
        assert morphism_sequence("all", 2, True, 8) == [
            1, 2, 5, 15, 50, 178, 663, 2553,
        ]
        assert morphism_sequence("all", 2, False, 8) == [
            2, 3, 9, 34, 145, 667, 3231, 16247,
        ]

    def test_m1_counts_trees(self):
        assert morphism_sequence(2, 1, True, 7) == [1, 1, 2, 5, 14, 42, 132]

    def test_sequences_sum_gammas(self):
        got = morphism_sequence("all", 2, False, 6)
        for n in range(1, 7):
            by_hand = sum(
                gamma_recursive(t, 2)
                for t in enumerate_general(count(1), n)
                if t.vertex_count() == n
            )
            assert got[n - 1] == by_hand

    def test_bad_family(self):
        with pytest.raises(InputError):
            morphism_sequence(1, 2, True, 4)
        with pytest.raises(InputError):
            morphism_sequence("some", 2, True, 4)


class TestComparablePairs:
    def test_all_trees(self):
        assert comparable_pairs_sequence("all", 10) == [
            1, 5, 22, 93, 386, 1586, 6476, 26333, 106762, 431910,
        ]

    def test_binary(self):
        assert comparable_pairs_sequence(2, 9) == [
            1, 6, 29, 130, 562, 2380, 9949, 41226, 169766,
        ]

    def test_ternary(self):
        assert comparable_pairs_sequence(3, 8) == [
            1, 9, 69, 502, 3564, 24960, 173325, 1196748,
        ]

    def test_pairs_by_hand(self):
        # each tree contributes #{(u, v) : u a proper ancestor of v}
        def pairs(t):
            total = 0

            def walk(sub, depth):
                nonlocal total
                total += depth
                for c in sub.children:
                    walk(c, depth + 1)

            walk(t, 0)
            return total

        a = comparable_pairs_sequence("all", 4)
        for n in range(2, 6):
            by_hand = sum(
                pairs(t)
                for t in enumerate_general(count(1), n)
                if t.vertex_count() == n
            )
            assert a[n - 2] == by_hand


class TestSurjectiveTotals:
    def test_all_trees_double_factorials(self):
        assert [surjective_total("all", n) for n in range(1, 8)] == [
            1, 1, 3, 15, 105, 945, 10395,
        ]

    def test_binary_alternating(self):
        assert [surjective_total(2, n) for n in range(1, 9)] == [
            1, 0, 2, 0, 16, 0, 272, 0,
        ]

    def test_tangent_like_matches_enumeration(self):
        alphas = tangent_like_numbers(7)
        for n in range(1, 8):
            by_hand = sum(
                surjective(t)
                for t in enumerate_general({2}, n)
                if t.vertex_count() == n
            )
            assert alphas[n - 1] == by_hand


class TestOrderPolynomial:
    def test_cherry(self):
        op = order_polynomial(tree_from_text("(L L)"))
        assert op.binomial_coeffs == [0, 1, 3, 2]
        assert op.coeffs == [0, Fraction(1, 6), Fraction(1, 2), Fraction(1, 3)]

    def test_three_leaves(self):
        op = order_polynomial(tree_from_text("((L L) L)"))
        assert op.binomial_coeffs == [0, 1, 9, 23, 23, 8]
        assert op.degree == 5

    def test_restricted_cherry(self):
        op = order_polynomial(tree_from_text("(L L)"), restricted=True)
        assert op.coeffs == [0, 1]

    def test_binomial_coeffs_count_surjections(self):
        # the C(m, j) coefficient is the number of surjections onto a j-chain
        for text in ("(L L)", "((L L) L)", "((L L) (L L))"):
            t = tree_from_text(text)
            op = order_polynomial(t)
            for j, c in enumerate(op.binomial_coeffs):
                assert c == count_bruteforce(t, j, surjective=True)

    def test_evaluation_matches_recursion(self):
        for text in ("(L L)", "((L L) L)", "(L (L L))", "((L L L) L L)"):
            t = tree_from_text(text)
            for restricted in (False, True):
                op = order_polynomial(t, restricted=restricted)
                for m in range(1, 9):
                    assert op.eval(m) == gamma_recursive(t, m, restricted)

    def test_big_tree_restricted_at_two(self):
        op = order_polynomial(tree_from_text(BIG), restricted=True)
        assert op.eval(2) == 29
