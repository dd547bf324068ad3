"""Grafted trees: markings, partition values, cancellation identities."""

import random

import pytest

from conftest import random_qq_model
from treeinverse.graft import (
    GraftedTree,
    check_skeleton_sum,
    enumerate_grafted,
    grafted_from_json,
    signed_sum_oracle,
    z_grafted,
)
from treeinverse.rings import QQ, InputError
from treeinverse.series import compose_in_x
from treeinverse.solve import solve
from treeinverse.spin import partition, uniform_model
from treeinverse.trees import enumerate_k_regular, tree_from_text


class TestMarkings:
    def test_counts(self):
        for text, expected in (("(L L)", 2), ("((L L) L)", 3), ("((L L) (L L))", 5)):
            assert len(list(enumerate_grafted(tree_from_text(text)))) == expected

    def test_leaves_forced_to_two(self):
        t = tree_from_text("(L L)")
        with pytest.raises(InputError):
            GraftedTree(t, {(): 1, (1,): 1, (2,): 2})

    def test_monotone_along_edges(self):
        t = tree_from_text("((L L) L)")
        with pytest.raises(InputError):
            GraftedTree(t, {(): 2, (1,): 1, (1, 1): 2, (1, 2): 2, (2,): 2})

    def test_decompose_trivial_upper(self):
        t = tree_from_text("((L L) L)")
        gt = GraftedTree(t, {a: 2 for a in t.addresses()})
        upper, lower = gt.decompose()
        assert upper.is_leaf
        assert len(lower) == 1 and lower[0].to_text() == t.to_text()

    def test_json_roundtrip(self):
        t = tree_from_text("((L L) L)")
        for gt in enumerate_grafted(t):
            assert grafted_from_json(gt.to_json()) == gt

    def test_skeleton_reassembles(self):
        t = tree_from_text("((L L) (L L))")
        for gt in enumerate_grafted(t):
            upper, lower = gt.decompose()
            assert upper.leaf_count() == len(lower)
            total = sum(b.vertex_count() for b in lower)
            assert upper.vertex_count() - upper.leaf_count() + total == (
                t.vertex_count()
            )


class TestGraftedValues:
    def test_trivial_upper_uses_complement(self):
        model = uniform_model(QQ, ["a", "b"], [[[1, 0], [1, 1]], [[0, 1], [1, 0]]])
        t = tree_from_text("((L L) L)")
        gt = GraftedTree(t, {a: 2 for a in t.addresses()})
        expected = partition(t, model.complement(), order=model.default_order(t))
        assert z_grafted(gt, model) == expected

    def test_all_one_interior_equals_partition(self):
        model = uniform_model(QQ, ["a", "b"], [[[1, 0], [1, 1]], [[0, 1], [1, 0]]])
        t = tree_from_text("((L L) L)")
        marking = {a: (2 if t.subtree(a).is_leaf else 1) for a in t.addresses()}
        gt = GraftedTree(t, marking)
        expected = partition(t, model, order=model.default_order(t))
        assert z_grafted(gt, model) == expected


class TestSkeletonSums:
    def test_small_binary_trees(self):
        rng = random.Random(4242)
        model = random_qq_model(rng, k=2, n_letters=2)
        for t in enumerate_k_regular(2, 4):
            if t.is_leaf:
                continue
            assert check_skeleton_sum(t, model).is_zero()

    def test_restricted_variant(self):
        rng = random.Random(77)
        model = random_qq_model(rng, k=2, n_letters=2)
        t = tree_from_text("((L L) (L L))")
        for a in model.alphabet:
            assert check_skeleton_sum(t, model, alpha=a).is_zero()

    def test_ternary_tree(self):
        rng = random.Random(123)
        model = random_qq_model(rng, k=3, n_letters=2)
        t = tree_from_text("((L L L) L L)")
        assert check_skeleton_sum(t, model).is_zero()

    def test_trivial_skeleton_rejected(self):
        rng = random.Random(5)
        model = random_qq_model(rng, k=2, n_letters=1)
        with pytest.raises(InputError):
            check_skeleton_sum(tree_from_text("L"), model)


class TestEnumerationOracle:
    def test_matches_solver(self):
        rng = random.Random(31415)
        model = random_qq_model(rng, k=2, n_letters=2)
        system = solve(model, 6)
        oracle = signed_sum_oracle(model, 6, "g")
        assert system.g_total.truncate(6) == oracle.series.truncate(6)
        oracle_t = signed_sum_oracle(model, 6, "g_tilde")
        assert system.g_tilde_total.truncate(6) == oracle_t.series.truncate(6)

    def test_composition_oracle(self):
        rng = random.Random(27182)
        model = random_qq_model(rng, k=2, n_letters=1)
        oracle = signed_sum_oracle(model, 4, "composition")
        system = solve(model, 6)
        direct = compose_in_x(system.g_total, system.g_tilde_total)
        d = oracle.sound_degree
        assert direct.truncate(d) == oracle.series.truncate(d)

    def test_oracle_rejects_mixed_models(self):
        from treeinverse.spin import SpinModel

        blocks = {
            2: (["a"], [[[1, 1]], [[1, 1]]]),
            3: (["b"], [[[1, 1]], [[1, 1]], [[1, 1]]]),
        }
        model = SpinModel(QQ, ["a", "b"], blocks)
        with pytest.raises(InputError):
            signed_sum_oracle(model, 4, "g")
