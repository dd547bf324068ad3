"""Planar trees: text format, addresses, enumeration."""

import pytest

from treeinverse.rings import InputError
from treeinverse.trees import (
    LEAF,
    PlanarTree,
    catalan,
    enumerate_general,
    enumerate_k_regular,
    stats,
    tree_from_addresses,
    tree_from_text,
    tree_to_addresses,
)

BIG = "(((L L) ((L L) L)) (L (L (L L))))"


class TestTextFormat:
    def test_roundtrip(self):
        for text in ("L", "(L L)", "((L L) L)", BIG):
            assert tree_from_text(text).to_text() == text

    def test_whitespace_tolerated(self):
        assert tree_from_text("( L   L )").to_text() == "(L L)"

    def test_unbalanced_rejected(self):
        with pytest.raises(InputError):
            tree_from_text("((L L)")
        with pytest.raises(InputError):
            tree_from_text("(L L))")

    def test_garbage_rejected(self):
        with pytest.raises(InputError):
            tree_from_text("(L Q)")


class TestStructure:
    def test_counts_on_big_tree(self):
        t = tree_from_text(BIG)
        assert t.vertex_count() == 17
        assert t.leaf_count() == 9
        assert t.interior_count() == 8
        assert t.is_k_regular(2)

    def test_addresses_roundtrip(self):
        t = tree_from_text(BIG)
        assert tree_from_addresses(tree_to_addresses(t)).to_text() == BIG

    def test_subtree_lookup(self):
        t = tree_from_text("((L L) L)")
        assert t.subtree((1,)).to_text() == "(L L)"
        assert t.subtree((2,)).is_leaf
        with pytest.raises(InputError):
            t.subtree((3,))

    def test_stats(self):
        got = stats(tree_from_text("((L L) L)"))
        assert got["vertices"] == 5
        assert got["leaves"] == 3

    def test_leaf_singleton(self):
        assert LEAF.is_leaf
        assert PlanarTree().vertex_count() == 1


class TestEnumeration:
    def test_binary_counts_are_catalan(self):
        trees = list(enumerate_k_regular(2, 6))
        by_leaves = {}
        for t in trees:
            by_leaves[t.leaf_count()] = by_leaves.get(t.leaf_count(), 0) + 1
        assert by_leaves == {1: 1, 2: 1, 3: 2, 4: 5, 5: 14, 6: 42}

    def test_catalan_numbers(self):
        assert [catalan(n) for n in range(7)] == [1, 1, 2, 5, 14, 42, 132]

    def test_ternary_counts(self):
        trees = list(enumerate_k_regular(3, 7))
        by_leaves = {}
        for t in trees:
            by_leaves[t.leaf_count()] = by_leaves.get(t.leaf_count(), 0) + 1
        assert by_leaves == {1: 1, 3: 1, 5: 3, 7: 12}

    def test_general_trees_by_vertices(self):
        got = sorted(t.to_text() for t in enumerate_general([2, 3], 5))
        assert len(got) == 5
        assert "L" in got
        assert "(L L)" in got
        assert "(L L L)" in got

    def test_all_arity_counts(self):
        # plane trees with <= 5 vertices and unbounded arity: 1+1+2+5+14
        trees = list(enumerate_general([1, 2, 3, 4], 5))
        assert len(trees) == 23

    def test_uniqueness(self):
        texts = [t.to_text() for t in enumerate_k_regular(2, 6)]
        assert len(texts) == len(set(texts))
