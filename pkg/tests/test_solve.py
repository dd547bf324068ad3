"""Fixed-point solvers and the mutual-inverse identity."""

import random

import pytest

from conftest import random_invertible_series, random_mod_model, random_qq_model
from treeinverse.rings import QQ, InputError, modring
from treeinverse.series import Series, compose_in_x, revert_newton
from treeinverse.solve import (
    all_ones_model,
    invert,
    invert_via_trees,
    solve,
    solve_general,
    solve_regular,
    verify_identity,
)
from treeinverse.spin import SpinModel


class TestAllOnes:
    def test_g_is_signed_catalan(self):
        system = solve(all_ones_model(QQ), 8)
        assert system.g_total.x_coeffs() == [0, -1, 1, -2, 5, -14, 42, -132, 429]
        assert system.g_tilde_total.x_coeffs() == [0, -1, 1, 0, 0, 0, 0, 0, 0]

    def test_identity(self):
        system = solve(all_ones_model(QQ), 10)
        assert verify_identity(system).verified


class TestMixedArities:
    def build(self):
        blocks = {
            2: (["a"], [[[1, 1]], [[1, 1]]]),
            3: (["b"], [[[1, 1]], [[1, 1]], [[1, 1]]]),
        }
        return SpinModel(QQ, ["a", "b"], blocks, y_values={"a": 1, "b": 1})

    def test_totals(self):
        system = solve(self.build(), 8)
        assert system.g_total.x_coeffs() == [0, -1, 1, -1, 0, 4, -14, 30, -33]
        assert system.g_tilde_total.x_coeffs() == [0, -1, 1, -1, 0, 0, 0, 0, 0]

    def test_identity(self):
        system = solve_general(self.build(), 9)
        assert verify_identity(system).verified

    def test_component_valuations(self):
        system = solve(self.build(), 8)
        assert system.g["a"].x_coeffs()[:4] == [0, 0, 1, -2]
        assert system.g["b"].x_coeffs()[:4] == [0, 0, 0, 1]


class TestRandomModels:
    def test_rational_entries(self):
        rng = random.Random(2718)
        for _ in range(4):
            system = solve(random_qq_model(rng), 8)
            assert verify_identity(system).verified

    def test_prime_field_entries(self):
        rng = random.Random(577)
        for _ in range(4):
            system = solve(random_mod_model(rng), 8)
            assert verify_identity(system).verified


class TestInversion:
    def test_tree_matches_newton(self):
        rng = random.Random(99)
        for _ in range(3):
            f = random_invertible_series(rng, 12)
            assert invert_via_trees(f) == revert_newton(f)

    def test_roundtrip(self):
        f = Series.from_x_coeffs(QQ, [0, 2, 1, 1], order=12)
        inv = invert(f, method="tree")
        assert compose_in_x(f, inv) == Series.x(QQ, 12)

    def test_zero_quadratic_coefficient_rejected(self):
        f = Series.from_x_coeffs(QQ, [0, 2, 0, 1], order=12)
        with pytest.raises(InputError):
            invert_via_trees(f)
        inv = revert_newton(f)
        assert compose_in_x(f, inv) == Series.x(QQ, 12)

    def test_method_dispatch(self):
        f = Series.from_x_coeffs(QQ, [0, 1, 1], order=6)
        assert invert(f, method="tree") == invert(f, method="newton")
        with pytest.raises(InputError):
            invert(f, method="magic")

    def test_tree_method_needs_characteristic_zero(self):
        ring = modring(65521)
        f = Series.from_x_coeffs(ring, [0, 1, 1], order=6)
        with pytest.raises(InputError):
            invert_via_trees(f)
        assert compose_in_x(f, invert(f, method="newton")) == Series.x(ring, 6)

    def test_needs_invertible_slope(self):
        f = Series.from_x_coeffs(QQ, [0, 0, 1], order=6)
        with pytest.raises(InputError):
            invert_via_trees(f)


class TestValidation:
    def test_arity_one_needs_symbolic_y(self):
        blocks = {1: (["a"], [[[1]]])}
        model = SpinModel(QQ, ["a"], blocks, y_values={"a": 1})
        with pytest.raises(InputError):
            solve(model, 6)

    def test_regular_solver_rejects_mixed(self):
        blocks = {
            2: (["a"], [[[1, 1]], [[1, 1]]]),
            3: (["b"], [[[1, 1]], [[1, 1]], [[1, 1]]]),
        }
        model = SpinModel(QQ, ["a", "b"], blocks)
        with pytest.raises(InputError):
            solve_regular(model, 6)
