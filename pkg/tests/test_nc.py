"""Word-level series: ordered products, composition, and the solver."""

from fractions import Fraction

import pytest

import treeinverse.free_series as fs
from treeinverse.free_series import (
    NCSeries,
    abelianize,
    nc_arith,
    nc_compose,
    nc_from_json,
    nc_solve_and_verify,
    nc_to_json,
    word_from_text,
    word_to_text,
    x_degree,
)
from treeinverse.rings import QQ, InputError, SizeLimitError, modring
from treeinverse.series import Series
from treeinverse.solve import solve
from treeinverse.spin import uniform_model

PARKER = [[[1, 0], [1, 1]], [[0, 1], [0, 0]]]


class TestWords:
    def test_text_roundtrip(self):
        w = word_from_text("Ya X Yb X")
        assert w == ("Ya", "X", "Yb", "X")
        assert word_to_text(w) == "Ya X Yb X"
        assert x_degree(w) == 2

    def test_bad_letter(self):
        with pytest.raises(InputError):
            word_from_text("Ya Z X")


class TestArithmetic:
    def test_product_concatenates(self):
        x = NCSeries.x(4)
        ya = NCSeries.y("a", 4)
        yb = NCSeries.y("b", 4)
        assert (x * ya * yb * x).to_text() == "X Ya Yb X"

    def test_square_keeps_order(self):
        x = NCSeries.x(4)
        ya = NCSeries.y("a", 4)
        s = x + ya
        assert (s * s).to_text() == "X X + X Ya + Ya X + Ya Ya"
        assert nc_arith(s, s, "mul") == s * s
        assert nc_arith(s, s, "add") == s + s

    def test_noncommutative(self):
        x = NCSeries.x(4)
        ya = NCSeries.y("a", 4)
        assert x * ya != ya * x

    def test_truncation_by_x_degree(self):
        x = NCSeries.x(2)
        ya = NCSeries.y("a", 2)
        deep = x * x * x  # X-degree 3 exceeds the order
        assert deep.is_zero()
        assert not (ya * x * ya * x).is_zero()  # two X letters fit

    def test_unknown_op(self):
        x = NCSeries.x(2)
        with pytest.raises(InputError):
            nc_arith(x, x, "div")


class TestComposition:
    def test_each_x_is_replaced(self):
        x = NCSeries.x(4)
        ya = NCSeries.y("a", 4)
        h = x + ya * x
        got = nc_compose(x * x, h)
        assert got.to_text() == "X X + X Ya X + Ya X X + Ya X Ya X"

    def test_identity_substitution(self):
        x = NCSeries.x(3)
        ya = NCSeries.y("a", 3)
        f = x * ya * x + x.scale(Fraction(1, 2))
        assert nc_compose(f, x) == f

    def test_rejects_x_free_words(self):
        x = NCSeries.x(3)
        ya = NCSeries.y("a", 3)
        with pytest.raises(InputError):
            nc_compose(x, x + ya)


class TestSolver:
    def test_parker_model_verifies(self):
        model = uniform_model(QQ, ["a", "b"], PARKER)
        system = nc_solve_and_verify(model, 5)
        assert system.verified
        assert all(r.is_zero() for r in system.residuals)

    def test_all_ones_complement_is_monomial(self):
        model = uniform_model(QQ, ["a"], [[[1]], [[1]]])
        system = nc_solve_and_verify(model, 5)
        # complemented weights vanish, so each factor is exactly -X
        assert system.g_tilde["a"].to_text() == "Ya X X"

    def test_leading_words(self):
        model = uniform_model(QQ, ["a", "b"], PARKER)
        system = nc_solve_and_verify(model, 5)
        assert system.g["a"].truncate(3).to_text() == (
            "Ya X X - Ya X Yb X X - Ya Ya X X X"
        )
        assert system.g_tilde["a"].truncate(3).to_text() == (
            "Ya X X - Ya X Ya X X - Ya Yb X X X"
        )

    def test_abelianization_matches_commutative_solver(self):
        model = uniform_model(QQ, ["a", "b"], PARKER)
        nc_system = nc_solve_and_verify(model, 5)
        system = solve(model, 5)
        for alpha in model.alphabet:
            assert abelianize(nc_system.g[alpha], QQ) == system.g[alpha].truncate(5)
            assert abelianize(nc_system.g_tilde[alpha], QQ) == system.g_tilde[
                alpha
            ].truncate(5)

    def test_rejects_non_rational_ring(self):
        model = uniform_model(modring(65521), ["a", "b"], PARKER)
        with pytest.raises(InputError):
            nc_solve_and_verify(model, 4)

    def test_rejects_numeric_y(self):
        model = uniform_model(
            QQ, ["a", "b"], PARKER, y_values={"a": 1, "b": 1}
        )
        with pytest.raises(InputError):
            nc_solve_and_verify(model, 4)

    def test_word_guard(self, monkeypatch):
        monkeypatch.setattr(fs, "_WORD_GUARD", 5)
        model = uniform_model(QQ, ["a", "b"], PARKER)
        with pytest.raises(SizeLimitError):
            nc_solve_and_verify(model, 5)


class TestAbelianize:
    def test_word_order_collapses(self):
        x = NCSeries.x(3)
        ya = NCSeries.y("a", 3)
        left = abelianize(x * ya, QQ)
        right = abelianize(ya * x, QQ)
        assert left == right
        assert left.to_text() == "X*Ya"

    def test_cancellation(self):
        x = NCSeries.x(3)
        ya = NCSeries.y("a", 3)
        s = x * ya - ya * x
        assert abelianize(s, QQ) == Series.zero(QQ, 3)


class TestSerialization:
    def test_roundtrip(self):
        x = NCSeries.x(4)
        ya = NCSeries.y("a", 4)
        s = x * ya * x - (ya * ya).scale(Fraction(3, 2))
        assert nc_from_json(nc_to_json(s)) == s
