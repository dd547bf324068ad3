"""End-to-end acceptance runs: one test per headline capability.

Each test registers with the `acceptance` fixture, which times it against a
budget and prints a PASS/FAIL table at the end of the session.  Reference
constants are published values for this model family; everything else is
checked by exact arithmetic.
"""

import random
from fractions import Fraction

import mpmath

from conftest import random_invertible_series, random_mod_model, random_qq_model
from treeinverse.asymptotics import branch_point, predict_coefficients, real_roots
from treeinverse.free_series import abelianize, nc_solve_and_verify
from treeinverse.graft import check_skeleton_sum, signed_sum_oracle
from treeinverse.loday import (
    assert_reduction,
    lift_from_curve,
    load_curve,
    loday_series,
    loday_system,
    minpoly_check,
    transposition_check,
)
from treeinverse.rings import QQ, modring
from treeinverse.series import Series, compose_in_x, revert_newton
from treeinverse.solve import invert_via_trees, solve, verify_identity
from treeinverse.spin import restricted_partition, uniform_model
from treeinverse.trees import enumerate_k_regular, tree_from_text

BIG = tree_from_text("(((L L) ((L L) L)) (L (L (L L))))")

REFERENCE_RHO = "-0.14127137998962933757540882196178714222253950575630"
REFERENCE_Y_RHO = "14.88738808602894055277970788094544394"
REFERENCE_GSR = "337.171657540870"
REFERENCE_CONST = "95.11436852604511894068836"
REFERENCE_COMPETING = "-0.1414780159629839"


def agrees_to(x, reference: str, sig: int, dps=80) -> bool:
    """Relative agreement with a printed decimal to `sig` significant digits."""
    with mpmath.workdps(dps):
        ref = mpmath.mpf(reference)
        return abs(x / ref - 1) < mpmath.mpf(10) ** (1 - sig)


def test_spin_model_example(acceptance):
    with acceptance("spin-model example: 25, -24, 1", budget=1.0):
        model = uniform_model(
            QQ,
            ["1", "2"],
            [[[1, 1], [1, 2]], [[2, -1], [-1, 1]]],
            y_values={"1": 1, "2": 1},
            x_value=1,
        )
        z1 = restricted_partition(BIG, "1", model)
        z2 = restricted_partition(BIG, "2", model)
        assert z1.coeff_x(0) == 25
        assert z2.coeff_x(0) == -24
        assert (z1 + z2).coeff_x(0) == 1


def test_identity_property_suite(acceptance):
    with acceptance("mutual-inverse identity on 20 random models", budget=30.0):
        rng = random.Random(20260816)
        checked = 0
        for _ in range(10):
            system = solve(random_qq_model(rng), 10)
            assert verify_identity(system).verified
            checked += 1
        for _ in range(10):
            system = solve(random_mod_model(rng), 10)
            assert verify_identity(system).verified
            checked += 1
        assert checked == 20


def test_oracle_equivalence(acceptance):
    with acceptance("solver equals signed tree enumeration", budget=60.0):
        rng = random.Random(31415)
        for _ in range(5):
            model = random_qq_model(rng, k=2)
            system = solve(model, 7)
            for what, total in (
                ("g", system.g_total),
                ("g_tilde", system.g_tilde_total),
            ):
                oracle = signed_sum_oracle(model, 7, what)
                assert total.truncate(7) == oracle.series.truncate(7)
            comp = signed_sum_oracle(model, 5, "composition")
            direct = compose_in_x(system.g_total, system.g_tilde_total)
            d = comp.sound_degree
            assert direct.truncate(d) == comp.series.truncate(d)


def test_skeleton_sums_vanish(acceptance):
    with acceptance("skeleton sums vanish on small regular trees", budget=30.0):
        rng = random.Random(2020)
        binary = [t for t in enumerate_k_regular(2, 5) if not t.is_leaf]
        ternary = [t for t in enumerate_k_regular(3, 5) if not t.is_leaf]
        for _ in range(5):
            model2 = random_qq_model(rng, k=2)
            for t in binary:
                assert check_skeleton_sum(t, model2).is_zero()
            model3 = random_qq_model(rng, k=3)
            for t in ternary:
                assert check_skeleton_sum(t, model3).is_zero()


def test_inversion_equivalence(acceptance):
    with acceptance("tree inversion equals Newton reversion", budget=10.0):
        rng = random.Random(99)
        for _ in range(10):
            f = random_invertible_series(rng, 15)
            via_trees = invert_via_trees(f)
            via_newton = revert_newton(f)
            assert via_trees == via_newton
            assert compose_in_x(f, via_trees) == Series.x(QQ, 15)


def test_loday_series(acceptance):
    with acceptance("nine-letter series and its quartic curve", budget=60.0):
        y = loday_series(12)
        assert [int(c) for c in y.x_coeffs()[1:]] == [
            -1, 9, -49, 284, -1735, 10955, -70695, 463087,
            -3066450, 20471641, -137540539, 928791019,
        ]
        assert_reduction(loday_system(8))
        curve = load_curve()
        assert minpoly_check(loday_series(26), curve).is_zero()
        assert transposition_check(14, curve).is_zero()


def test_branch_point_constants(acceptance):
    with acceptance("dominant singularity constants at 60 digits", budget=30.0):
        curve = load_curve()
        bp = branch_point(
            curve, (Fraction("-0.1413"), Fraction("-0.1412")), digits=60
        )
        assert agrees_to(bp.rho, REFERENCE_RHO, 30)
        assert agrees_to(bp.y_rho, REFERENCE_Y_RHO, 25)
        assert agrees_to(abs(bp.gamma_sqrt_rho), REFERENCE_GSR, 9)
        assert agrees_to(bp.growth_constant, REFERENCE_CONST, 12)
        competing = real_roots(
            [int(x) for x in curve.factor("r1")],
            (Fraction("-0.1415"), Fraction("-0.1414")),
            digits=60,
        )
        assert len(competing) == 1
        assert agrees_to(competing[0], REFERENCE_COMPETING, 15)


def test_asymptotic_law(acceptance):
    with acceptance("coefficient law against exact lift to n=3000", budget=60.0):
        curve = load_curve()
        lifted = lift_from_curve(curve, loday_series(12), 3000)
        coeffs = lifted.x_coeffs()
        bp = branch_point(
            curve, (Fraction("-0.1413"), Fraction("-0.1412")), digits=60
        )
        deviations = []
        ratios = {}
        with mpmath.workdps(120):
            for n in (500, 1000, 2000, 3000):
                a_n = int(coeffs[n])
                predicted = predict_coefficients(bp, n)
                ratio = mpmath.mpf(abs(a_n)) / abs(predicted)
                ratios[n] = ratio
                deviations.append(abs(ratio - 1))
                # predicted signs follow (-1)^n
                assert (a_n < 0) == (n % 2 == 1)
            assert 0.75 <= ratios[3000] <= 1.25
        assert all(a > b for a, b in zip(deviations, deviations[1:]))


def test_morphism_sequences(acceptance):
    from itertools import count

    from treeinverse.morph import (
        comparable_pairs_sequence,
        count_bruteforce,
        gamma_recursive,
        morphism_sequence,
        surjective,
        tangent_like_numbers,
    )
    from treeinverse.trees import enumerate_general

    with acceptance("labeling sequences and brute-force cross-check", budget=60.0):
        assert morphism_sequence(2, 2, True, 8) == [1, 2, 6, 21, 80, 322, 1348, 5814]
        assert morphism_sequence(2, 2, False, 6) == [2, 5, 22, 118, 706, 4530]
        assert morphism_sequence("all", 2, True, 8) == [
            1, 2, 5, 15, 50, 178, 663, 2553,
        ]
        assert morphism_sequence("all", 2, False, 8) == [
            2, 3, 9, 34, 145, 667, 3231, 16247,
        ]
        assert comparable_pairs_sequence("all", 10) == [
            1, 5, 22, 93, 386, 1586, 6476, 26333, 106762, 431910,
        ]
        assert comparable_pairs_sequence(2, 9) == [
            1, 6, 29, 130, 562, 2380, 9949, 41226, 169766,
        ]
        assert comparable_pairs_sequence(3, 8) == [
            1, 9, 69, 502, 3564, 24960, 173325, 1196748,
        ]
        assert gamma_recursive(BIG, 2, restricted=True) == 29
        assert gamma_recursive(BIG, 2, restricted=False) == 1289
        assert surjective(BIG) == 492011520
        assert tangent_like_numbers(7) == [1, 0, 2, 0, 16, 0, 272]
        for t in enumerate_general(count(1), 8):
            for m in (1, 2, 3):
                for restricted in (False, True):
                    assert count_bruteforce(t, m, restricted) == gamma_recursive(
                        t, m, restricted
                    )
        for t in enumerate_general(count(1), 6):
            n = t.vertex_count()
            assert count_bruteforce(t, n, surjective=True) == surjective(t)


def test_word_level_identity(acceptance):
    with acceptance("ordered-word identity and abelianization", budget=30.0):
        model = uniform_model(QQ, ["a", "b"], [[[1, 0], [1, 1]], [[0, 1], [0, 0]]])
        nc_system = nc_solve_and_verify(model, 5)
        assert nc_system.verified
        system = solve(model, 5)
        for alpha in model.alphabet:
            assert abelianize(nc_system.g[alpha], QQ) == system.g[alpha].truncate(5)
            assert abelianize(nc_system.g_tilde[alpha], QQ) == system.g_tilde[
                alpha
            ].truncate(5)


def test_series_engine_properties(acceptance):
    with acceptance("randomized series and ring properties", budget=10.0):
        rng = random.Random(606)

        for _ in range(100):
            f = random_invertible_series(rng, 8)
            assert compose_in_x(f, revert_newton(f)) == Series.x(QQ, 8)

        for _ in range(100):
            def series():
                coeffs = [Fraction(0), Fraction(rng.choice([1, -1, 2]))]
                coeffs += [
                    Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(5)
                ]
                return Series.from_x_coeffs(QQ, coeffs, 6)

            f, g, h = series(), series(), series()
            assert compose_in_x(compose_in_x(f, g), h) == compose_in_x(
                f, compose_in_x(g, h)
            )

        mod = modring(65521)
        for ring, sample in (
            (QQ, lambda: Fraction(rng.randint(-50, 50), rng.randint(1, 20))),
            (mod, lambda: mod.coerce(rng.randrange(65521))),
        ):
            for _ in range(100):
                a, b, c = sample(), sample(), sample()
                assert a + b == b + a
                assert a * b == b * a
                assert a * (b + c) == a * b + a * c
                assert (a + b) + c == a + (b + c)
                assert (a * b) * c == a * (b * c)
