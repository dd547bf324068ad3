"""Shared test plumbing.

Two things live here: small deterministic generators for random models
and series (seeded; the suite never depends on wall-clock entropy), and
the acceptance registry.  Tests in test_acceptance.py wrap their bodies
in the `acceptance` fixture's context manager, which records one line
per criterion; the terminal summary prints the collected PASS/FAIL lines
with elapsed time against each criterion's stated budget.
"""

import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from treeinverse.rings import QQ, modring
from treeinverse.series import Series
from treeinverse.spin import uniform_model

ACCEPTANCE = []


@pytest.fixture
def acceptance():
    @contextmanager
    def criterion(name, budget):
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            ACCEPTANCE.append((name, False, time.perf_counter() - start, budget))
            raise
        elapsed = time.perf_counter() - start
        ACCEPTANCE.append((name, elapsed <= budget, elapsed, budget))
        assert elapsed <= budget, f"{name}: {elapsed:.1f}s exceeds {budget:.0f}s budget"

    return criterion


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, elapsed, budget in ACCEPTANCE:
        mark = "PASS" if ok else "FAIL"
        terminalreporter.write_line(
            f"{mark}  {name}  [{elapsed:.2f}s of {budget:.0f}s]"
        )


# -- deterministic random inputs -------------------------------------------


def random_qq_model(rng, k=None, n_letters=None, lo=-2, hi=2):
    """A uniform-arity model over QQ with small integer entries."""
    if k is None:
        k = rng.choice([2, 3])
    if n_letters is None:
        n_letters = rng.randint(1, 3)
    letters = [chr(ord("a") + i) for i in range(n_letters)]
    mats = [
        [[rng.randint(lo, hi) for _ in range(n_letters)] for _ in range(n_letters)]
        for _ in range(k)
    ]
    return uniform_model(QQ, letters, mats)


def random_mod_model(rng, p=65521, k=None, n_letters=None):
    """A uniform-arity model over Z/p with entries drawn from the whole field."""
    if k is None:
        k = rng.choice([2, 3])
    if n_letters is None:
        n_letters = rng.randint(1, 3)
    ring = modring(p)
    letters = [chr(ord("a") + i) for i in range(n_letters)]
    mats = [
        [[rng.randrange(p) for _ in range(n_letters)] for _ in range(n_letters)]
        for _ in range(k)
    ]
    return uniform_model(ring, letters, mats)


def random_invertible_series(rng, order):
    """A series admissible for both inversion routes.

    Unit linear coefficient for reversion to exist at all, and a nonzero
    quadratic coefficient because the combinatorial route anchors its
    triangular solve on the arity-2 weight.
    """
    coeffs = [Fraction(0), Fraction(rng.choice([1, -1, 2, Fraction(1, 2)]))]
    coeffs.append(Fraction(rng.choice([1, -1, 2, -3, Fraction(1, 2)])))
    for _ in range(order - 2):
        coeffs.append(Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
    return Series.from_x_coeffs(QQ, coeffs, order=order)
