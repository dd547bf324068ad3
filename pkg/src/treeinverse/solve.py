"""Fixed-point solvers producing pairs of mutually inverse power series.

Given a spin model with alphabet A and matrices M_1..M_k per arity k, the
direct system is

    g_a = Y_a * prod_j ( X - (M_j g)_a ),        a in the arity-k class,

and the complementary system replaces every matrix entry w by 1-w and every
factor by (-X + (complement row sum)):

    gt_a = Y_a * prod_j ( -X + ((J-M_j) gt)_a ).

Both are solved by bootstrapping from the zero vector; each sweep extends the
X-adic accuracy, so finitely many sweeps reach any truncation order.  The
headline identity is that g = -X + sum_a g_a and gt = -X + sum_a gt_a are
mutually inverse under composition in X; `verify_identity` recomputes both
composites and reports the residuals.

`invert_via_trees` inverts a single univariate series f = -X + b2 X^2 + ...
by realizing it as such a system with one letter per arity and solving the
complementary system for the inverse, entirely in exact arithmetic.  This is
an independent route to the same answer as Newton reversion.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings import InputError
from .series import Series, compose_in_x, revert_newton
from .spin import SpinModel, uniform_model


@dataclass
class SeriesSystem:
    """Solver output: per-spin components and the assembled totals."""

    model: SpinModel
    order: int
    g: dict
    g_tilde: dict

    @property
    def g_total(self) -> Series:
        return self._total(self.g)

    @property
    def g_tilde_total(self) -> Series:
        return self._total(self.g_tilde)

    def _total(self, vec) -> Series:
        total = -self.model.x_series(self.order)
        for s in vec.values():
            total = total + s
        return total

    def to_json(self):
        from .series import series_to_json

        return {
            "order": self.order,
            "g": {a: series_to_json(s) for a, s in self.g.items()},
            "g_tilde": {a: series_to_json(s) for a, s in self.g_tilde.items()},
            "g_total": series_to_json(self.g_total),
            "g_tilde_total": series_to_json(self.g_tilde_total),
        }


def _sweep(model: SpinModel, vec, order, sign):
    """One parallel update of the fixed-point system.

    sign=+1 builds factors (X - (M_j v)_a); sign=-1 builds (-X + (M_j v)_a).
    """
    x = model.x_series(order)
    zero = Series.zero(model.ring, order, model.series_weights())
    new = {}
    for k in model.degrees:
        letters = model.letters_for(k)
        for alpha in letters:
            z = model.y_series(alpha, order)
            for j in range(1, k + 1):
                row = zero
                for beta in model.alphabet:
                    w = model.weight(k, j, alpha, beta)
                    if w:
                        row = row + vec[beta].scale(w)
                z = z * (x - row) if sign > 0 else z * (-x + row)
            new[alpha] = z
    return new


def _bootstrap(model: SpinModel, order, sign):
    zero = Series.zero(model.ring, order, model.series_weights())
    vec = {a: zero for a in model.alphabet}
    # each sweep is exact one weighted-degree further; iterate to the fixed
    # point, which is reached after at most `order` sweeps
    for _ in range(order + 1):
        new = _sweep(model, vec, order, sign)
        if all(new[a] == vec[a] for a in model.alphabet):
            return new
        vec = new
    raise InputError("fixed-point iteration failed to stabilize")


def _check_solvable(model: SpinModel, order):
    if model.x_value is not None:
        raise InputError("solving needs a formal X; drop the numeric x value")
    if 1 in model.blocks:
        if model.y_values is not None or model.y_weight < 1:
            raise InputError(
                "arity-1 letters make the fixed point ill-founded unless the "
                "Y variables are symbolic with weight 1"
            )
    if order < min(model.degrees):
        raise InputError("truncation order is below the smallest arity")


def solve_regular(model: SpinModel, order: int) -> SeriesSystem:
    """Solve the direct and complementary systems of a uniform-arity model.

    Starting from the zero vector, sweep n+1 is accurate modulo
    X^(1+(n+1)(k-1)), so sweeping stops once 1+(n+1)(k-1) > order.
    """
    if not model.uniform:
        raise InputError("solve_regular needs a uniform-arity model")
    k = model.k
    if k < 2:
        raise InputError("solve_regular needs arity k >= 2")
    _check_solvable(model, order)
    zero = Series.zero(model.ring, order, model.series_weights())
    g = {a: zero for a in model.alphabet}
    comp = model.complement()
    gt = dict(g)
    n = 0
    while 1 + (n + 1) * (k - 1) <= order:
        g = _sweep(model, g, order, +1)
        gt = _sweep(comp, gt, order, -1)
        n += 1
    return SeriesSystem(model, order, g, gt)


def solve_general(model: SpinModel, order: int) -> SeriesSystem:
    """Solve a model with several arity classes (degree-map models).

    Arity 1 is allowed only with symbolic weight-1 Y variables, which keep
    the combined (X,Y) grading effective; the truncation order then bounds
    the weighted degree, not the X degree alone.
    """
    _check_solvable(model, order)
    g = _bootstrap(model, order, +1)
    gt = _bootstrap(model.complement(), order, -1)
    return SeriesSystem(model, order, g, gt)


def solve(model: SpinModel, order: int) -> SeriesSystem:
    """Dispatch to the uniform or general solver."""
    if model.uniform and model.k >= 2:
        return solve_regular(model, order)
    return solve_general(model, order)


@dataclass
class IdentityReport:
    left: Series  # g(gt(X)) - X
    right: Series  # gt(g(X)) - X

    @property
    def verified(self):
        return self.left.is_zero() and self.right.is_zero()


def verify_identity(system: SeriesSystem) -> IdentityReport:
    """Recompute both composites of the totals and return the residuals."""
    g = system.g_total
    gt = system.g_tilde_total
    x = system.model.x_series(system.order)
    return IdentityReport(compose_in_x(g, gt) - x, compose_in_x(gt, g) - x)


# -- series inversion through a one-letter-per-arity system -----------------


def invert_via_trees(h: Series, order=None) -> Series:
    """Compositional inverse of a univariate series, solved combinatorially.

    The input must have a unit linear coefficient and, after normalizing the
    linear coefficient to -1, a unit quadratic coefficient; the route is
    defined over characteristic-0 rings.  The inverse is obtained by
    matching f = -X + b2 X^2 + ... against the one-letter system with one
    arity-k block per k whose weight c_k sits on the first factor only,

        g = sum_k (X - c_k g) X^(k-1),

    and evaluating the complementary system, where every edge weight w
    becomes 1 - w and X flips sign:

        gt = sum_k (-X + (1 - c_k) gt) (-X + gt)^(k-1).

    Putting the weight on one factor per arity keeps the weights small: the
    matching condition is X^2 (1 + X + ... ) = g(X) (1 + sum_k c_k X^(k-1)),
    a series division, whereas repeating c_k across all k factors makes each
    weight a polynomial in products of the earlier ones and their size
    doubles with the arity.  The result agrees with `revert_newton`; the two
    routes are kept separate on purpose.
    """
    if not h.is_pure_x():
        raise InputError("inversion needs a univariate series in X")
    if h.coeff_x(0):
        raise InputError("inversion needs a zero constant term")
    ring = h.ring
    if not ring.characteristic_zero:
        raise InputError("this route needs a characteristic-0 ring")
    n = h.order if order is None else min(order, h.order)
    if n < 2:
        raise InputError("order must be at least 2")
    gamma1 = h.coeff_x(1)
    if not ring.is_unit(gamma1):
        raise InputError("linear coefficient must be a unit")
    # normalize to f = h(-X/gamma1) = -X + b2 X^2 + ...
    neg_inv_g1 = -ring.inv(gamma1)
    f = compose_in_x(h.truncate(n), Series.x(ring, n, c=neg_inv_g1))
    b = [f.coeff_x(j) for j in range(n + 1)]
    if not ring.is_unit(b[2]):
        raise InputError("quadratic coefficient must be a unit after normalization")
    ell = b[2]
    inv_ell = ring.inv(ell)
    # conjugate by the scaling X -> X/ell so the quadratic coefficient is 1:
    # F(X) = ell * f(X/ell) = -X + X^2 + b3/ell^2 X^3 + ...
    B = [ring.zero, ring.zero, ring.one]
    p = inv_ell
    for m in range(3, n + 1):
        p = p * inv_ell
        B.append(b[m] * p)

    # matching: divide X^2 (1 + X + ... + X^(n-2)) by g = X^2 (1 + B3 X + ...)
    # to read off 1 + c_2 X + c_3 X^2 + ...; the arity-n weight never shows
    # below degree n+1, so it stays zero
    g_tail = [B[m + 2] for m in range(n - 1)]
    quotient = [ring.one] + [ring.zero] * (n - 2)
    for i in range(1, n - 1):
        acc = ring.one
        for j in range(1, i + 1):
            acc = acc - g_tail[j] * quotient[i - j]
        quotient[i] = acc
    cs = [ring.zero] * (n + 1)
    for k in range(2, n):
        cs[k] = quotient[k - 1]

    # complementary fixed point, degree by degree on plain coefficient
    # lists (everything here is univariate, so the Series machinery would
    # dominate the cost): the degree-d coefficient only reads st[2..d-1],
    # since every appearance of gt in a factor raises the degree
    wt = [ring.one - c for c in cs]
    st = [ring.zero] * (n + 1)
    for d in range(2, n + 1):
        shared = [ring.zero] * (d + 1)
        shared[1] = -ring.one
        for j in range(2, d):
            shared[j] = st[j]
        total = ring.zero
        acc = list(shared)  # (-X + gt)^(k-1) for k = 2
        for k in range(2, d + 1):
            head = -acc[d - 1]
            w = wt[k]
            if w != ring.zero:
                for j in range(2, d):
                    aj = acc[d - j]
                    if aj != ring.zero:
                        head = head + w * st[j] * aj
            total = total + head
            if k < d:
                nxt = [ring.zero] * (d + 1)
                for i, ai in enumerate(acc):
                    if ai == ring.zero:
                        continue
                    for j in range(1, d - i + 1):
                        sj = shared[j]
                        if sj != ring.zero:
                            nxt[i + j] = nxt[i + j] + ai * sj
                acc = nxt
        st[d] = total

    # F^{-1} = -X + st; undo the ell-conjugation, then the gamma1 scaling
    f_inv_coeffs = [ring.zero, -ring.one]
    power = ring.one
    for m in range(2, n + 1):
        power = power * ell
        f_inv_coeffs.append(st[m] * power)
    return Series.from_x_coeffs(ring, f_inv_coeffs, n).scale(neg_inv_g1)


def invert(h: Series, method="newton", order=None) -> Series:
    if method == "newton":
        return revert_newton(h if order is None else h.truncate(min(order, h.order)))
    if method == "tree":
        return invert_via_trees(h, order)
    raise InputError(f"unknown inversion method {method!r}")


def all_ones_model(ring, n_letters=1, k=2):
    """The k-regular all-ones model, whose g enumerates signed k-ary trees."""
    alphabet = [str(i + 1) for i in range(n_letters)]
    one = ring.one
    mat = [[one] * n_letters for _ in range(n_letters)]
    return uniform_model(ring, alphabet, [mat] * k, y_values={a: 1 for a in alphabet})
