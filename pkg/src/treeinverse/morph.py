"""Counting monotone maps from tree posets into finite chains.

A tree is ordered by descent from the root: a morphism into the chain
{1 < 2 < ... < m} assigns labels that never decrease along edges.  A
morphism is *restricted* when every leaf gets the top label m.  This module
counts such maps per tree (by an exhaustive oracle and by a root-label
recursion), assembles generating functions over whole families of trees,
counts comparable vertex pairs via dual-number coefficients, counts
surjective morphisms (for the full chain these are the linear extensions of
the tree poset), and produces the order polynomial m -> #morphisms(m).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import count
from math import comb, factorial

from .rings import DUAL, QQ, Dual, InputError, SizeLimitError
from .series import Series, series_inverse
from .trees import PlanarTree, enumerate_general

_MAP_GUARD = 10**7


def count_bruteforce(t: PlanarTree, m: int, restricted=False, surjective=False) -> int:
    """Exhaustive enumeration of monotone labelings, vertex by vertex.

    Kept deliberately dumb (it walks candidate assignments and checks each
    constraint literally) so it can act as an oracle for the recursions.
    Refuses when m^vertices exceeds 10^7.
    """
    if m < 0:
        raise InputError("chain length must be nonnegative")
    n = t.vertex_count()
    if m**n > _MAP_GUARD:
        raise SizeLimitError(f"up to {m**n} maps requested; guard is {_MAP_GUARD}")
    if m == 0:
        return 0

    # vertices in depth-first order, each child after its father
    parents = []
    leaves = []

    def walk(sub, parent_idx):
        idx = len(parents)
        parents.append(parent_idx)
        leaves.append(sub.is_leaf)
        for child in sub.children:
            walk(child, idx)

    walk(t, -1)
    labels = [0] * n
    hits = 0

    def assign(i):
        nonlocal hits
        if i == n:
            if not surjective or len(set(labels)) == m:
                hits += 1
            return
        lo = 1 if parents[i] < 0 else labels[parents[i]]
        for lab in range(lo, m + 1):
            if restricted and leaves[i] and lab != m:
                continue
            labels[i] = lab
            assign(i + 1)

    assign(0)
    return hits


def gamma_recursive(t: PlanarTree, m: int, restricted=False) -> int:
    """Morphism count by the root-label recursion.

    S(T, h) counts morphisms of T whose root label is at least h; for a leaf
    that is max(m-h+1, 0) (or 1 when restricted and h <= m), and for an
    interior vertex sum over its exact label of the product of the children's
    S at that label.  For m = 2 this reduces to the product formulas
    gamma(T) = 1 + prod gamma(T_i) (restricted) and the analogue with leaf
    value 2 (unrestricted).
    """
    if m < 0:
        raise InputError("chain length must be nonnegative")
    memo = {}

    def s(sub, h):
        if h > m:
            return 0
        if sub.is_leaf:
            return 1 if restricted else m - h + 1
        key = (sub, h)
        got = memo.get(key)
        if got is not None:
            return got
        total = 0
        for lab in range(h, m + 1):
            prod = 1
            for child in sub.children:
                prod *= s(child, lab)
                if not prod:
                    break
            total += prod
        memo[key] = total
        return total

    return s(t, 1)


# -- generating functions over families ------------------------------------


def _family_k(family):
    if family == "all":
        return None
    if isinstance(family, int) and family >= 2:
        return family
    raise InputError(f"family must be 'all' or an arity >= 2, got {family!r}")


def morphism_gf(family, m: int, restricted: bool, order: int) -> Series:
    """Generating function of morphism counts over a family of trees.

    For the k-regular family t marks leaves and the system is
    y_h = t + sum_{j<=h} y_j^k (restricted) or h*t + same (unrestricted).
    For the family of all trees t marks vertices and
    y_h = t + t*sum_{j<=h} y_j/(1-y_j), with the same h*t twist.
    The answer is y_m.
    """
    k = _family_k(family)
    if m < 1:
        raise InputError("chain length must be at least 1")
    x = Series.x(QQ, order)
    prev_sum = Series.zero(QQ, order)  # sum over j < h of y_j^k or y_j/(1-y_j)
    y_h = x
    for h in range(1, m + 1):
        base = x if restricted else x.scale(h)
        y_h = Series.zero(QQ, order)
        while True:
            if k is None:
                one = Series.const(QQ, 1, order)
                term = x * (y_h * series_inverse(one - y_h))
            else:
                term = y_h.pow(k)
            new = base + prev_sum + term
            if new == y_h:
                break
            y_h = new
        if h < m:
            if k is None:
                one = Series.const(QQ, 1, order)
                prev_sum = prev_sum + x * (y_h * series_inverse(one - y_h))
            else:
                prev_sum = prev_sum + y_h.pow(k)
    return y_h


def morphism_sequence(family, m: int, restricted: bool, terms: int) -> list:
    """The morphism-count sequence as integers, smallest trees first."""
    k = _family_k(family)
    if k is None:
        f = morphism_gf(family, m, restricted, terms)
        return [_as_int(f.coeff_x(n)) for n in range(1, terms + 1)]
    f = morphism_gf(family, m, restricted, 1 + (terms - 1) * (k - 1) + 1)
    return [_as_int(f.coeff_x(1 + j * (k - 1))) for j in range(0, terms)]


def _as_int(c):
    f = Fraction(c)
    if f.denominator != 1:
        raise InputError(f"expected an integer coefficient, got {f}")
    return f.numerator


def comparable_pairs_gf(family, order: int) -> list:
    """Total number of comparable vertex pairs, summed over trees by size.

    Works over dual numbers: the substitution t -> t*(1+eps) multiplies the
    coefficient of t^n by 1+n*eps, so solving y = t + t*phi(y(t*u, u)) at
    u = 1+eps and reading the eps-part of the t^n coefficient differentiates
    the pair-marking variable at 1.  Returns [a_0, a_1, ..., a_order].
    """
    k = _family_k(family)
    x = Series.x(DUAL, order)
    one = Series.const(DUAL, 1, order)

    def subst(s):
        # t -> t*(1+eps): scale the t^n coefficient by (1+eps)^n = 1+n*eps
        return Series(
            DUAL, s.order, {mm: cc * Dual(1, mm.x) for mm, cc in s.terms.items()}, s.weights
        )

    y = Series.zero(DUAL, order)
    while True:
        s = subst(y)
        if k is None:
            new = x + x * (s * series_inverse(one - s))
        else:
            new = x + x * s.pow(k)
        if new == y:
            break
        y = new
    out = []
    for n in range(order + 1):
        c = y.coeff_x(n)
        if c.b.denominator != 1:
            raise InputError("unexpected non-integer pair count")
        out.append(c.b.numerator)
    return out


def comparable_pairs_sequence(family, terms: int) -> list:
    """The printed form of the pair counts: consecutive sizes for the family
    of all trees, every k-th size divided by k for the k-regular family."""
    k = _family_k(family)
    if k is None:
        a = comparable_pairs_gf(family, terms + 1)
        return a[2 : terms + 2]
    a = comparable_pairs_gf(family, k * terms + 1)
    out = []
    for j in range(1, terms + 1):
        v = a[k * j + 1]
        if v % k:
            raise InputError("pair count not divisible by the arity")
        out.append(v // k)
    return out


# -- surjective morphisms ----------------------------------------------------


def surjective(t: PlanarTree) -> int:
    """Surjective morphisms onto the chain of length |t|: linear extensions.

    sigma(T) = (n-1)! / prod |T_j|! times prod sigma(T_j) over the principal
    subtrees, an exact integer.
    """
    if t.is_leaf:
        return 1
    sizes = [c.vertex_count() for c in t.children]
    multinomial = factorial(sum(sizes))
    for s in sizes:
        multinomial //= factorial(s)
    out = multinomial
    for c in t.children:
        out *= surjective(c)
    return out


def tangent_like_numbers(n: int) -> list:
    """alpha_1..alpha_n for the binary family by the convolution recursion

        alpha_1 = 1,  alpha_n = sum_{k=1}^{n-2} C(n-1, k) alpha_k alpha_{n-1-k},

    which vanishes for even n and gives 1, 2, 16, 272, ... at odd n.
    """
    if n < 1:
        raise InputError("need n >= 1")
    alpha = [0] * (n + 1)
    alpha[1] = 1
    for i in range(2, n + 1):
        alpha[i] = sum(comb(i - 1, j) * alpha[j] * alpha[i - 1 - j] for j in range(1, i - 1))
    return alpha[1:]


def surjective_total(family, n: int) -> int:
    """Sum of sigma over all family trees with exactly n vertices.

    The binary family uses the convolution recursion; other families sum
    over the explicit enumeration.
    """
    if n < 1:
        raise InputError("need n >= 1")
    if family == 2:
        return tangent_like_numbers(n)[n - 1]
    k = None if family == "all" else _family_k(family)
    degrees = count(1) if k is None else {k}
    return sum(
        surjective(t) for t in enumerate_general(degrees, n) if t.vertex_count() == n
    )


# -- order polynomials -------------------------------------------------------


@dataclass
class OrderPolynomial:
    """#morphisms as a polynomial in the chain length m.

    binomial_coeffs[j] is the coefficient of C(m, j); for unrestricted
    morphisms it equals the number of surjective morphisms onto a j-chain.
    coeffs is the same polynomial in the monomial basis (Fractions,
    constant term first).  For restricted morphisms the polynomial agrees
    with the count for m >= 1 (the lone-leaf tree has count 0 at m = 0 but
    continuation 1 there).
    """

    binomial_coeffs: list
    coeffs: list

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def eval(self, m):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * m + c
        return acc


def _newton_expand(samples, m0):
    """Monomial coefficients of the polynomial through (m0+i, samples[i])."""
    diffs = list(samples)
    alphas = [diffs[0]]
    for _ in range(len(samples) - 1):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        alphas.append(diffs[0])
    while len(alphas) > 1 and alphas[-1] == 0:
        alphas.pop()
    coeffs = [Fraction(0)] * len(alphas)
    basis = [Fraction(1)]  # C(m - m0, 0)
    for j, alpha in enumerate(alphas):
        for i, c in enumerate(basis):
            coeffs[i] += alpha * c
        # C(m - m0, j+1) = C(m - m0, j) * (m - m0 - j) / (j + 1)
        nxt = [Fraction(0)] * (len(basis) + 1)
        for i, c in enumerate(basis):
            nxt[i + 1] += c / (j + 1)
            nxt[i] -= c * Fraction(m0 + j, j + 1)
        basis = nxt
    return coeffs


def order_polynomial(t: PlanarTree, restricted=False) -> OrderPolynomial:
    """Interpolate the morphism count through |t|+1 consecutive chain lengths.

    The count is a polynomial in m of degree at most |t| (at most the number
    of interior vertices when restricted), so |t|+1 samples pin it.  The
    unrestricted samples start at m = 0; restricted ones start at m = 1
    because pinning leaves to the top label only makes sense there.
    """
    n = t.vertex_count()
    m0 = 1 if restricted else 0
    values = [gamma_recursive(t, m, restricted) for m in range(m0, m0 + n + 1)]
    coeffs = _newton_expand(values, m0)

    def eval_at(m):
        acc = Fraction(0)
        for c in reversed(coeffs):
            acc = acc * m + c
        return acc

    # forward differences of the polynomial at 0 give the C(m, j) basis
    poly_vals = [eval_at(m) for m in range(len(coeffs))]
    binom_coeffs = []
    diffs = poly_vals
    for _ in range(len(coeffs)):
        binom_coeffs.append(diffs[0])
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    binom_coeffs = [int(c) if c.denominator == 1 else c for c in binom_coeffs]
    return OrderPolynomial(binom_coeffs, coeffs)
