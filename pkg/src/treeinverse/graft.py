"""Grafted trees: two-level decompositions of planar rooted trees.

A grafted tree on a skeleton T is a monotone marking of the vertices by
{1, 2} (fathers carry marks <= their sons, leaves are marked 2).  The
1-marked vertices together with their sons form the upper tree A; the
maximal 2-marked subtrees, read in the leaf order of A, are the lower trees
B_1 .. B_d grafted onto A's leaves.  Marking everything 2 gives the trivial
upper tree A = {root} with the whole skeleton as its single lower tree.

Energies multiply: the energy of a grafted tree is the energy of A under the
model, divided by X^(leaves of A), times the product of the energies of the
B_j under the complementary model.  Two telescoping identities follow, a
per-spin one over markings with a nontrivial upper tree and a total one over
all markings; `check_skeleton_sum` evaluates either and returns the
(expected-zero) residual series.  `signed_sum_oracle` turns the same sums
over whole enumeration ranges into series, giving an independent route to
the fixed-point solver's output and to its composition identity.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass, field

from .rings import InputError
from .series import Series
from .spin import SpinModel, partition, restricted_partition
from .trees import PlanarTree, enumerate_k_regular


@dataclass(frozen=True)
class GraftedTree:
    skeleton: PlanarTree
    marking: dict = field(compare=False)  # address tuple -> 1 or 2

    def __post_init__(self):
        t = self.skeleton
        addresses = t.addresses()
        if set(self.marking) != set(addresses):
            raise InputError("marking must cover exactly the vertex set")
        for a in addresses:
            mark = self.marking[a]
            if mark not in (1, 2):
                raise InputError(f"mark at {a} must be 1 or 2")
            sub = t.subtree(a)
            if sub.is_leaf and mark != 2:
                raise InputError(f"leaf {a} must be marked 2")
            for j in range(1, sub.arity + 1):
                if self.marking[a + (j,)] < mark:
                    raise InputError(f"marks must not decrease along edge into {a + (j,)}")

    @property
    def upper_is_trivial(self):
        return self.marking[()] == 2

    def decompose(self):
        """The upper tree A and the grafted lower trees in A's leaf order."""
        t = self.skeleton
        lower = []

        def build(addr):
            if self.marking[addr] == 2:
                lower.append(t.subtree(addr))
                return PlanarTree()
            sub = t.subtree(addr)
            return PlanarTree(tuple(build(addr + (j,)) for j in range(1, sub.arity + 1)))

        upper = build(())
        return upper, tuple(lower)

    def to_json(self):
        return {
            "skeleton": self.skeleton.to_text(),
            "marking": {"".join(map(str, a)) or "e": m for a, m in sorted(self.marking.items())},
        }


def grafted_from_json(data) -> GraftedTree:
    from .trees import tree_from_text

    if not isinstance(data, dict) or "skeleton" not in data or "marking" not in data:
        raise InputError("grafted-tree JSON needs 'skeleton' and 'marking'")
    t = tree_from_text(data["skeleton"])
    marking = {}
    for key, m in data["marking"].items():
        addr = () if key == "e" else tuple(int(ch) for ch in key)
        marking[addr] = int(m)
    return GraftedTree(t, marking)


def enumerate_grafted(t: PlanarTree):
    """All grafted trees on the skeleton t.

    The count is gamma(t) = 1 + prod over principal subtrees of gamma, the
    number of restricted two-chain morphisms of t.
    """

    def markings(sub, addr):
        all2 = {addr + rel: 2 for rel in sub.addresses()}
        yield all2
        if sub.is_leaf:
            return
        pools = [
            list(markings(child, addr + (j,)))
            for j, child in enumerate(sub.children, start=1)
        ]
        idx = [0] * len(pools)
        while True:
            combined = {addr: 1}
            for pool, i in zip(pools, idx):
                combined.update(pool[i])
            yield combined
            j = len(pools) - 1
            while j >= 0:
                idx[j] += 1
                if idx[j] < len(pools[j]):
                    break
                idx[j] = 0
                j -= 1
            if j < 0:
                return

    return [GraftedTree(t, m) for m in markings(t, ())]


def z_grafted(gt: GraftedTree, model: SpinModel, restricted_to=None, order=None) -> Series:
    """Energy sum of a grafted tree: Z(A)/X^d(A) times prod of Z-tilde(B_j).

    With `restricted_to`, the upper tree's root spin is pinned; that needs a
    nontrivial upper tree.
    """
    upper, lower = gt.decompose()
    if restricted_to is not None and upper.is_leaf:
        raise InputError("cannot pin a root spin on a trivial upper tree")
    if order is None:
        order = model.default_order(gt.skeleton)
    d_upper = upper.leaf_count()
    big = order + d_upper
    comp = model.complement()
    if upper.is_leaf:
        total = model.x_series(big)
    elif restricted_to is None:
        total = partition(upper, model).with_order(big)
    else:
        total = restricted_partition(upper, restricted_to, model).with_order(big)
    for b in lower:
        total = total * partition(b, comp).with_order(big)
    return total.shift_x(-d_upper).truncate(order)


def check_skeleton_sum(t: PlanarTree, model: SpinModel, alpha=None, order=None) -> Series:
    """Residual of the telescoping marking sums; zero when the theory holds.

    With alpha: sum over markings with nontrivial upper tree of
    (-1)^(interior of A) * Z_alpha(grafted) plus Z-tilde_alpha(t).
    Without: sum over all markings of (-1)^(interior of A) * Z(grafted).
    """
    if t.is_leaf:
        raise InputError("the skeleton must be nontrivial")
    if order is None:
        order = model.default_order(t)
    total = Series.zero(model.ring, order, model.series_weights())
    for gt in enumerate_grafted(t):
        if alpha is not None and gt.upper_is_trivial:
            continue
        upper, _ = gt.decompose()
        term = z_grafted(gt, model, restricted_to=alpha, order=order)
        if upper.interior_count() % 2:
            term = -term
        total = total + term
    if alpha is not None:
        total = total + restricted_partition(t, alpha, model.complement(), order)
    return total


OracleSeries = namedtuple("OracleSeries", ["series", "sound_degree"])


def signed_sum_oracle(model: SpinModel, max_leaves: int, what: str) -> OracleSeries:
    """Series assembled by explicit enumeration, with its trust horizon.

    what = "g": -X plus, per spin, the signed sum -sum (-1)^(interior) Z_a(T)
    over nontrivial k-regular skeletons with at most max_leaves leaves.
    what = "g_tilde": -X plus, per spin, sum (-1)^(leaves) Z-tilde_a(T).
    what = "composition": -sum over skeletons and markings of
    (-1)^(interior of A + leaves) Z(grafted).

    Every skeleton with more leaves only contributes above X^max_leaves, so
    coefficients are exact up to the reported sound degree.
    """
    if not model.uniform:
        raise InputError("the enumeration oracle works on uniform-arity models")
    k = model.k
    order = max_leaves
    trees = [t for t in enumerate_k_regular(k, max_leaves) if not t.is_leaf]
    total = -model.x_series(order)
    if what == "g":
        comp = model
        for t in trees:
            sign = -1 if (t.interior_count() % 2 == 0) else 1  # -(-1)^interior
            for a in model.alphabet:
                term = restricted_partition(t, a, comp, order)
                total = total + (term if sign > 0 else -term)
    elif what == "g_tilde":
        comp = model.complement()
        for t in trees:
            sign = 1 if t.leaf_count() % 2 == 0 else -1
            for a in model.alphabet:
                term = restricted_partition(t, a, comp, order)
                total = total + (term if sign > 0 else -term)
    elif what == "composition":
        total = Series.zero(model.ring, order, model.series_weights())
        for t in [PlanarTree()] + trees:
            for gt in enumerate_grafted(t):
                upper, _ = gt.decompose()
                sign = (-1) ** (upper.interior_count() + t.leaf_count())
                term = z_grafted(gt, model, order=order)
                total = total - (term if sign > 0 else -term)
    else:
        raise InputError(f"unknown oracle target {what!r}")
    return OracleSeries(total, max_leaves)
