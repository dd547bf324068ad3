"""Spin models on planar rooted trees and their partition functions.

A model fixes a finite alphabet of spins, and for each admitted interior
arity k a row-alphabet (the spins allowed on arity-k vertices) together with
k square-ish matrices M_1 .. M_k whose rows are indexed by that row-alphabet
and whose columns are indexed by the full alphabet.  A state of a tree
assigns an admissible spin to every interior vertex.  Leafless edges (edges
whose lower endpoint is interior) are typed by the position of the lower
endpoint among its brothers: the edge into a j-th son is weighted by M_j.

The energy of a state is X^(number of leaves) times the product of vertex
weights Y_spin over interior vertices and of matrix weights over leafless
edges.  The partition function sums energies over all states; it satisfies a
product recursion over the principal subtrees that this module implements
directly, with a brute-force state sum kept alongside as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings import InputError, SizeLimitError
from .series import Monomial, Series
from .trees import PlanarTree

_STATE_GUARD = 10**6


def y_name(spin) -> str:
    return "Y" + str(spin)


@dataclass(frozen=True)
class Block:
    """Matrices for one interior arity: rows = letters, columns = alphabet."""

    letters: tuple
    matrices: tuple  # k matrices, each a tuple of rows


class SpinModel:
    def __init__(self, ring, alphabet, blocks, y_values=None, y_weight=0, x_value=None):
        self.ring = ring
        self.alphabet = tuple(str(a) for a in alphabet)
        if len(set(self.alphabet)) != len(self.alphabet):
            raise InputError("alphabet letters must be distinct")
        self.col_index = {a: i for i, a in enumerate(self.alphabet)}
        self.blocks = {}
        seen = []
        for k, (letters, matrices) in sorted(blocks.items()):
            if not isinstance(k, int) or k < 1:
                raise InputError("arities must be positive integers")
            letters = tuple(str(a) for a in letters)
            if any(a not in self.col_index for a in letters):
                raise InputError("block letters must belong to the alphabet")
            seen.extend(letters)
            if len(matrices) != k:
                raise InputError(f"arity {k} needs exactly {k} matrices")
            mats = []
            for mat in matrices:
                if len(mat) != len(letters):
                    raise InputError("matrix row count must match the block letters")
                rows = []
                for row in mat:
                    if len(row) != len(self.alphabet):
                        raise InputError("matrix column count must match the alphabet")
                    rows.append(tuple(ring.coerce(v) for v in row))
                mats.append(tuple(rows))
            self.blocks[k] = Block(letters, tuple(mats))
        if sorted(seen) != sorted(set(seen)):
            raise InputError("row alphabets of different arities must be disjoint")
        if set(seen) != set(self.alphabet):
            raise InputError("row alphabets must cover the alphabet")
        if y_values is not None:
            y_values = {str(a): ring.coerce(v) for a, v in y_values.items()}
            if set(y_values) != set(self.alphabet):
                raise InputError("y values must cover the alphabet exactly")
        self.y_values = y_values
        self.y_weight = int(y_weight)
        self.x_value = None if x_value is None else ring.coerce(x_value)
        self._row_index = {
            k: {a: i for i, a in enumerate(b.letters)} for k, b in self.blocks.items()
        }

    # -- structure -------------------------------------------------------

    @property
    def uniform(self):
        return len(self.blocks) == 1 and next(iter(self.blocks.values())).letters == self.alphabet

    @property
    def k(self):
        if not self.uniform:
            raise InputError("model has several arity classes; no single k")
        return next(iter(self.blocks))

    @property
    def degrees(self):
        return sorted(self.blocks)

    def letters_for(self, k):
        if k not in self.blocks:
            raise InputError(f"no matrices for arity {k}")
        return self.blocks[k].letters

    def weight(self, k, j, alpha, beta):
        """Entry M_j^{(k)}(alpha, beta); j is 1-based."""
        block = self.blocks.get(k)
        if block is None:
            raise InputError(f"no matrices for arity {k}")
        try:
            r = self._row_index[k][alpha]
        except KeyError:
            raise InputError(f"spin {alpha!r} not allowed on arity-{k} vertices") from None
        return block.matrices[j - 1][r][self.col_index[beta]]

    def complement(self):
        """Entrywise 1 - w on every matrix; everything else unchanged."""
        one = self.ring.one
        blocks = {
            k: (
                b.letters,
                tuple(tuple(tuple(one - v for v in row) for row in mat) for mat in b.matrices),
            )
            for k, b in self.blocks.items()
        }
        return SpinModel(self.ring, self.alphabet, blocks, self.y_values, self.y_weight, self.x_value)

    # -- series helpers ---------------------------------------------------

    def series_weights(self):
        if self.y_values is None and self.y_weight:
            return {y_name(a): self.y_weight for a in self.alphabet}
        return {}

    def x_series(self, order):
        if self.x_value is None:
            return Series.x(self.ring, order, weights=self.series_weights())
        return Series.const(self.ring, self.x_value, order, self.series_weights())

    def y_series(self, spin, order):
        if self.y_values is None:
            return Series(
                self.ring,
                order,
                {Monomial(0, ((y_name(spin), 1),)): self.ring.one},
                self.series_weights(),
            )
        return Series.const(self.ring, self.y_values[spin], order, self.series_weights())

    def default_order(self, t: PlanarTree):
        return t.leaf_count() + self.y_weight * t.interior_count()

    # -- serialization ------------------------------------------------------

    def to_json(self):
        def fmt_mat(mat):
            return [[self.ring.fmt(v) for v in row] for row in mat]

        out = {"alphabet": list(self.alphabet), "ring": self.ring.to_json()}
        if self.uniform:
            k = self.k
            out["k"] = k
            out["matrices"] = [fmt_mat(m) for m in self.blocks[k].matrices]
        else:
            out["degrees"] = [
                {
                    "k": k,
                    "letters": list(b.letters),
                    "matrices": [fmt_mat(m) for m in b.matrices],
                }
                for k, b in sorted(self.blocks.items())
            ]
        out["y"] = (
            "symbolic"
            if self.y_values is None
            else {a: self.ring.fmt(v) for a, v in self.y_values.items()}
        )
        if self.y_weight:
            out["y_weight"] = self.y_weight
        if self.x_value is not None:
            out["x"] = self.ring.fmt(self.x_value)
        return out


def model_from_json(data) -> SpinModel:
    from .rings import ring_from_json

    if not isinstance(data, dict) or "alphabet" not in data:
        raise InputError("model JSON needs an 'alphabet'")
    ring = ring_from_json(data.get("ring", "rational"))

    def parse_entry(v):
        if isinstance(v, str):
            return ring.parse(v)
        if isinstance(v, int):
            return ring.coerce(v)
        raise InputError(f"bad matrix entry {v!r}")

    def parse_mat(mat):
        return [[parse_entry(v) for v in row] for row in mat]

    alphabet = data["alphabet"]
    if "k" in data and "degrees" in data:
        raise InputError("give either 'k'+'matrices' or 'degrees', not both")
    if "k" in data:
        k = int(data["k"])
        mats = data.get("matrices")
        if mats is None:
            raise InputError("uniform model JSON needs 'matrices'")
        blocks = {k: (alphabet, [parse_mat(m) for m in mats])}
    elif "degrees" in data:
        blocks = {}
        for block in data["degrees"]:
            k = int(block["k"])
            if k in blocks:
                raise InputError(f"duplicate arity {k} in 'degrees'")
            blocks[k] = (block["letters"], [parse_mat(m) for m in block["matrices"]])
    else:
        raise InputError("model JSON needs 'k' or 'degrees'")
    y = data.get("y", "symbolic")
    if y == "symbolic":
        y_values = None
    elif isinstance(y, dict):
        y_values = {a: parse_entry(v) for a, v in y.items()}
    else:
        raise InputError("'y' must be a spin->value map or \"symbolic\"")
    x_value = data.get("x")
    if x_value is not None:
        x_value = parse_entry(x_value)
    return SpinModel(ring, alphabet, blocks, y_values, int(data.get("y_weight", 0)), x_value)


# -- energies and partition functions ---------------------------------------


def _check_state(t: PlanarTree, state, model: SpinModel):
    for a in t.interior_addresses():
        k = t.subtree(a).arity
        spin = state.get(a)
        if spin is None:
            raise InputError(f"state misses interior vertex {a}")
        if str(spin) not in model.letters_for(k):
            raise InputError(f"spin {spin!r} not allowed on arity-{k} vertex {a}")


def energy(t: PlanarTree, state, model: SpinModel, order=None) -> Series:
    """Energy of one admissible state, as a series in X (and symbolic Ys)."""
    state = {tuple(a): str(s) for a, s in state.items()}
    _check_state(t, state, model)
    if order is None:
        order = model.default_order(t)
    total = model.x_series(order).pow(t.leaf_count())
    for a in t.interior_addresses():
        total = total * model.y_series(state[a], order)
        sub = t.subtree(a)
        for j, child in enumerate(sub.children, start=1):
            if not child.is_leaf:
                w = model.weight(sub.arity, j, state[a], state[a + (j,)])
                total = total.scale(w)
    return total


def restricted_partition(t: PlanarTree, alpha, model: SpinModel, order=None) -> Series:
    """Partition function over states with the root spin pinned to alpha.

    The trivial tree has no interior vertex to pin, so its restricted
    partition function is 0 by convention.
    """
    alpha = str(alpha)
    if order is None:
        order = model.default_order(t)
    if t.is_leaf:
        return Series.zero(model.ring, order, model.series_weights())
    if alpha not in model.letters_for(t.arity):
        raise InputError(f"spin {alpha!r} not allowed on an arity-{t.arity} root")
    return _zvec(t, model, order, {})[alpha]


def partition(t: PlanarTree, model: SpinModel, order=None) -> Series:
    """Full partition function; the trivial tree contributes X itself."""
    if order is None:
        order = model.default_order(t)
    if t.is_leaf:
        return model.x_series(order)
    vec = _zvec(t, model, order, {})
    total = Series.zero(model.ring, order, model.series_weights())
    for z in vec.values():
        total = total + z
    return total


def _zvec(t: PlanarTree, model: SpinModel, order, memo):
    """Restricted partition functions of a nontrivial tree, per root spin."""
    got = memo.get(t)
    if got is not None:
        return got
    k = t.arity
    letters = model.letters_for(k)
    xs = model.x_series(order)
    factors_by_child = []
    for child in t.children:
        if child.is_leaf:
            factors_by_child.append(None)
        else:
            factors_by_child.append(_zvec(child, model, order, memo))
    vec = {}
    for alpha in letters:
        z = model.y_series(alpha, order)
        for j, child in enumerate(t.children, start=1):
            sub = factors_by_child[j - 1]
            if sub is None:
                z = z * xs
            else:
                c = Series.zero(model.ring, order, model.series_weights())
                for beta, zb in sub.items():
                    c = c + zb.scale(model.weight(k, j, alpha, beta))
                z = z * c
        vec[alpha] = z
    memo[t] = vec
    return vec


def partition_by_state_sum(t: PlanarTree, model: SpinModel, order=None, root_spin=None) -> Series:
    """Independent oracle: enumerate all admissible states and sum energies."""
    if order is None:
        order = model.default_order(t)
    if t.is_leaf:
        if root_spin is not None:
            return Series.zero(model.ring, order, model.series_weights())
        return model.x_series(order)
    interior = t.interior_addresses()
    pools = [model.letters_for(t.subtree(a).arity) for a in interior]
    count = 1
    for p in pools:
        count *= len(p)
        if count > _STATE_GUARD:
            raise SizeLimitError(f"state space exceeds {_STATE_GUARD}")
    total = Series.zero(model.ring, order, model.series_weights())
    idx = [0] * len(pools)
    while True:
        state = {a: pools[i][idx[i]] for i, a in enumerate(interior)}
        if root_spin is None or state[()] == str(root_spin):
            total = total + energy(t, state, model, order)
        j = len(pools) - 1
        while j >= 0:
            idx[j] += 1
            if idx[j] < len(pools[j]):
                break
            idx[j] = 0
            j -= 1
        if j < 0:
            return total


def uniform_model(ring, alphabet, matrices, y_values=None, y_weight=0, x_value=None) -> SpinModel:
    """Convenience constructor: one arity class covering the whole alphabet."""
    k = len(matrices)
    return SpinModel(ring, alphabet, {k: (alphabet, matrices)}, y_values, y_weight, x_value)
