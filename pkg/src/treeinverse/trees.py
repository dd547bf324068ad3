"""Planar rooted trees, addresses, and exhaustive enumeration.

Trees are immutable: a vertex is a leaf or carries an ordered tuple of child
subtrees.  Vertices are named by addresses, the tuples of 1-based child
positions on the path from the root; the root has the empty address.

Text form: ``L`` is the one-vertex tree, ``(c1 c2 ... ck)`` an interior root
with k ordered children.  For trees whose interior vertices all have the same
arity k there is also a compact address form listing the interior addresses,
e.g. ``e,1,2,11,12,22,121,222`` (``e`` is the root).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count, takewhile

from .rings import InputError


@dataclass(frozen=True, slots=True)
class PlanarTree:
    children: tuple = ()

    @property
    def is_leaf(self):
        return not self.children

    @property
    def arity(self):
        return len(self.children)

    def leaf_count(self):
        if self.is_leaf:
            return 1
        return sum(c.leaf_count() for c in self.children)

    def interior_count(self):
        if self.is_leaf:
            return 0
        return 1 + sum(c.interior_count() for c in self.children)

    def vertex_count(self):
        return 1 + sum(c.vertex_count() for c in self.children)

    def addresses(self):
        """All vertex addresses in depth-first (lexicographic) order."""
        out = [()]
        for i, c in enumerate(self.children, start=1):
            out.extend((i,) + a for a in c.addresses())
        return out

    def interior_addresses(self):
        return [a for a in self.addresses() if not self.subtree(a).is_leaf]

    def subtree(self, address):
        t = self
        for i in address:
            if not 1 <= i <= t.arity:
                raise InputError(f"address {address} not in tree")
            t = t.children[i - 1]
        return t

    def principal_subtrees(self):
        return list(self.children)

    def is_k_regular(self, k):
        if self.is_leaf:
            return True
        return self.arity == k and all(c.is_k_regular(k) for c in self.children)

    def regular_arity(self):
        """The common interior arity, or None if mixed or trivial."""
        arities = {self.subtree(a).arity for a in self.interior_addresses()}
        if len(arities) == 1:
            return arities.pop()
        return None

    def to_text(self):
        if self.is_leaf:
            return "L"
        return "(" + " ".join(c.to_text() for c in self.children) + ")"

    def __repr__(self):
        return f"PlanarTree[{self.to_text()}]"


LEAF = PlanarTree()


def tree_from_text(s: str) -> PlanarTree:
    """Parse the S-expression text form."""
    tokens = s.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def parse():
        nonlocal pos
        if pos >= len(tokens):
            raise InputError(f"unexpected end of tree text {s!r}")
        tok = tokens[pos]
        pos += 1
        if tok == "L":
            return LEAF
        if tok != "(":
            raise InputError(f"unexpected token {tok!r} in tree text {s!r}")
        children = []
        while pos < len(tokens) and tokens[pos] != ")":
            children.append(parse())
        if pos >= len(tokens):
            raise InputError(f"unbalanced parentheses in tree text {s!r}")
        pos += 1
        if not children:
            raise InputError("interior vertices need at least one child")
        return PlanarTree(tuple(children))

    t = parse()
    if pos != len(tokens):
        raise InputError(f"trailing tokens in tree text {s!r}")
    return t


def tree_to_addresses(t: PlanarTree) -> str:
    """Compact form: comma-separated interior addresses, 'e' for the root.

    Emitted in level order (shorter addresses first); parsing accepts any
    order since the list is a set.
    """
    parts = []
    for a in sorted(t.interior_addresses(), key=lambda a: (len(a), a)):
        parts.append("e" if not a else "".join(str(i) for i in a))
    return ",".join(parts) if parts else ""


def tree_from_addresses(s: str, k: int | None = None) -> PlanarTree:
    """Rebuild a k-regular tree from its interior-address list.

    Every interior vertex gets k children; a child is interior exactly when
    its address appears in the list.  k defaults to the largest digit seen
    (so single-interior-vertex trees need an explicit k).
    """
    s = s.strip()
    if not s:
        return LEAF
    interior = set()
    for part in s.split(","):
        part = part.strip()
        if part == "e":
            interior.add(())
        elif part.isdigit():
            interior.add(tuple(int(ch) for ch in part))
        else:
            raise InputError(f"bad address {part!r}")
    if () not in interior:
        raise InputError("a nonempty interior list must contain the root 'e'")
    if k is None:
        digits = [i for a in interior for i in a]
        k = max(digits) if digits else 2
    if any(i > k or i < 1 for a in interior for i in a):
        raise InputError(f"address digit out of range for arity {k}")

    def build(addr):
        if addr not in interior:
            return LEAF
        return PlanarTree(tuple(build(addr + (i,)) for i in range(1, k + 1)))

    t = build(())
    if set(a for a in t.interior_addresses()) != interior:
        raise InputError("address list is not downward closed")
    return t


def enumerate_k_regular(k: int, max_leaves: int):
    """All k-regular trees with at most max_leaves leaves.

    Ordered by leaf count, then lexicographically on the recursively ordered
    child tuples.  A k-regular tree with n interior vertices has
    (k-1)*n + 1 leaves, so counts per leaf class are Fuss-Catalan numbers.
    """
    if k < 2:
        raise InputError("regular enumeration needs arity k >= 2")
    if max_leaves < 1:
        raise InputError("max_leaves must be positive")
    by_leaves = _regular_by_leaves(k, max_leaves)
    out = []
    for d in range(1, max_leaves + 1):
        out.extend(by_leaves.get(d, ()))
    return out


def _regular_by_leaves(k, max_leaves, _cache={}):
    key = (k, max_leaves)
    if key in _cache:
        return _cache[key]
    by_leaves = {1: [LEAF]}
    for d in range(2, max_leaves + 1):
        trees = []
        for parts in _compositions(d, k):
            for combo in _product_of([by_leaves.get(p, ()) for p in parts]):
                trees.append(PlanarTree(tuple(combo)))
        if trees:
            by_leaves[d] = trees
    _cache[key] = by_leaves
    return by_leaves


def enumerate_general(degrees, max_vertices: int):
    """All trees with every interior arity in `degrees`, at most max_vertices.

    `degrees` is a finite collection of positive integers, or an ascending
    iterator such as itertools.count(2) for an unbounded degree set; it is
    consumed only up to max_vertices - 1, the largest arity that fits.
    Ordered by vertex count, then lexicographically as in the regular case.
    """
    if max_vertices < 1:
        raise InputError("max_vertices must be positive")
    ks = _degrees_upto(degrees, max_vertices - 1)
    by_vertices = {1: [LEAF]}
    for n in range(2, max_vertices + 1):
        trees = []
        for k in ks:
            if k > n - 1:
                continue
            for parts in _compositions(n - 1, k):
                for combo in _product_of([by_vertices.get(p, ()) for p in parts]):
                    trees.append(PlanarTree(tuple(combo)))
        if trees:
            by_vertices[n] = trees
    out = []
    for n in range(1, max_vertices + 1):
        out.extend(by_vertices.get(n, ()))
    return out


def _degrees_upto(degrees, cap):
    if isinstance(degrees, (set, frozenset, list, tuple, range)):
        ks = sorted(d for d in set(degrees) if d <= cap)
        bad = [d for d in degrees if not isinstance(d, int) or d < 1]
    else:
        ks = list(takewhile(lambda d: d <= cap, degrees))
        bad = [d for d in ks if not isinstance(d, int) or d < 1]
    if bad:
        raise InputError(f"arities must be positive integers, got {bad}")
    if not ks and cap >= 1:
        pass  # only the trivial tree fits; that is fine
    return ks


def _compositions(total, parts):
    """All tuples of `parts` positive integers summing to `total`, lex order."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _product_of(pools):
    if any(not pool for pool in pools):
        return
    idx = [0] * len(pools)
    while True:
        yield tuple(pool[i] for pool, i in zip(pools, idx))
        j = len(pools) - 1
        while j >= 0:
            idx[j] += 1
            if idx[j] < len(pools[j]):
                break
            idx[j] = 0
            j -= 1
        if j < 0:
            return


def stats(t: PlanarTree) -> dict:
    """Summary counts and the address list in depth-first order."""
    return {
        "leaves": t.leaf_count(),
        "interior": t.interior_count(),
        "vertices": t.vertex_count(),
        "addresses": t.addresses(),
        "interior_addresses": t.interior_addresses(),
        "principal_subtrees": t.principal_subtrees(),
    }


def catalan(n: int) -> int:
    """The n-th Catalan number, used as an enumeration cross-check."""
    from math import comb

    return comb(2 * n, n) // (n + 1)


_ = count  # itertools.count is the idiomatic unbounded degree set
