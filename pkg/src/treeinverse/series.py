"""Truncated multivariate formal power series with exact coefficients.

A series lives in R[[X, Y_1, Y_2, ...]] truncated at a weighted total degree
``order``: the distinguished variable X has weight 1 and every named parameter
variable has weight 0 unless the series carries an explicit weight map.  Terms
whose weighted degree exceeds ``order`` are unknown and never stored; zero
coefficients are dropped eagerly, so equality of term dictionaries is
structural equality of series.

Binary operations require both operands to share the ring, the weight map and
(conservatively) truncate to the smaller order.  Composition substitutes a
series for X only; parameter variables pass through untouched.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings import InputError, Ring


@dataclass(frozen=True, slots=True)
class Monomial:
    """X^x times a product of parameter variables, ys sorted by name."""

    x: int
    ys: tuple = ()

    def __mul__(self, other):
        if not self.ys:
            ys = other.ys
        elif not other.ys:
            ys = self.ys
        else:
            d = dict(self.ys)
            for n, e in other.ys:
                d[n] = d.get(n, 0) + e
            ys = tuple(sorted(d.items()))
        return Monomial(self.x + other.x, ys)

    def wdeg(self, weights):
        d = self.x
        for n, e in self.ys:
            d += weights.get(n, 0) * e
        return d

    def total_degree(self):
        return self.x + sum(e for _, e in self.ys)

    def sort_key(self):
        return (self.total_degree(), self.x, self.ys)


_X1 = Monomial(1)
_ONE = Monomial(0)


class Series:
    """A weighted-degree-truncated power series over an exact ring."""

    __slots__ = ("ring", "order", "weights", "terms")

    def __init__(self, ring: Ring, order: int, terms=None, weights=None):
        if order < 0:
            raise InputError("truncation order must be nonnegative")
        self.ring = ring
        self.order = order
        self.weights = dict(weights) if weights else {}
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, ring, order, weights=None):
        return cls(ring, order, {}, weights)

    @classmethod
    def const(cls, ring, c, order, weights=None):
        return cls(ring, order, {_ONE: ring.coerce(c)}, weights)

    @classmethod
    def x(cls, ring, order, exp=1, c=1, weights=None):
        return cls(ring, order, {Monomial(exp): ring.coerce(c)}, weights)

    @classmethod
    def y(cls, ring, name, order, weights=None):
        return cls(ring, order, {Monomial(0, ((name, 1),)): ring.one}, weights)

    @classmethod
    def from_x_coeffs(cls, ring, coeffs, order=None, weights=None):
        """Univariate helper: coeffs[k] is the coefficient of X^k."""
        if order is None:
            order = len(coeffs) - 1
        terms = {}
        for k, c in enumerate(coeffs):
            c = ring.coerce(c)
            if c and k <= order:
                terms[Monomial(k)] = c
        return cls(ring, order, terms, weights)

    # -- structure ------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_pure_x(self):
        return all(not m.ys for m in self.terms)

    def coefficient(self, m: Monomial):
        return self.terms.get(m, self.ring.zero)

    def coeff_x(self, k: int):
        """Coefficient of X^k; the series must have no parameter variables."""
        if not self.is_pure_x():
            raise InputError("coeff_x on a series with parameter variables")
        return self.terms.get(Monomial(k), self.ring.zero)

    def x_coeffs(self):
        """Dense list of X-coefficients 0..order for a pure-X series."""
        if not self.is_pure_x():
            raise InputError("x_coeffs on a series with parameter variables")
        out = [self.ring.zero] * (self.order + 1)
        for m, c in self.terms.items():
            out[m.x] = c
        return out

    def valuation(self):
        """Smallest weighted degree of a stored term; order+1 if zero."""
        if not self.terms:
            return self.order + 1
        return min(m.wdeg(self.weights) for m in self.terms)

    def truncate(self, n):
        if n > self.order:
            raise InputError("cannot truncate to a larger order")
        if n == self.order:
            return self
        w = self.weights
        return Series(self.ring, n, {m: c for m, c in self.terms.items() if m.wdeg(w) <= n}, w)

    def with_order(self, n):
        """Re-tag the truncation order.

        Raising the order asserts the series is exact (a polynomial with no
        hidden tail); lowering it truncates.
        """
        if n <= self.order:
            return self.truncate(n)
        return Series(self.ring, n, self.terms, self.weights)

    def shift_x(self, k):
        """Multiply by X^k (k may be negative if every term allows it)."""
        if k == 0:
            return self
        terms = {}
        for m, c in self.terms.items():
            if m.x + k < 0:
                raise InputError("shift would create a negative X exponent")
            terms[Monomial(m.x + k, m.ys)] = c
        return Series(self.ring, self.order + k, terms, self.weights)

    def map_coefficients(self, fn, ring=None):
        """Apply fn to every coefficient, optionally changing rings."""
        ring = ring or self.ring
        return Series(ring, self.order, {m: fn(c) for m, c in self.terms.items()}, self.weights)

    def _compat(self, other):
        if self.ring != other.ring:
            raise InputError("mixed coefficient rings")
        if self.weights != other.weights:
            raise InputError("mixed weight maps")

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        self._compat(other)
        n = min(self.order, other.order)
        w = self.weights
        terms = {m: c for m, c in self.terms.items() if m.wdeg(w) <= n}
        for m, c in other.terms.items():
            if m.wdeg(w) <= n:
                s = terms.get(m)
                s = c if s is None else s + c
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return Series(self.ring, n, terms, w)

    def __sub__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Series(self.ring, self.order, {m: -c for m, c in self.terms.items()}, self.weights)

    def scale(self, c):
        c = self.ring.coerce(c)
        if not c:
            return Series.zero(self.ring, self.order, self.weights)
        return Series(self.ring, self.order, {m: c * v for m, v in self.terms.items()}, self.weights)

    def __mul__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        self._compat(other)
        n = min(self.order, other.order)
        w = self.weights
        a = [(m, m.wdeg(w), c) for m, c in self.terms.items()]
        b = [(m, m.wdeg(w), c) for m, c in other.terms.items()]
        if len(a) > len(b):
            a, b = b, a
        terms = {}
        for m1, d1, c1 in a:
            room = n - d1
            for m2, d2, c2 in b:
                if d2 > room:
                    continue
                m = m1 * m2
                p = c1 * c2
                s = terms.get(m)
                s = p if s is None else s + p
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return Series(self.ring, n, terms, w)

    def pow(self, k):
        if k < 0:
            raise InputError("negative powers are not defined here")
        result = Series.const(self.ring, 1, self.order, self.weights)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.order == other.order
            and self.weights == other.weights
            and self.terms == other.terms
        )

    def __hash__(self):
        raise TypeError("Series is not hashable")

    # -- display ---------------------------------------------------------

    def to_text(self, xname="X"):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=Monomial.sort_key):
            c = self.terms[m]
            factors = []
            if m.x:
                factors.append(xname if m.x == 1 else f"{xname}^{m.x}")
            for nme, e in m.ys:
                factors.append(nme if e == 1 else f"{nme}^{e}")
            cs = self.ring.fmt(c)
            neg = cs.startswith("-") and not _needs_parens(cs[1:])
            if neg:
                cs = cs[1:]
            sign = "- " if neg else "+ "
            if _needs_parens(cs):
                cs = f"({cs})"
            if not factors:
                body = cs
            elif cs == "1":
                body = "*".join(factors)
            else:
                body = cs + "*" + "*".join(factors)
            parts.append(sign + body)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def __repr__(self):
        return f"Series({self.to_text()} + O(deg {self.order + 1}))"


def _needs_parens(cs):
    return any(ch in cs for ch in "+- ")


# -- composition and inversion -------------------------------------------


def compose_in_x(f: Series, h: Series) -> Series:
    """Substitute h for X in f, leaving parameter variables alone.

    Every monomial of h must have weighted degree >= 1, otherwise the
    substitution is not truncation-sound.
    """
    f._compat(h)
    if h.valuation() < 1:
        raise InputError("substituted series must have valuation >= 1")
    n = min(f.order, h.order)
    w = f.weights
    by_x = {}
    for m, c in f.terms.items():
        if m.wdeg(w) <= n:
            by_x.setdefault(m.x, []).append((m.ys, c))
    out = Series.zero(f.ring, n, w)
    hk = Series.const(f.ring, 1, n, w)
    h = h.truncate(n)
    for k in range(0, n + 1):
        if k:
            hk = hk * h
            if hk.is_zero():
                break
        if k in by_x:
            part = {}
            for ys, c in by_x[k]:
                ym = Monomial(0, ys)
                for mh, ch in hk.terms.items():
                    m = ym * mh
                    if m.wdeg(w) <= n:
                        s = part.get(m)
                        p = c * ch
                        s = p if s is None else s + p
                        if s:
                            part[m] = s
                        else:
                            part.pop(m, None)
            out = out + Series(f.ring, n, part, w)
    return out


def derivative_x(f: Series) -> Series:
    """Formal derivative with respect to X (order drops by one)."""
    if f.order == 0:
        raise InputError("cannot differentiate an order-0 series")
    terms = {}
    for m, c in f.terms.items():
        if m.x >= 1:
            terms[Monomial(m.x - 1, m.ys)] = c * m.x
    return Series(f.ring, f.order - 1, terms, f.weights)


def series_inverse(g: Series, order=None) -> Series:
    """Multiplicative inverse of a series with unit constant term.

    Every non-constant monomial of g must have weighted degree >= 1.
    Newton iteration u <- u*(2 - g*u) doubles the number of correct terms.
    """
    n = g.order if order is None else order
    c0 = g.coefficient(_ONE)
    if not g.ring.is_unit(c0):
        raise InputError("constant term is not a unit")
    if any(m.wdeg(g.weights) < 1 for m in g.terms if m != _ONE):
        raise InputError("non-constant terms must have weighted degree >= 1")
    g = g.with_order(n) if g.order < n else g.truncate(n)
    u = Series.const(g.ring, g.ring.inv(c0), 0, g.weights)
    m = 0
    while m < n:
        m = min(2 * m + 1, n)
        # terms of the iterate beyond its proven accuracy are scratch data
        # that the next multiplication corrects, so re-tagging is sound
        u = u.with_order(m)
        two = Series.const(g.ring, 2, m, g.weights)
        u = (u * (two - g.truncate(m) * u)).truncate(m)
    return u.with_order(n)


def revert_newton(f: Series) -> Series:
    """Compositional inverse of a univariate series c1*X + c2*X^2 + ...

    Requires zero constant term and a unit linear coefficient.  Uses the
    order-doubling Newton iteration h <- h - (f(h) - X)/f'(h), all exact.
    """
    if not f.is_pure_x():
        raise InputError("reversion needs a univariate series in X")
    if f.coeff_x(0):
        raise InputError("reversion needs a zero constant term")
    c1 = f.coeff_x(1)
    if not f.ring.is_unit(c1):
        raise InputError("linear coefficient must be a unit")
    n = f.order
    if n < 1:
        raise InputError("order must be at least 1")
    ring = f.ring
    fp = derivative_x(f.with_order(n + 1))
    h = Series.x(ring, 1, c=ring.inv(c1))
    m = 1
    while m < n:
        m = min(2 * m + 1, n)
        h = h.with_order(m)
        x = Series.x(ring, m)
        num = compose_in_x(f.truncate(m), h) - x
        den = compose_in_x(fp.truncate(m), h)
        h = (h - num * series_inverse(den, m)).truncate(m)
    return h.with_order(n)


# -- serialization ---------------------------------------------------------


def series_to_json(f: Series) -> dict:
    terms = []
    for m in sorted(f.terms, key=Monomial.sort_key):
        entry = {"x": m.x, "c": f.ring.fmt(f.terms[m])}
        if m.ys:
            entry["y"] = {n: e for n, e in m.ys}
        terms.append(entry)
    out = {"order": f.order, "terms": terms, "ring": f.ring.to_json()}
    if f.weights:
        out["weights"] = dict(f.weights)
    return out


def series_from_json(data, ring=None) -> Series:
    from .rings import ring_from_json

    if not isinstance(data, dict) or "order" not in data or "terms" not in data:
        raise InputError("series JSON needs 'order' and 'terms'")
    if ring is None:
        ring = ring_from_json(data.get("ring", "rational"))
    terms = {}
    for entry in data["terms"]:
        try:
            x = int(entry["x"])
            ys = tuple(sorted((str(n), int(e)) for n, e in entry.get("y", {}).items() if int(e)))
            c = ring.parse(str(entry["c"]))
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"bad series term {entry!r}") from e
        if x < 0:
            raise InputError("negative X exponent in series JSON")
        m = Monomial(x, ys)
        if m in terms:
            raise InputError(f"duplicate monomial in series JSON: {entry!r}")
        if c:
            terms[m] = c
    weights = {str(k): int(v) for k, v in data.get("weights", {}).items()}
    order = int(data["order"])
    f = Series(ring, order, {}, weights)
    for m, c in terms.items():
        if m.wdeg(f.weights) <= order:
            f.terms[m] = c
    return f
