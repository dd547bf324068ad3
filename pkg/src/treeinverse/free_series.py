"""Word series in noncommuting letters X and Y_alpha with rational scalars.

The solvers in `solve` work with commuting variables; this module redoes the
fixed-point bootstrap in the free algebra, where a monomial is a *word*, an
ordered sequence of letters.  Multiplication concatenates words, composition
replaces each X letter by an independent ordered copy of the substituted
series, and the mutual-inverse identity g o g~ = g~ o g = X holds verbatim
with ordered product factors.  Truncation is by X-degree (the number of X
letters in a word); for arity k >= 2 the solver's words have at most
(j-1)/(k-1) Y letters per j X letters, so every degree stays finite.

Coefficients are central Fractions.  Words print as strings like "Ya X Yb X".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rings import InputError, SizeLimitError
from .series import Monomial, Series
from .spin import SpinModel, y_name

_WORD_GUARD = 10**6


def x_degree(word: tuple) -> int:
    return sum(1 for letter in word if letter == "X")


def word_to_text(word: tuple) -> str:
    return " ".join(word)


def word_from_text(text: str) -> tuple:
    word = []
    for token in text.split():
        if token == "X" or (len(token) > 1 and token.startswith("Y")):
            word.append(token)
        else:
            raise InputError(f"bad word letter {token!r}")
    return tuple(word)


def _word_key(word):
    return (len(word), word)


class NCSeries:
    """A finite map from words to nonzero Fractions, exact below an X-degree.

    `order` bounds the X-degree of stored words; arithmetic drops anything
    beyond it.  Instances are immutable by convention.
    """

    __slots__ = ("order", "terms")

    def __init__(self, order: int, terms: dict):
        if order < 0:
            raise InputError("order must be nonnegative")
        self.order = order
        self.terms = {w: c for w, c in terms.items() if c != 0 and x_degree(w) <= order}

    # -- constructors

    @classmethod
    def zero(cls, order):
        return cls(order, {})

    @classmethod
    def const(cls, value, order):
        return cls(order, {(): Fraction(value)})

    @classmethod
    def x(cls, order):
        return cls(order, {("X",): Fraction(1)})

    @classmethod
    def y(cls, spin, order):
        return cls(order, {(y_name(spin),): Fraction(1)})

    @classmethod
    def from_words(cls, order, pairs):
        terms = {}
        for text, c in pairs:
            w = word_from_text(text) if isinstance(text, str) else tuple(text)
            terms[w] = terms.get(w, Fraction(0)) + Fraction(c)
        return cls(order, terms)

    # -- inspection

    def coefficient(self, word) -> Fraction:
        w = word_from_text(word) if isinstance(word, str) else tuple(word)
        return self.terms.get(w, Fraction(0))

    def x_valuation(self):
        """Smallest X-degree among stored words, None for the zero series."""
        if not self.terms:
            return None
        return min(x_degree(w) for w in self.terms)

    def is_zero(self):
        return not self.terms

    def sorted_words(self):
        return sorted(self.terms, key=_word_key)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in self.sorted_words():
            c = self.terms[w]
            body = word_to_text(w) if w else "1"
            if c == 1 and w:
                chunk = body
            elif c == -1 and w:
                chunk = "-" + body
            else:
                chunk = f"{c}*{body}" if w else str(c)
            parts.append(chunk)
        out = parts[0]
        for chunk in parts[1:]:
            out += " - " + chunk[1:] if chunk.startswith("-") else " + " + chunk
        return out

    def __repr__(self):
        return f"NCSeries(order={self.order}, {self.to_text()})"

    def __eq__(self, other):
        if not isinstance(other, NCSeries):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    __hash__ = None

    # -- arithmetic

    def _binary_order(self, other):
        return min(self.order, other.order)

    def __add__(self, other):
        order = self._binary_order(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, Fraction(0)) + c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        return NCSeries(order, terms)

    def __sub__(self, other):
        return self + other.neg()

    def neg(self):
        return NCSeries(self.order, {w: -c for w, c in self.terms.items()})

    def scale(self, value):
        v = Fraction(value)
        if not v:
            return NCSeries.zero(self.order)
        return NCSeries(self.order, {w: c * v for w, c in self.terms.items()})

    def __mul__(self, other):
        order = self._binary_order(other)
        terms = {}
        for wa, ca in self.terms.items():
            da = x_degree(wa)
            for wb, cb in other.terms.items():
                if da + x_degree(wb) > order:
                    continue
                w = wa + wb
                s = terms.get(w, Fraction(0)) + ca * cb
                if s:
                    terms[w] = s
                else:
                    del terms[w]
                if len(terms) > _WORD_GUARD:
                    raise SizeLimitError("word count guard exceeded in product")
        return NCSeries(order, terms)

    def pow(self, e: int):
        if e < 0:
            raise InputError("negative powers are not defined here")
        out = NCSeries.const(1, self.order)
        for _ in range(e):
            out = out * self
        return out

    def truncate(self, order):
        if order > self.order:
            raise InputError("cannot truncate to a larger order")
        return NCSeries(order, {w: c for w, c in self.terms.items() if x_degree(w) <= order})


def nc_arith(a: NCSeries, b: NCSeries, op: str) -> NCSeries:
    """Dispatch helper mirroring the scripting surface: op in {add, mul}."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise InputError(f"unknown op {op!r}")


def nc_compose(f: NCSeries, h: NCSeries) -> NCSeries:
    """Replace every X letter of every word of f by an ordered copy of h.

    Y letters stay in place; the copies of h substituted into one word are
    expanded independently, so a word with j X letters contributes the
    ordered product of its letters with X read as h.  Requires every word of
    h to contain at least one X, which keeps truncation consistent.
    """
    val = h.x_valuation()
    if val is not None and val < 1:
        raise InputError("substituted series must have X-degree >= 1 in every word")
    order = min(f.order, h.order)
    total = NCSeries.zero(order)
    one = NCSeries.const(1, order)
    for w, c in f.terms.items():
        acc = one.scale(c)
        for letter in w:
            if letter == "X":
                acc = acc * h
            else:
                acc = acc * NCSeries(order, {(letter,): Fraction(1)})
            if acc.is_zero():
                break
        total = total + acc
    return total


def abelianize(s: NCSeries, ring, weights=None) -> Series:
    """Project to commuting variables: a word becomes X^(#X) times its Y's."""
    terms = {}
    for w, c in s.terms.items():
        counts = {}
        for letter in w:
            if letter != "X":
                counts[letter] = counts.get(letter, 0) + 1
        m = Monomial(x_degree(w), tuple(sorted(counts.items())))
        acc = terms.get(m, ring.zero) + ring.coerce(Fraction(c))
        if ring.coerce(acc) != ring.zero:
            terms[m] = acc
        else:
            terms.pop(m, None)
    return Series(ring, s.order, terms, weights)


# -- the word-level solver ---------------------------------------------------


@dataclass
class NCSystem:
    """Word-level counterpart of SeriesSystem: per-letter g and g~ plus the
    residuals of composing their totals both ways against X."""

    g: dict
    g_tilde: dict
    residuals: tuple

    @property
    def verified(self):
        return all(r.is_zero() for r in self.residuals)


def _nc_rows(model: SpinModel, vec: dict, order: int, matrices, sign: int) -> dict:
    """One bootstrap sweep: Y_alpha times the ordered bracket factors."""
    out = {}
    x = NCSeries.x(order)
    for alpha in model.alphabet:
        acc = NCSeries.y(alpha, order)
        for m in matrices:
            row = NCSeries.zero(order)
            for beta in model.alphabet:
                c = Fraction(m[alpha][beta])
                if c:
                    row = row + vec[beta].scale(c)
            acc = acc * (x.scale(sign) + row.scale(-sign))
        out[alpha] = acc
    return out


def nc_solve_and_verify(model: SpinModel, order: int) -> NCSystem:
    """Solve the word-level fixed point and check the two-sided identity.

    g_alpha = Y_alpha (X - (M_1 V)_alpha) ... (X - (M_k V)_alpha) with the
    factors in positional order, g~ the same with complemented weights and
    (-X + row) factors, both run to an exact fixed point.  The residuals are
    compose(g_total, g~_total) - X and the reverse, where the totals are
    -X + sum of the letters' series.
    """
    if not model.uniform or model.k < 2:
        raise InputError("word-level solver needs a uniform model of arity >= 2")
    if model.ring.to_json() != "rational":
        raise InputError("word-level solver works over the rationals")
    if model.y_values is not None or model.x_value is not None:
        raise InputError("word-level solver needs fully symbolic X and Y")

    def matrices_for(m, want_complement):
        mats = m.blocks[m.k].matrices
        if not want_complement:
            return [{a: {b: Fraction(mat[i][j]) for j, b in enumerate(m.alphabet)}
                     for i, a in enumerate(m.alphabet)} for mat in mats]
        return [{a: {b: 1 - Fraction(mat[i][j]) for j, b in enumerate(m.alphabet)}
                 for i, a in enumerate(m.alphabet)} for mat in mats]

    def bootstrap(mats, sign):
        vec = {alpha: NCSeries.zero(order) for alpha in model.alphabet}
        for _ in range(order + 2):
            new = _nc_rows(model, vec, order, mats, sign)
            if sum(len(s.terms) for s in new.values()) > _WORD_GUARD:
                raise SizeLimitError("word count guard exceeded in bootstrap")
            if all(new[a] == vec[a] for a in model.alphabet):
                return new
            vec = new
        raise InputError("word-level fixed point failed to stabilize")

    g = bootstrap(matrices_for(model, False), +1)
    g_tilde = bootstrap(matrices_for(model, True), -1)

    x = NCSeries.x(order)
    total = x.neg()
    for alpha in model.alphabet:
        total = total + g[alpha]
    total_tilde = x.neg()
    for alpha in model.alphabet:
        total_tilde = total_tilde + g_tilde[alpha]
    r1 = nc_compose(total, total_tilde) - x
    r2 = nc_compose(total_tilde, total) - x
    return NCSystem(g=g, g_tilde=g_tilde, residuals=(r1, r2))


# -- serialization -----------------------------------------------------------


def nc_to_json(s: NCSeries) -> dict:
    return {
        "order": s.order,
        "terms": [{"word": word_to_text(w), "c": str(s.terms[w])} for w in s.sorted_words()],
    }


def nc_from_json(data: dict) -> NCSeries:
    return NCSeries.from_words(
        int(data["order"]), [(t["word"], Fraction(t["c"])) for t in data["terms"]]
    )
