"""Exact coefficient rings for the series engine.

Four rings are supported:

* the rationals (``QQ``), represented by :class:`fractions.Fraction`;
* integers modulo a machine-word prime (``modring(p)``);
* dual rationals ``a + b*eps`` with ``eps**2 == 0`` (``DUAL``), which carry
  first-order derivative information through otherwise exact computations;
* multivariate polynomials over the rationals in named parameters
  (``PARAMS``), for keeping matrix entries symbolic.

A ring object is a lightweight descriptor: it constructs, parses and formats
coefficient values and decides invertibility.  The values themselves are
plain Python objects supporting ``+``, ``-``, ``*``, ``==`` and truthiness
(nonzero test), so code built on top never needs to branch on the ring kind.
"""

from __future__ import annotations

import re
from fractions import Fraction


class InputError(ValueError):
    """Malformed input or violated precondition."""


class SizeLimitError(InputError):
    """A computation was refused because it exceeds a documented size guard."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; results cannot be trusted."""


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise InputError(f"cannot interpret {x!r} as a rational number")


class ModInt:
    """An integer modulo a fixed prime, reduced eagerly."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _check(self, other):
        if isinstance(other, ModInt):
            if other.p != self.p:
                raise InputError("mixed moduli in arithmetic")
            return other.v
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        w = self._check(other)
        if w is None:
            return NotImplemented
        return ModInt(self.v + w, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        w = self._check(other)
        if w is None:
            return NotImplemented
        return ModInt(self.v - w, self.p)

    def __rsub__(self, other):
        w = self._check(other)
        if w is None:
            return NotImplemented
        return ModInt(w - self.v, self.p)

    def __mul__(self, other):
        w = self._check(other)
        if w is None:
            return NotImplemented
        return ModInt(self.v * w, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(-self.v, self.p)

    def __eq__(self, other):
        if isinstance(other, ModInt):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} mod {self.p}"


class Dual:
    """A dual rational a + b*eps, eps**2 = 0."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = _as_fraction(a)
        self.b = _as_fraction(b)

    def _coerce(self, other):
        if isinstance(other, Dual):
            return other
        if isinstance(other, (int, Fraction)):
            return Dual(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Dual(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Dual(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Dual(o.a - self.a, o.b - self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Dual(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}*eps"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*eps"


class ParamPoly:
    """A multivariate polynomial over the rationals in named parameters.

    Terms map a sorted tuple of (name, exponent) pairs to a nonzero Fraction.
    The empty tuple is the constant term.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms) if terms else {}

    @staticmethod
    def const(c):
        c = _as_fraction(c)
        return ParamPoly({(): c} if c else {})

    @staticmethod
    def var(name):
        return ParamPoly({((name, 1),): Fraction(1)})

    def _coerce(self, other):
        if isinstance(other, ParamPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return ParamPoly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in o.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return ParamPoly(terms)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _merge_exponents(m1, m2)
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return ParamPoly(terms)

    __rmul__ = __mul__

    def __neg__(self):
        return ParamPoly({m: -c for m, c in self.terms.items()})

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or set(self.terms) == {()}

    def constant_value(self):
        return self.terms.get((), Fraction(0))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (sum(e for _, e in m), m)):
            c = self.terms[m]
            factors = ["%s^%d" % (n, e) if e > 1 else n for n, e in m]
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = str(abs(c)) + "*" + "*".join(factors)
            parts.append(("- " if c < 0 else "+ ") + body)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]


def _merge_exponents(m1, m2):
    d = dict(m1)
    for n, e in m2:
        d[n] = d.get(n, 0) + e
    return tuple(sorted(d.items()))


class Ring:
    """Base descriptor; concrete rings fill in the methods below."""

    def coerce(self, x):
        raise NotImplementedError

    def is_unit(self, c):
        raise NotImplementedError

    def inv(self, c):
        raise NotImplementedError

    def div(self, a, b):
        return a * self.inv(b)

    def parse(self, s):
        raise NotImplementedError

    def fmt(self, c):
        return str(c)

    def to_json(self):
        raise NotImplementedError

    # every ring here has characteristic 0 except the modular one
    characteristic_zero = True


class RationalRing(Ring):
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise InputError(f"not a rational coefficient: {x!r}")

    def is_unit(self, c):
        return bool(c)

    def inv(self, c):
        if not c:
            raise InputError("division by zero")
        return 1 / self.coerce(c)

    def parse(self, s):
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"bad rational literal {s!r}") from e

    def to_json(self):
        return "rational"

    def __eq__(self, other):
        return isinstance(other, RationalRing)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "QQ"


class IntegerModRing(Ring):
    characteristic_zero = False

    def __init__(self, p):
        if not isinstance(p, int) or p < 2:
            raise InputError("modulus must be an integer >= 2")
        if p.bit_length() > 63:
            raise InputError("modulus must fit in a machine word")
        if not _is_probable_prime(p):
            raise InputError(f"modulus {p} is not prime")
        self.p = p
        self.zero = ModInt(0, p)
        self.one = ModInt(1, p)

    def coerce(self, x):
        if isinstance(x, ModInt):
            if x.p != self.p:
                raise InputError("mixed moduli")
            return x
        if isinstance(x, int):
            return ModInt(x, self.p)
        if isinstance(x, Fraction):
            return ModInt(x.numerator, self.p) * self.inv(ModInt(x.denominator, self.p))
        raise InputError(f"not a mod-{self.p} coefficient: {x!r}")

    def is_unit(self, c):
        return bool(self.coerce(c))

    def inv(self, c):
        c = self.coerce(c)
        if not c:
            raise InputError("division by zero")
        return ModInt(pow(c.v, -1, self.p), self.p)

    def parse(self, s):
        m = re.fullmatch(r"\s*(-?\d+)\s*(?:mod\s*(\d+)\s*)?", s)
        if not m:
            raise InputError(f"bad modular literal {s!r}")
        if m.group(2) and int(m.group(2)) != self.p:
            raise InputError(f"literal {s!r} has modulus {m.group(2)}, ring has {self.p}")
        return ModInt(int(m.group(1)), self.p)

    def to_json(self):
        return {"mod": self.p}

    def __eq__(self, other):
        return isinstance(other, IntegerModRing) and other.p == self.p

    def __hash__(self):
        return hash(("mod", self.p))

    def __repr__(self):
        return f"Z/{self.p}"


class DualRationalRing(Ring):
    zero = Dual(0)
    one = Dual(1)

    def coerce(self, x):
        if isinstance(x, Dual):
            return x
        if isinstance(x, (int, Fraction)):
            return Dual(x)
        raise InputError(f"not a dual-rational coefficient: {x!r}")

    def is_unit(self, c):
        return bool(self.coerce(c).a)

    def inv(self, c):
        c = self.coerce(c)
        if not c.a:
            raise InputError("not invertible: zero real part")
        ia = 1 / c.a
        return Dual(ia, -c.b * ia * ia)

    def parse(self, s):
        s = s.strip().replace(" ", "")
        m = re.fullmatch(
            r"(?P<a>[+-]?\d+(?:/\d+)?)?"
            r"(?:(?P<sign>[+-])?(?P<b>\d+(?:/\d+)?)?\*?eps)?",
            s,
        )
        if not m or (m.group("a") is None and "eps" not in s):
            raise InputError(f"bad dual literal {s!r}")
        a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
        if "eps" in s:
            b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
            if m.group("sign") == "-":
                b = -b
            # a lone "b*eps" with no real part parses with a in the b slot
            if m.group("a") and m.group("b") is None and m.group("sign") is None:
                a, b = Fraction(0), a
        else:
            b = Fraction(0)
        return Dual(a, b)

    def to_json(self):
        return "dual"

    def __eq__(self, other):
        return isinstance(other, DualRationalRing)

    def __hash__(self):
        return hash("dual")

    def __repr__(self):
        return "QQ[eps]"


class ParameterRing(Ring):
    zero = ParamPoly()
    one = ParamPoly.const(1)

    def coerce(self, x):
        if isinstance(x, ParamPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return ParamPoly.const(x)
        if isinstance(x, str):
            return ParamPoly.var(x)
        raise InputError(f"not a parameter polynomial: {x!r}")

    def is_unit(self, c):
        c = self.coerce(c)
        return c.is_constant() and bool(c)

    def inv(self, c):
        c = self.coerce(c)
        if not self.is_unit(c):
            raise InputError("only nonzero constants are invertible here")
        return ParamPoly.const(1 / c.constant_value())

    def parse(self, s):
        return _parse_param_poly(s)

    def to_json(self):
        return "params"

    def __eq__(self, other):
        return isinstance(other, ParameterRing)

    def __hash__(self):
        return hash("params")

    def __repr__(self):
        return "QQ[params]"


_TERM_RE = re.compile(r"[+-]?[^+-]+")
_FACTOR_RE = re.compile(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?")


def _parse_param_poly(s):
    s = s.strip().replace(" ", "")
    if not s:
        raise InputError("empty polynomial literal")
    if s == "0":
        return ParamPoly()
    total = ParamPoly()
    for piece in _TERM_RE.findall(s):
        sign = -1 if piece.startswith("-") else 1
        piece = piece.lstrip("+-")
        coeff = Fraction(sign)
        exps = {}
        for factor in piece.split("*"):
            if not factor:
                raise InputError(f"bad polynomial literal {s!r}")
            if factor[0].isdigit():
                coeff *= Fraction(factor)
            else:
                m = _FACTOR_RE.fullmatch(factor)
                if not m:
                    raise InputError(f"bad polynomial factor {factor!r}")
                name, e = m.group(1), int(m.group(2) or 1)
                exps[name] = exps.get(name, 0) + e
        total = total + ParamPoly({tuple(sorted(exps.items())): coeff})
    return total


def _is_probable_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


QQ = RationalRing()
DUAL = DualRationalRing()
PARAMS = ParameterRing()

_MOD_CACHE = {}


def modring(p):
    """The field of integers modulo the prime p (cached per modulus)."""
    if p not in _MOD_CACHE:
        _MOD_CACHE[p] = IntegerModRing(p)
    return _MOD_CACHE[p]


def ring_from_json(tag):
    """Inverse of Ring.to_json for the serializable rings."""
    if tag == "rational":
        return QQ
    if tag == "dual":
        return DUAL
    if tag == "params":
        return PARAMS
    if isinstance(tag, dict) and set(tag) == {"mod"}:
        return modring(int(tag["mod"]))
    raise InputError(f"unknown ring tag {tag!r}")
