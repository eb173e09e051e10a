"""Exact univariate polynomials over N, Z and Q.

Polynomials are sparse, immutable maps from exponent to coefficient.  Three
coefficient domains are supported and arithmetic promotes along
``NatPoly -> IntPoly -> RatPoly``:

    >>> p = NatPoly.parse("1 + x^2")
    >>> str(p * NatPoly.x())
    'x + x^3'
    >>> str(p - NatPoly.x())
    '1 - x + x^2'

Coefficients are Python ints (``Fraction`` for ``RatPoly``), so there is no
overflow and no floating point anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Iterable, Iterator, Mapping

__all__ = [
    "Poly",
    "NatPoly",
    "IntPoly",
    "RatPoly",
    "PolyParseError",
    "content_primitive",
    "squarefree",
    "pos_neg_split",
    "rat_gcd",
]


class PolyParseError(ValueError):
    """Malformed polynomial text; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


class Poly:
    """Base class; use one of the concrete coefficient domains."""

    __slots__ = ("_terms", "_hash")
    _rank = -1

    def __init__(self, terms: Mapping[int, Any] | Iterable[tuple[int, Any]] | None = None):
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        acc: dict[int, Any] = {}
        for e, c in items:
            if isinstance(e, bool) or not isinstance(e, int) or e < 0:
                raise ValueError(f"exponent must be a natural number, got {e!r}")
            c = self._coerce(c)
            if c:
                acc[e] = acc.get(e, 0) + c
        self._terms = {e: c for e, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _coerce(cls, c: Any) -> Any:
        raise NotImplementedError

    @classmethod
    def _raw(cls, terms: dict[int, Any]):
        # trusted constructor: terms already canonical and owned by the result
        obj = object.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def one(cls):
        return cls._raw({0: cls._coerce(1)})

    @classmethod
    def x(cls):
        return cls._raw({1: cls._coerce(1)})

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c=1):
        return cls({e: c})

    @classmethod
    def parse(cls, text: str):
        """Parse text such as ``3 + 2x^3 + 4x^5`` or ``16(1+x)``."""
        return cls.convert(_Parser(text).parse())

    @classmethod
    def convert(cls, other: "Poly"):
        if type(other) is cls:
            return other
        return cls(other._terms)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable[Any]]):
        """Inverse of :meth:`to_pairs`; exponents must ascend strictly."""
        terms: dict[int, Any] = {}
        last = -1
        for e, c in pairs:
            if isinstance(e, bool) or not isinstance(e, int):
                raise ValueError(f"exponent {e!r} is not an integer")
            if e <= last:
                raise ValueError(f"exponents not strictly ascending at {e}")
            last = e
            if isinstance(c, str):
                c = Fraction(c) if "/" in c else int(c)
            c = cls._coerce(c)
            if not c:
                raise ValueError(f"zero coefficient stored at exponent {e}")
            terms[e] = c
        return cls._raw(terms)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[int, Any]:
        """A copy of the exponent -> coefficient map."""
        return dict(self._terms)

    def items(self) -> list[tuple[int, Any]]:
        return sorted(self._terms.items())

    def __iter__(self) -> Iterator[tuple[int, Any]]:
        return iter(self.items())

    def coeff(self, e: int):
        return self._terms.get(e, 0)

    @property
    def degree(self) -> int:
        """Degree, or -1 for the zero polynomial."""
        return max(self._terms) if self._terms else -1

    @property
    def lowest(self) -> int:
        """Smallest exponent with a nonzero coefficient, -1 for zero."""
        return min(self._terms) if self._terms else -1

    def leading(self):
        return self._terms[self.degree] if self._terms else 0

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return self.degree <= 0

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def to_pairs(self) -> list[list]:
        """Canonical serialized form: ``[[exponent, "coefficient"], ...]``."""
        return [[e, str(c)] for e, c in self.items()]

    # -- comparison -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- arithmetic -------------------------------------------------------

    def _lift(self, other: Any):
        # (result class, other as a polynomial) or (None, None) if unsupported
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = _smallest_for_scalar(other).const(other)
        if not isinstance(other, Poly):
            return None, None
        cls = self.__class__ if self._rank >= other._rank else other.__class__
        return cls, other

    def __add__(self, other):
        cls, other = self._lift(other)
        if cls is None:
            return NotImplemented
        return cls._raw(_add_terms(self._terms, other._terms))

    __radd__ = __add__

    def __mul__(self, other):
        cls, other = self._lift(other)
        if cls is None:
            return NotImplemented
        return cls._raw(_mul_terms(self._terms, other._terms))

    __rmul__ = __mul__

    def __neg__(self):
        cls = IntPoly if self._rank < IntPoly._rank else self.__class__
        return cls._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        cls, other = self._lift(other)
        if cls is None:
            return NotImplemented
        if cls._rank < IntPoly._rank:
            cls = IntPoly
        return cls._raw(_add_terms(self._terms, {e: -c for e, c in other._terms.items()}))

    def __rsub__(self, other):
        return (-self) + other

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be natural numbers")
        result, base = self.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, j: int):
        """Multiply by ``x**j``."""
        if j == 0:
            return self
        return self._raw({e + j: c for e, c in self._terms.items()})

    def derivative(self):
        return self._raw({e - 1: e * c for e, c in self._terms.items() if e})

    def __call__(self, x0, zero: Any = 0, one: Any = 1):
        """Evaluate at ``x0``: the image under the homomorphism ``x -> x0``.

        ``x0`` may be anything with ``+`` and ``*``; pass the target rig's
        ``zero`` and ``one`` when they are not the integers.  Negative
        coefficients additionally need unary minus on the target.
        """
        if isinstance(x0, (int, Fraction)) and zero == 0 and one == 1:
            return sum((c * x0**e for e, c in self._terms.items()), 0)
        total = zero
        for e, c in self.items():
            term = _nat_times(abs(c), _power(x0, e, one), zero)
            if c < 0:
                try:
                    term = -term
                except TypeError:
                    raise ValueError(
                        f"cannot evaluate {self} at {x0!r}: the target has no negatives"
                    ) from None
            total = total + term
        return total

    # -- text -------------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for e, c in self.items():
            neg = c < 0
            mag = -c if neg else c
            if e == 0:
                body = _fmt_coeff(mag)
            else:
                var = "x" if e == 1 else f"x^{e}"
                if mag == 1:
                    body = var
                elif isinstance(mag, Fraction) and mag.denominator != 1:
                    body = f"({mag}){var}"
                else:
                    body = f"{_fmt_coeff(mag)}{var}"
            if not out:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"


class NatPoly(Poly):
    """Polynomial with natural-number coefficients: an element of N[x]."""

    __slots__ = ()
    _rank = 0

    @classmethod
    def _coerce(cls, c):
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValueError(f"non-integer coefficient {c}")
            c = c.numerator
        if isinstance(c, bool) or not isinstance(c, int):
            raise ValueError(f"coefficient {c!r} is not an integer")
        if c < 0:
            raise ValueError(f"negative coefficient {c} in a natural polynomial")
        return c

    @property
    def mass(self) -> int:
        """Total coefficient mass p(1): the number of unit monomials."""
        return sum(self._terms.values())

    def units(self) -> list[int]:
        """Unit-monomial decomposition as exponents: ascending, copies adjacent."""
        out: list[int] = []
        for e, c in self.items():
            out.extend([e] * c)
        return out

    def monus(self, other: "NatPoly") -> "NatPoly":
        """``self - other``, which must again lie in N[x]."""
        terms = dict(self._terms)
        for e, c in other._terms.items():
            left = terms.get(e, 0) - c
            if left < 0:
                raise ValueError(f"{other} is not below {self} at exponent {e}")
            if left:
                terms[e] = left
            else:
                del terms[e]
        return NatPoly._raw(terms)

    def dominates(self, other: "NatPoly") -> bool:
        """Coefficient-wise ``other <= self``."""
        t = self._terms
        return all(t.get(e, 0) >= c for e, c in other._terms.items())


class IntPoly(Poly):
    """Polynomial with integer coefficients: an element of Z[x]."""

    __slots__ = ()
    _rank = 1

    @classmethod
    def _coerce(cls, c):
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValueError(f"non-integer coefficient {c}")
            return c.numerator
        if isinstance(c, bool) or not isinstance(c, int):
            raise ValueError(f"coefficient {c!r} is not an integer")
        return c

    def to_nat(self) -> NatPoly:
        return NatPoly(self._terms)


class RatPoly(Poly):
    """Polynomial with exact rational coefficients: an element of Q[x]."""

    __slots__ = ()
    _rank = 2

    @classmethod
    def _coerce(cls, c):
        if isinstance(c, bool) or not isinstance(c, (int, Fraction)):
            raise ValueError(f"coefficient {c!r} is not rational")
        return Fraction(c)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def to_int(self) -> IntPoly:
        return IntPoly(self._terms)

    def monic(self) -> "RatPoly":
        lc = self.leading()
        return RatPoly._raw({e: c / lc for e, c in self._terms.items()})

    def divrem(self, d: Poly) -> tuple["RatPoly", "RatPoly"]:
        """Long division over Q: ``self == q*d + r`` with ``deg r < deg d``."""
        d = RatPoly.convert(d)
        if not d:
            raise ZeroDivisionError("division by the zero polynomial")
        n, lc = d.degree, d.leading()
        rem = dict(self._terms)
        quot: dict[int, Fraction] = {}
        while rem:
            top = max(rem)
            if top < n:
                break
            c = rem[top] / lc
            shift = top - n
            quot[shift] = c
            for e, dc in d._terms.items():
                k = e + shift
                v = rem.get(k, 0) - c * dc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return RatPoly._raw(quot), RatPoly._raw(rem)

    def __divmod__(self, d):
        return self.divrem(d)

    def __floordiv__(self, d):
        return self.divrem(d)[0]

    def __mod__(self, d):
        return self.divrem(d)[1]


def divrem(a: Poly, d: Poly) -> tuple[RatPoly, RatPoly]:
    return RatPoly.convert(a).divrem(d)


def _smallest_for_scalar(c):
    if isinstance(c, Fraction) and c.denominator != 1:
        return RatPoly
    return NatPoly if c >= 0 else IntPoly


def _add_terms(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            del out[e]
    return out


def _mul_terms(a: dict, b: dict) -> dict:
    out: dict[int, Any] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            k = e1 + e2
            out[k] = out.get(k, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _fmt_coeff(c) -> str:
    if isinstance(c, Fraction) and c.denominator == 1:
        return str(c.numerator)
    return str(c)


def _nat_times(n: int, a, zero):
    """``a + a + ... + a`` (n copies) by doubling."""
    if isinstance(a, (int, Fraction)):
        return n * a
    total, base = zero, a
    while n:
        if n & 1:
            total = total + base
        n >>= 1
        if n:
            base = base + base
    return total


def _power(a, n: int, one):
    if n == 0:
        return one
    result, base = None, a
    while n:
        if n & 1:
            result = base if result is None else result * base
        n >>= 1
        if n:
            base = base * base
    return result


# -- number-theoretic helpers ----------------------------------------------

def content_primitive(a: Poly) -> tuple[int, bool]:
    """gcd of the absolute coefficients, and whether it equals 1.

    The zero polynomial has content 0 and is not primitive.
    """
    g = 0
    for c in a._terms.values():
        g = math.gcd(g, int(c))
    return g, g == 1


def rat_gcd(a: Poly, b: Poly) -> RatPoly:
    """Monic gcd over Q (zero only when both inputs are zero)."""
    a, b = RatPoly.convert(a), RatPoly.convert(b)
    while b:
        a, b = b, a.divrem(b)[1]
    return a.monic() if a else a


def squarefree(d: Poly) -> bool:
    """True iff ``d`` has no repeated complex root, i.e. gcd(d, d') is constant."""
    if not d:
        raise ValueError("squarefreeness of the zero polynomial is undefined")
    return rat_gcd(d, d.derivative()).degree == 0


def pos_neg_split(r: Poly) -> tuple[NatPoly, NatPoly]:
    """Write ``r = r1 - r2`` with ``r1, r2`` in N[x] of disjoint support."""
    pos = {e: c for e, c in r._terms.items() if c > 0}
    neg = {e: -c for e, c in r._terms.items() if c < 0}
    return NatPoly(pos), NatPoly(neg)


# -- parsing -------------------------------------------------------------------

class _Parser:
    # expr   := sign? term (('+'|'-') term)*
    # term   := factor (('*')? factor)*     implicit product only before 'x' or '('
    # factor := atom ('^' natural)?
    # atom   := natural | 'x' | '(' expr ')'

    def __init__(self, text: str):
        self.text = text
        self.toks = self._tokenize(text)
        self.i = 0

    def _tokenize(self, text: str) -> list[tuple[str, Any, int]]:
        toks = []
        i, n = 0, len(text)
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                toks.append(("num", int(text[i:j]), i))
                i = j
            elif ch in "xX":
                toks.append(("x", None, i))
                i += 1
            elif ch in "+-*^()":
                toks.append((ch, None, i))
                i += 1
            else:
                raise PolyParseError(f"unexpected character {ch!r}", text, i)
        toks.append(("end", None, n))
        return toks

    def _peek(self) -> str:
        return self.toks[self.i][0]

    def _next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def _fail(self, message: str):
        raise PolyParseError(message, self.text, self.toks[self.i][2])

    def parse(self) -> IntPoly:
        if self._peek() == "end":
            self._fail("empty polynomial")
        value = self._expr()
        if self._peek() != "end":
            self._fail(f"unexpected {self._peek()!r}")
        return value

    def _expr(self) -> IntPoly:
        sign = 1
        if self._peek() in "+-":
            sign = -1 if self._next()[0] == "-" else 1
        value = self._term() * sign
        while self._peek() in ("+", "-"):
            op = self._next()[0]
            rhs = self._term()
            value = value + rhs if op == "+" else value - rhs
        return IntPoly.convert(value)

    def _term(self) -> IntPoly:
        value = self._factor()
        while True:
            kind = self._peek()
            if kind == "*":
                self._next()
            elif kind not in ("x", "("):
                return value
            value = value * self._factor()

    def _factor(self) -> IntPoly:
        base = self._atom()
        if self._peek() == "^":
            self._next()
            if self._peek() != "num":
                self._fail("exponent must be a natural number")
            base = base ** self._next()[1]
        return base

    def _atom(self) -> IntPoly:
        kind, val, _ = self.toks[self.i]
        if kind == "num":
            self._next()
            return IntPoly.const(val)
        if kind == "x":
            self._next()
            return IntPoly.x()
        if kind == "(":
            self._next()
            inner = self._expr()
            if self._peek() != ")":
                self._fail("expected ')'")
            self._next()
            return inner
        self._fail(f"expected a number, 'x' or '(' but found {kind!r}")
