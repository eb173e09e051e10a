"""Small concrete rigs: degrees, codegrees, countable cardinals, and the
three-element quotient of N[x] (plus two tiny lattices for highness checks).

They serve as evaluation targets and as counterexamples showing that every
precondition of synthesis is needed: each model has an element ``a`` with
``p1(a) = p2(a)`` but ``q1(a) != q2(a)`` for an implication that holds over Z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, ClassVar, Iterator, Optional

from .polycore import NatPoly, Poly

DEFAULT_BOUND = 32

NEG_INF = -math.inf
INF = math.inf


class ModelMismatch(TypeError):
    pass


@dataclass(frozen=True, slots=True)
class RigElement:
    value: Any
    model: ClassVar[str] = ""

    def _check(self, other):
        if type(other) is not type(self):
            raise ModelMismatch(f"cannot combine {self!r} with {other!r}")

    def __add__(self, other):
        self._check(other)
        return type(self)(self._add(self.value, other.value))

    def __mul__(self, other):
        self._check(other)
        return type(self)(self._mul(self.value, other.value))


class DegreeElem(RigElement):
    """``L^n``; ``L^-inf`` is zero.  ``L^m + L^n = L^max``, ``L^m L^n = L^(m+n)``."""

    model = "degrees"

    @staticmethod
    def _add(m, n):
        return max(m, n)

    @staticmethod
    def _mul(m, n):
        return m + n

    def __str__(self):
        return "L^-inf" if self.value == NEG_INF else f"L^{self.value}"


class CodegreeElem(RigElement):
    """``e^n``; ``e^inf`` is zero.  Dual of degrees: min under +, sum under *."""

    model = "codegrees"

    @staticmethod
    def _add(m, n):
        return min(m, n)

    @staticmethod
    def _mul(m, n):
        return m + n

    def __str__(self):
        return "eps^inf" if self.value == INF else f"eps^{self.value}"


ALEPH0 = "aleph0"


class CardElem(RigElement):
    """A natural number or aleph_0, with cardinal arithmetic."""

    model = "cardinals"

    @staticmethod
    def _add(m, n):
        if m == ALEPH0 or n == ALEPH0:
            return ALEPH0
        return m + n

    @staticmethod
    def _mul(m, n):
        if m == 0 or n == 0:
            return 0
        if m == ALEPH0 or n == ALEPH0:
            return ALEPH0
        return m * n

    def __str__(self):
        return "aleph0" if self.value == ALEPH0 else str(self.value)


ZERO_CLASS, CONST_CLASS, NONCONST_CLASS = "zero", "constant", "nonconstant"


class ThreeElem(RigElement):
    """Class of a polynomial: zero, nonzero constant, or non-constant."""

    model = "three"

    @staticmethod
    def _add(m, n):
        if m == ZERO_CLASS:
            return n
        if n == ZERO_CLASS:
            return m
        return NONCONST_CLASS if NONCONST_CLASS in (m, n) else CONST_CLASS

    @staticmethod
    def _mul(m, n):
        if ZERO_CLASS in (m, n):
            return ZERO_CLASS
        return NONCONST_CLASS if NONCONST_CLASS in (m, n) else CONST_CLASS

    def __str__(self):
        return self.value


class BoolElem(RigElement):
    """The two-element distributive lattice: + is or, * is and."""

    model = "boolean"

    @staticmethod
    def _add(m, n):
        return m or n

    @staticmethod
    def _mul(m, n):
        return m and n

    def __str__(self):
        return str(int(self.value))


class TrivialElem(RigElement):
    """The one-element rig, where 0 = 1."""

    model = "trivial"

    @staticmethod
    def _add(m, n):
        return 0

    @staticmethod
    def _mul(m, n):
        return 0

    def __str__(self):
        return "0"


@dataclass(frozen=True)
class RigModel:
    name: str
    zero: RigElement
    one: RigElement
    generator: Optional[RigElement]
    _enumerate: Callable[[int], Iterator[RigElement]]
    finite: bool

    def elements(self, bound: int = DEFAULT_BOUND) -> list[RigElement]:
        """Carrier in enumeration order (truncated by ``bound`` if infinite)."""
        return list(self._enumerate(bound))

    def evaluate(self, q: Poly, a: RigElement) -> RigElement:
        return q(a, zero=self.zero, one=self.one)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def __str__(self):
        return self.name


def _degrees(bound):
    yield DegreeElem(NEG_INF)
    for n in range(bound + 1):
        yield DegreeElem(n)


def _codegrees(bound):
    yield CodegreeElem(INF)
    for n in range(bound + 1):
        yield CodegreeElem(n)


def _cardinals(bound):
    for n in range(bound + 1):
        yield CardElem(n)
    yield CardElem(ALEPH0)


def _three(bound):
    for v in (ZERO_CLASS, CONST_CLASS, NONCONST_CLASS):
        yield ThreeElem(v)


MODELS: dict[str, RigModel] = {
    "degrees": RigModel(
        "degrees", DegreeElem(NEG_INF), DegreeElem(0), DegreeElem(1), _degrees, False
    ),
    "codegrees": RigModel(
        "codegrees", CodegreeElem(INF), CodegreeElem(0), CodegreeElem(1), _codegrees, False
    ),
    "cardinals": RigModel(
        "cardinals", CardElem(0), CardElem(1), None, _cardinals, False
    ),
    "three": RigModel(
        "three", ThreeElem(ZERO_CLASS), ThreeElem(CONST_CLASS), ThreeElem(NONCONST_CLASS),
        _three, True,
    ),
    "boolean": RigModel(
        "boolean", BoolElem(False), BoolElem(True), None,
        lambda bound: iter((BoolElem(False), BoolElem(True))), True,
    ),
    "trivial": RigModel(
        "trivial", TrivialElem(0), TrivialElem(0), None, lambda bound: iter((TrivialElem(0),)), True
    ),
}

CLI_MODELS = ("degrees", "codegrees", "cardinals", "three")


def get_model(name: str) -> RigModel:
    try:
        return MODELS[name]
    except KeyError:
        raise ValueError(f"unknown model {name!r}; choose from {', '.join(MODELS)}") from None


def classify(q: NatPoly) -> ThreeElem:
    """The quotient map N[x] -> three-element rig."""
    if not q:
        return ThreeElem(ZERO_CLASS)
    return ThreeElem(CONST_CLASS if q.degree == 0 else NONCONST_CLASS)


def find_counterexample(
    p1: Poly, p2: Poly, q1: Poly, q2: Poly, model: RigModel | str, bound: int = DEFAULT_BOUND
) -> Optional[RigElement]:
    """First ``a`` (in enumeration order) with ``p1(a) = p2(a)`` but ``q1(a) != q2(a)``.

    Enumeration: zero first, then ``L^0..L^bound`` / ``eps^0..eps^bound``;
    cardinals run ``0..bound`` and then aleph_0.
    """
    if isinstance(model, str):
        model = get_model(model)
    for a in model.elements(bound):
        if model.evaluate(p1, a) == model.evaluate(p2, a) and model.evaluate(
            q1, a
        ) != model.evaluate(q2, a):
            return a
    return None


def leq(model: RigModel, b: RigElement, a: RigElement) -> bool:
    """``b <= a`` in the additive semigroup: some ``c`` has ``b + c = a``."""
    return any(b + c == a for c in model.elements())


def high_set(model: RigModel | str) -> set[RigElement]:
    """High elements of the additive semigroup, straight from the definition."""
    if isinstance(model, str):
        model = get_model(model)
    if not model.finite:
        raise ValueError(f"the {model.name} rig is infinite; highness needs the whole carrier")
    carrier = model.elements()
    return {a for a in carrier if all(leq(model, b, a) for b in carrier)}


def parse_element(model: RigModel | str, text: str) -> RigElement:
    """Inverse of ``str`` on elements, for CLI round trips."""
    if isinstance(model, str):
        model = get_model(model)
    for a in model.elements(0):
        if str(a) == text:
            return a
    head, _, tail = text.partition("^")
    if tail.isdigit() and head in ("L", "eps"):
        cls = DegreeElem if head == "L" else CodegreeElem
        if cls.model == model.name:
            return cls(int(tail))
    if model.name == "cardinals" and text.isdigit():
        return CardElem(int(text))
    raise ValueError(f"{text!r} is not an element of the {model.name} rig")
