"""Constructive synthesis of rewrite chains for ``x = p(x) => q1 = q2``.

The pipeline is

1. divide ``q1 - q2`` by ``p - x`` in Z[x] to get a cofactor;
2. split the cofactor by sign, which gives an ``s`` and a chain
   ``q1 + s ~ q2 + s`` (:func:`prop33`);
3. cancel ``s`` (:func:`cancel_high`).  Cancellation works because every
   non-constant polynomial is *high*: for any ``b`` there is a ``c`` with
   ``b + c ~ a``.  The ``<=`` witnesses below build those chains explicitly.

A :class:`LeWitness` for ``b <= a`` is a cofactor ``c`` together with a chain
``b + c ~ a``.  All choices are fixed, so output is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import chain
from .chain import CONTRACT, Certificate, LinkStep
from .hypotheses import (
    HypothesisReport,
    RingVerdict,
    check_ring_implication,
    check_synthesis_preconditions,
)
from .polycore import IntPoly, NatPoly, pos_neg_split

ZERO = NatPoly.zero()
ONE = NatPoly.one()
X = NatPoly.x()


class SynthesisError(ValueError):
    pass


class HypothesisViolation(SynthesisError):
    """``p``, ``q1`` or ``q2`` is outside the range where synthesis is sound."""

    def __init__(self, report: HypothesisReport, message: str):
        super().__init__(message)
        self.report = report


class RingImplicationFails(SynthesisError):
    """``p - x`` does not divide ``q1 - q2`` in Z[x]."""

    def __init__(self, verdict: RingVerdict, message: str):
        super().__init__(message)
        self.verdict = verdict


@dataclass(frozen=True)
class LeWitness:
    b: NatPoly
    a: NatPoly
    c: NatPoly
    cert: Certificate

    def check(self) -> bool:
        return (
            self.cert.start == self.b + self.c
            and self.cert.end == self.a
            and bool(chain.verify(self.cert))
        )


@dataclass(frozen=True)
class UnitData:
    base: NatPoly
    z: NatPoly
    cert: Certificate


# -- witness algebra ----------------------------------------------------------------

def trivial(p: NatPoly, b: NatPoly, a: NatPoly) -> LeWitness:
    """``b <= a`` when ``a - b`` already lies in N[x]; empty chain."""
    return LeWitness(b, a, a.monus(b), chain.identity(p, a))


def compose(p: NatPoly, ws: Sequence[LeWitness]) -> LeWitness:
    """Transitivity: ``b0 <= a0 = b1 <= a1 = ... <= an``.

    Chain: ``b0 + c0 + ... + cn ~ a0 + c1 + ... + cn ~ ... ~ an``.
    """
    if not ws:
        raise ValueError("nothing to compose")
    suffix = [ZERO] * (len(ws) + 1)
    for i in range(len(ws) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + ws[i].c
    for left, right in zip(ws, ws[1:]):
        if left.a != right.b:
            raise ValueError(f"cannot compose: {left.a} != {right.b}")
    pieces = [chain.shift(w.cert, suffix[i + 1]) for i, w in enumerate(ws)]
    cert = chain.concat_all(p, ws[0].b + suffix[0], pieces)
    return LeWitness(ws[0].b, ws[-1].a, suffix[0], cert)


def add(p: NatPoly, ws: Sequence[LeWitness]) -> LeWitness:
    """Sum: ``sum(b_i) <= sum(a_i)``, rewriting one summand at a time in order."""
    if not ws:
        return trivial(p, ZERO, ZERO)
    n = len(ws)
    rest = [ZERO] * (n + 1)
    for i in range(n - 1, -1, -1):
        rest[i] = rest[i + 1] + ws[i].b + ws[i].c
    pieces = []
    done = ZERO
    for i, w in enumerate(ws):
        pieces.append(chain.shift(w.cert, done + rest[i + 1]))
        done = done + w.a
    b = sum((w.b for w in ws), ZERO)
    c = sum((w.c for w in ws), ZERO)
    cert = chain.concat_all(p, rest[0], pieces)
    return LeWitness(b, done, c, cert)


def times_monomial(w: LeWitness, j: int) -> LeWitness:
    return LeWitness(w.b.shift(j), w.a.shift(j), w.c.shift(j), chain.mul_monomial(w.cert, j))


def _require(p: NatPoly, *, high: bool) -> None:
    if p.coeff(0) < 1:
        raise HypothesisViolation(
            check_synthesis_preconditions(p, X, X), f"{p} has zero constant term"
        )
    if high and p.degree < 2:
        raise HypothesisViolation(
            check_synthesis_preconditions(p, X, X), f"{p} has degree below two"
        )


def _anchor_exponent(p: NatPoly) -> int:
    # smallest d >= 2 with a nonzero coefficient
    return min(e for e in p.terms if e >= 2)


# -- ladder lemmas ----------------------------------------------------------------

@lru_cache(maxsize=4096)
def ladder_up(p: NatPoly, n: int) -> LeWitness:
    """``x^n <= x^(n+1)`` via one contraction of ``x^n * p``."""
    _require(p, high=False)
    c = p.monus(ONE).shift(n)
    cert = Certificate(p, p.shift(n), NatPoly.monomial(n + 1), (LinkStep(n, ZERO, CONTRACT),))
    return LeWitness(NatPoly.monomial(n), NatPoly.monomial(n + 1), c, cert)


def climb(p: NatPoly, i: int, j: int) -> LeWitness:
    """``x^i <= x^j`` for ``i <= j`` by stacking ladder steps."""
    if i == j:
        return trivial(p, NatPoly.monomial(i), NatPoly.monomial(i))
    return compose(p, [ladder_up(p, n) for n in range(i, j)])


def _contract_to_x(p: NatPoly, b: NatPoly) -> LeWitness:
    # b <= x with cofactor p - b, one contraction at k = 0
    cert = Certificate(p, p, X, (LinkStep(0, ZERO, CONTRACT),))
    return LeWitness(b, X, p.monus(b), cert)


@lru_cache(maxsize=256)
def _square_below_x(p: NatPoly) -> LeWitness:
    # x^2 <= x^d <= x
    d = _anchor_exponent(p)
    return compose(p, [climb(p, 2, d), _contract_to_x(p, NatPoly.monomial(d))])


@lru_cache(maxsize=4096)
def ladder_down(p: NatPoly, n: int) -> LeWitness:
    """``x^(n+1) <= x^n`` for ``n >= 1``."""
    _require(p, high=True)
    if n < 1:
        raise ValueError("ladder_down needs n >= 1")
    return times_monomial(_square_below_x(p), n - 1)


@lru_cache(maxsize=4096)
def witness_power(p: NatPoly, n: int) -> LeWitness:
    """``x^n <= x``."""
    _require(p, high=True)
    if n == 0:
        return ladder_up(p, 0)
    if n == 1:
        return trivial(p, X, X)
    return compose(p, [ladder_down(p, m) for m in range(n - 1, 0, -1)])


@lru_cache(maxsize=256)
def _double_below_x(p: NatPoly) -> LeWitness:
    # 2x <= x^(d-1) + x^(2d-1) = x^(d-1) (1 + x^d) <= x^d <= x
    d = _anchor_exponent(p)
    spread = add(p, [climb(p, 1, d - 1), climb(p, 1, 2 * d - 1)])
    fold = times_monomial(_contract_to_x(p, ONE + NatPoly.monomial(d)), d - 1)
    top = _contract_to_x(p, NatPoly.monomial(d))
    return compose(p, [spread, fold, top])


def witness_multiple(p: NatPoly, n: int) -> LeWitness:
    """``n x <= x``.

    Induction ``(n+1) x = n x + x <= x + x <= x`` unrolled: the chain for
    ``n`` is the doubling chain shifted by ``j (x + c2)`` for
    ``j = n-2, ..., 0`` in turn, where ``c2`` is the doubling cofactor.
    """
    _require(p, high=True)
    if n == 0:
        return trivial(p, ZERO, X)
    if n == 1:
        return trivial(p, X, X)
    w2 = _double_below_x(p)
    step = X + w2.c
    pieces = [chain.shift(w2.cert, step * j) for j in range(n - 2, -1, -1)]
    c = w2.c * (n - 1)
    b = X * n
    return LeWitness(b, X, c, chain.concat_all(p, b + c, pieces))


def highness_oracle(p: NatPoly, a: NatPoly, b: NatPoly) -> LeWitness:
    """``b <= a`` for any ``b`` and non-constant ``a``.

    ``b = x^n1 + ... + x^nk <= k x <= x <= x^m <= a`` where ``m`` is the
    smallest positive exponent of ``a``.
    """
    _require(p, high=True)
    if a.degree < 1:
        raise SynthesisError(f"{a} is constant, hence not high")
    if not b:
        return trivial(p, ZERO, a)
    units = b.units()
    m = min(e for e in a.terms if e >= 1)
    gather = add(p, [witness_power(p, n) for n in units])
    return compose(
        p,
        [
            gather,
            witness_multiple(p, len(units)),
            climb(p, 1, m),
            trivial(p, NatPoly.monomial(m), a),
        ],
    )


# -- cancellation -----------------------------------------------------------------

def unit_element(p: NatPoly, a1: NatPoly) -> UnitData:
    """An element ``z`` with ``a1 + z ~ a1``: from ``2 a1 + d ~ a1``, ``z = a1 + d``."""
    w = highness_oracle(p, a1, a1 * 2)
    return UnitData(a1, a1 + w.c, w.cert)


def unit_absorb(p: NatPoly, u: UnitData, b: NatPoly) -> Certificate:
    """``b + z ~ b`` for non-constant ``b``."""
    if b == u.base:
        return u.cert
    e = highness_oracle(p, b, u.base + b)  # base + b + d' ~ b
    pieces = [
        chain.shift(chain.reverse(e.cert), u.z),
        chain.shift(u.cert, b + e.c),
        e.cert,
    ]
    return chain.concat_all(p, b + u.z, pieces)


def inverse_witness(p: NatPoly, u: UnitData, h: NatPoly) -> LeWitness:
    """``h <= z``: a cofactor ``h'`` with ``h + h' ~ z``."""
    return highness_oracle(p, u.z, h)


def cancel_high(p: NatPoly, k: Certificate, a1: NatPoly, a2: NatPoly) -> Certificate:
    """Turn ``a1 + b ~ a2 + b`` into ``a1 ~ a2`` for non-constant ``a1, a2``.

    Chain, with ``h = b + a1``, ``z`` the unit anchored at ``a1`` and
    ``h + h' ~ z``::

        a1 ~ a1 + z ~ a1 + h + h' ~ a2 + h + h' ~ a2 + z ~ a2
    """
    if a1.degree < 1 or a2.degree < 1:
        raise SynthesisError("cancellation needs non-constant terms")
    verdict = chain.verify(k)
    if not verdict:
        raise SynthesisError(f"invalid certificate: {verdict.reason}")
    try:
        b = k.start.monus(a1)
    except ValueError:
        raise SynthesisError(f"{k.start} is not {a1} + b") from None
    if k.end != a2 + b:
        raise SynthesisError(f"certificate ends at {k.end}, expected {a2} + {b}")
    h = b + a1
    k2 = chain.shift(k, a1)
    u = unit_element(p, a1)
    inv = inverse_witness(p, u, h)
    pieces = [
        chain.reverse(u.cert),
        chain.reverse(chain.shift(inv.cert, a1)),
        chain.shift(k2, inv.c),
        chain.shift(inv.cert, a2),
        unit_absorb(p, u, a2),
    ]
    return chain.concat_all(p, a1, pieces)


# -- main pipeline ----------------------------------------------------------------

def prop33(
    p: NatPoly, q1: NatPoly, q2: NatPoly, rtilde: IntPoly
) -> tuple[NatPoly, Certificate]:
    """``s`` and a chain ``q1 + s ~ q2 + s`` from ``q1 - q2 = rtilde (p - x)``.

    With ``r = -rtilde = r1 - r2``, ``s = r1 x + r2 p``; the chain expands
    ``r1 x`` into ``r1 p`` and then contracts ``r2 p`` into ``r2 x``.
    """
    if IntPoly.convert(q1) - q2 != rtilde * (p - X):
        raise SynthesisError(f"{rtilde} is not the cofactor of {q1} - {q2} by {p} - x")
    r1, r2 = pos_neg_split(-rtilde)
    s = r1 * X + r2 * p
    gen = chain.generator(p)
    expand = chain.shift(chain.mul_poly(gen, r1), q1 + r2 * p)
    contract = chain.shift(chain.mul_poly(chain.reverse(gen), r2), q1 + r1 * p)
    cert = chain.concat_all(p, q1 + s, [expand, contract])
    if cert.end != q2 + s:
        raise SynthesisError("internal error: cofactor split does not close up")
    return s, cert


def synthesize(p: NatPoly, q1: NatPoly, q2: NatPoly) -> Certificate:
    """A certificate for ``q1 ~ q2`` in N[x]/(x = p(x)).

    Raises :class:`HypothesisViolation` when the preconditions on ``p``, ``q1``,
    ``q2`` fail and :class:`RingImplicationFails` when ``p - x`` does not divide
    ``q1 - q2`` over Z.
    """
    report = check_synthesis_preconditions(p, q1, q2)
    if not report.synthesis_ok:
        raise HypothesisViolation(report, "hypotheses fail: " + ", ".join(report.failures()))
    verdict = check_ring_implication(X, p, q1, q2)
    if not verdict.holds:
        raise RingImplicationFails(
            verdict, f"{p} - x does not divide {q1} - {q2} in Z[x] (residue {verdict.remainder})"
        )
    if q1 == q2:
        return chain.identity(p, q1)
    s, k = prop33(p, q1, q2, verdict.cofactor)
    return cancel_high(p, k, q1, q2)
