"""Deciding when a polynomial implication may be turned into a rewrite chain.

Three layers are checked here:

* the ring-theoretic implication ``p1 = p2  =>  q1 = q2``, i.e. whether
  ``p2 - p1`` divides ``q1 - q2`` in Z[x];
* the complex-root route to it: ``p2 - p1`` primitive and squarefree and
  vanishing only where ``q1 - q2`` does (decided by exact division over Q);
* the preconditions that synthesis needs on ``p``, ``q1`` and ``q2``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

from .polycore import IntPoly, NatPoly, Poly, RatPoly, content_primitive, rat_gcd, squarefree


@dataclass(frozen=True)
class RingVerdict:
    """Outcome of the divisibility test.

    When ``holds``, ``cofactor`` is the ``r`` in ``q1 - q2 = r * d`` where ``d``
    is the divisor the verdict was computed against.  Otherwise ``remainder``
    is a nonzero residue witnessing that the division does not go through.
    """

    holds: bool
    divisor: IntPoly
    cofactor: Optional[IntPoly] = None
    remainder: Optional[RatPoly] = None

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "divisor": self.divisor.to_pairs(),
            "cofactor": None if self.cofactor is None else self.cofactor.to_pairs(),
            "remainder": None if self.remainder is None else self.remainder.to_pairs(),
        }


@dataclass(frozen=True)
class HypothesisReport:
    """Independent yes/no answers; ``None`` means the check was not run."""

    primitive: Optional[bool] = None
    squarefree: Optional[bool] = None
    roots_condition: Optional[bool] = None
    constant_term_ok: Optional[bool] = None
    degree_ok: Optional[bool] = None
    q1_nonconstant: Optional[bool] = None
    q2_nonconstant: Optional[bool] = None
    content: Optional[int] = None

    def merge(self, other: "HypothesisReport") -> "HypothesisReport":
        mine = asdict(self)
        for key, value in asdict(other).items():
            if value is not None:
                mine[key] = value
        return HypothesisReport(**mine)

    @property
    def synthesis_ok(self) -> bool:
        """All preconditions on (p, q1, q2) needed by synthesis hold."""
        return bool(
            self.constant_term_ok and self.degree_ok and self.q1_nonconstant and self.q2_nonconstant
        )

    def failures(self) -> list[str]:
        names = ("constant_term_ok", "degree_ok", "q1_nonconstant", "q2_nonconstant")
        return [n for n in names if getattr(self, n) is False]

    def to_json(self) -> dict:
        return asdict(self)


def _int(a: Poly) -> IntPoly:
    return IntPoly.convert(a)


def _integer_residue(a: IntPoly, d: IntPoly) -> IntPoly:
    # long division in Z[x]: stops at the first leading coefficient that d's
    # does not divide; zero residue iff d | a
    n, lc = d.degree, d.leading()
    rem = dict(a.terms)
    while rem:
        top = max(rem)
        if top < n or rem[top] % lc:
            break
        c = rem[top] // lc
        for e, dc in d.terms.items():
            k = e + top - n
            v = rem.get(k, 0) - c * dc
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return IntPoly(rem)


def check_ring_implication(p1: Poly, p2: Poly, q1: Poly, q2: Poly) -> RingVerdict:
    """Does ``d = p2 - p1`` divide ``q1 - q2`` in Z[x]?

    Division runs over Q; the implication holds iff the remainder vanishes and
    the quotient is integral.  A nonintegral quotient is witnessed by the
    residue of long division over Z.
    """
    d = _int(p2) - _int(p1)
    if not d:
        raise ValueError("p1 and p2 coincide: the divisor is zero")
    diff = _int(q1) - _int(q2)
    quot, rem = RatPoly.convert(diff).divrem(d)
    if rem:
        return RingVerdict(False, d, remainder=rem)
    if not quot.is_integral():
        return RingVerdict(False, d, remainder=RatPoly.convert(_integer_residue(diff, d)))
    cofactor = quot.to_int()
    assert cofactor * d == diff
    return RingVerdict(True, d, cofactor=cofactor)


def check_complex_route(
    p1: Poly, p2: Poly, q1: Poly, q2: Poly
) -> tuple[HypothesisReport, RingVerdict]:
    """Report primitivity, squarefreeness and the root condition for ``p2 - p1``.

    Every complex root of ``d`` is a root of ``q1 - q2`` exactly when the
    squarefree part ``d / gcd(d, d')`` divides ``q1 - q2`` over Q, so no roots
    are located.  For squarefree ``d`` that is plain divisibility by ``d``.
    When all three hold, Gauss's lemma forces the rational quotient to be
    integral; a failure of that is raised as a bug.
    """
    d = _int(p2) - _int(p1)
    if not d:
        raise ValueError("p1 and p2 coincide: the divisor is zero")
    content, primitive = content_primitive(d)
    sqf = squarefree(d)
    radical = RatPoly.convert(d).divrem(rat_gcd(d, d.derivative()))[0]
    _, rem = RatPoly.convert(_int(q1) - _int(q2)).divrem(radical)
    roots = not rem
    report = HypothesisReport(
        primitive=primitive, squarefree=sqf, roots_condition=roots, content=content
    )
    verdict = check_ring_implication(p1, p2, q1, q2)
    if primitive and sqf and roots and not verdict.holds:
        raise AssertionError(
            f"primitive divisor {d} divides {q1} - {q2} over Q but not over Z"
        )
    return report, verdict


def check_synthesis_preconditions(p: NatPoly, q1: NatPoly, q2: NatPoly) -> HypothesisReport:
    return HypothesisReport(
        constant_term_ok=p.coeff(0) >= 1,
        degree_ok=p.degree >= 2,
        q1_nonconstant=q1.degree >= 1,
        q2_nonconstant=q2.degree >= 1,
    )


def full_report(p: NatPoly, q1: NatPoly, q2: NatPoly) -> tuple[HypothesisReport, RingVerdict]:
    """Everything known about ``x = p(x) => q1 = q2``, divisor ``p - x``."""
    x = IntPoly.x()
    if p == x:
        verdict = RingVerdict(q1 == q2, IntPoly.zero(),
                              cofactor=IntPoly.zero() if q1 == q2 else None,
                              remainder=None if q1 == q2 else RatPoly.convert(_int(q1) - _int(q2)))
        return check_synthesis_preconditions(p, q1, q2), verdict
    route, verdict = check_complex_route(x, p, q1, q2)
    return route.merge(check_synthesis_preconditions(p, q1, q2)), verdict
