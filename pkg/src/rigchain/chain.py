"""Rewrite-chain certificates for the congruence on N[x] generated by x ~ p.

A :class:`LinkStep` rewrites ``f + x^k * x`` into ``f + x^k * p`` (expand) or
back (contract).  A :class:`Certificate` is a start term, an end term and the
steps between them; :func:`verify` replays it using nothing but polynomial
arithmetic.

Certificates serialize to canonical JSON::

    {"p": [[0, "1"], [2, "1"]],
     "start": [[1, "1"]], "end": [[0, "1"], [1, "1"], [3, "1"]],
     "steps": [{"k": 0, "f": [], "dir": "expand"},
               {"k": 1, "f": [[0, "1"]], "dir": "expand"}]}

The transforms (:func:`shift`, :func:`mul_monomial`, :func:`mul_poly`,
:func:`concat`, :func:`reverse`) close certificates under the rig operations
and under symmetry/transitivity.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional

from .polycore import NatPoly


class Direction(str, enum.Enum):
    EXPAND = "expand"
    CONTRACT = "contract"

    def flipped(self) -> "Direction":
        return Direction.CONTRACT if self is Direction.EXPAND else Direction.EXPAND


EXPAND = Direction.EXPAND
CONTRACT = Direction.CONTRACT


class StepMismatch(ValueError):
    """A term does not have the shape a step claims."""

    def __init__(self, message: str, exponent: Optional[int] = None):
        super().__init__(message)
        self.exponent = exponent


class CertificateFormatError(ValueError):
    """Malformed certificate text; ``where`` locates the offending element."""

    def __init__(self, message: str, where: str):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass(frozen=True, slots=True)
class LinkStep:
    k: int
    f: NatPoly
    dir: Direction = EXPAND

    def small(self) -> NatPoly:
        """``f + x^(k+1)``, the side containing the lone generator."""
        return self.f + NatPoly.monomial(self.k + 1)

    def big(self, p: NatPoly) -> NatPoly:
        """``f + x^k * p``."""
        return self.f + p.shift(self.k)

    def flipped(self) -> "LinkStep":
        return LinkStep(self.k, self.f, self.dir.flipped())


@dataclass(frozen=True)
class Certificate:
    p: NatPoly
    start: NatPoly
    end: NatPoly
    steps: tuple[LinkStep, ...] = field(default=())

    def __post_init__(self):
        if not isinstance(self.steps, tuple):
            object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    def terms(self) -> list[NatPoly]:
        """The replayed chain ``r_0 = start, ..., r_n``; raises on a bad step."""
        out = [self.start]
        r = self.start
        for step in self.steps:
            r = apply_step(r, self.p, step)
            out.append(r)
        return out


@dataclass(frozen=True)
class Verdict:
    ok: bool
    failed_at: Optional[int] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _diff_exponent(a: NatPoly, b: NatPoly) -> int:
    return min(e for e in set(a.terms) | set(b.terms) if a.coeff(e) != b.coeff(e))


def apply_step(r: NatPoly, p: NatPoly, step: LinkStep) -> NatPoly:
    """Rewrite ``r`` by one step, checking that ``r`` has the claimed shape."""
    if step.dir is EXPAND:
        source, target = step.small(), step.big(p)
    else:
        source, target = step.big(p), step.small()
    if r != source:
        e = _diff_exponent(r, source)
        raise StepMismatch(
            f"{step.dir.value} at k={step.k}: term {r} differs from {source} at x^{e}", e
        )
    return target


def verify(cert: Certificate) -> Verdict:
    """Replay ``cert`` from its start; it must land exactly on its end."""
    r = cert.start
    for i, step in enumerate(cert.steps):
        try:
            r = apply_step(r, cert.p, step)
        except StepMismatch as exc:
            return Verdict(False, i, str(exc))
    if r != cert.end:
        return Verdict(False, len(cert.steps), f"chain ends at {r}, not at {cert.end}")
    return Verdict(True)


def generator(p: NatPoly) -> Certificate:
    """The one-step certificate ``x ~ p``."""
    return Certificate(p, NatPoly.x(), p, (LinkStep(0, NatPoly.zero(), EXPAND),))


def identity(p: NatPoly, term: NatPoly) -> Certificate:
    return Certificate(p, term, term, ())


# -- transforms ------------------------------------------------------------------

def shift(cert: Certificate, g: NatPoly) -> Certificate:
    """Add ``g`` to every term of the chain."""
    if not g:
        return cert
    steps = tuple(LinkStep(s.k, s.f + g, s.dir) for s in cert.steps)
    return Certificate(cert.p, cert.start + g, cert.end + g, steps)


def mul_monomial(cert: Certificate, j: int) -> Certificate:
    """Multiply every term of the chain by ``x^j``."""
    if j == 0:
        return cert
    steps = tuple(LinkStep(s.k + j, s.f.shift(j), s.dir) for s in cert.steps)
    return Certificate(cert.p, cert.start.shift(j), cert.end.shift(j), steps)


def mul_poly(cert: Certificate, g: NatPoly) -> Certificate:
    """Multiply the chain by ``g`` one unit monomial at a time.

    The unit monomials of ``g`` are taken in ascending exponent order; while
    the t-th copy is rewritten the earlier copies already carry ``end`` and the
    later ones still carry ``start``.  Step count is ``len(cert) * g(1)``.
    """
    if g == NatPoly.one():
        return cert
    units = g.units()
    start, end = cert.start, cert.end
    pieces = []
    done = NatPoly.zero()
    pending = g
    for j in units:
        mono = NatPoly.monomial(j)
        pending = pending.monus(mono)
        pieces.append(shift(mul_monomial(cert, j), done * end + pending * start))
        done = done + mono
    return concat_all(cert.p, g * start, pieces)


def concat(a: Certificate, b: Certificate) -> Certificate:
    if a.p != b.p:
        raise ValueError("certificates use different generators")
    if a.end != b.start:
        raise ValueError(f"cannot concatenate: {a.end} != {b.start}")
    return Certificate(a.p, a.start, b.end, a.steps + b.steps)


def concat_all(p: NatPoly, start: NatPoly, pieces: Iterable[Certificate]) -> Certificate:
    """Concatenate many certificates at once (``start`` covers the empty case)."""
    steps: list[LinkStep] = []
    end = start
    for piece in pieces:
        if piece.p != p:
            raise ValueError("certificates use different generators")
        if piece.start != end:
            raise ValueError(f"cannot concatenate: {end} != {piece.start}")
        steps.extend(piece.steps)
        end = piece.end
    return Certificate(p, start, end, tuple(steps))


def reverse(a: Certificate) -> Certificate:
    return Certificate(a.p, a.end, a.start, tuple(s.flipped() for s in reversed(a.steps)))


# -- serialization ---------------------------------------------------------------

def to_json(cert: Certificate) -> dict:
    return {
        "p": cert.p.to_pairs(),
        "start": cert.start.to_pairs(),
        "end": cert.end.to_pairs(),
        "steps": [{"k": s.k, "f": s.f.to_pairs(), "dir": s.dir.value} for s in cert.steps],
    }


def serialize(cert: Certificate) -> str:
    # one step per line keeps large certificates diffable
    head = to_json(cert)
    steps = head.pop("steps")
    lines = [json.dumps(head, separators=(",", ":"))[:-1] + ',"steps":[']
    for i, s in enumerate(steps):
        tail = "," if i + 1 < len(steps) else ""
        lines.append(json.dumps(s, separators=(",", ":")) + tail)
    lines.append("]}")
    return "\n".join(lines) + "\n"


def _pairs(value: Any, where: str) -> NatPoly:
    if not isinstance(value, list):
        raise CertificateFormatError("expected a list of [exponent, coefficient] pairs", where)
    last = -1
    terms = {}
    for i, pair in enumerate(value):
        at = f"{where}[{i}]"
        if not (isinstance(pair, list) and len(pair) == 2):
            raise CertificateFormatError("expected an [exponent, coefficient] pair", at)
        e, c = pair
        if isinstance(e, bool) or not isinstance(e, int) or e < 0:
            raise CertificateFormatError(f"exponent {e!r} is not a natural number", at)
        if e == last:
            raise CertificateFormatError(f"duplicate exponent {e}", at)
        if e < last:
            raise CertificateFormatError(f"exponent {e} out of order", at)
        if not (isinstance(c, str) and c.isascii() and c.isdigit()):
            raise CertificateFormatError(f"coefficient {c!r} is not a decimal string", at)
        n = int(c)
        if n == 0:
            raise CertificateFormatError("zero coefficient", at)
        if str(n) != c:
            raise CertificateFormatError(f"coefficient {c!r} is not canonical", at)
        terms[e] = n
        last = e
    return NatPoly._raw(terms)


def from_json(data: Any) -> Certificate:
    if not isinstance(data, dict):
        raise CertificateFormatError("expected an object", "$")
    missing = {"p", "start", "end", "steps"} - set(data)
    if missing:
        raise CertificateFormatError(f"missing fields {sorted(missing)}", "$")
    extra = set(data) - {"p", "start", "end", "steps"}
    if extra:
        raise CertificateFormatError(f"unknown fields {sorted(extra)}", "$")
    p = _pairs(data["p"], "p")
    start = _pairs(data["start"], "start")
    end = _pairs(data["end"], "end")
    raw_steps = data["steps"]
    if not isinstance(raw_steps, list):
        raise CertificateFormatError("expected a list", "steps")
    steps = []
    for i, s in enumerate(raw_steps):
        at = f"steps[{i}]"
        if not isinstance(s, dict) or set(s) != {"k", "f", "dir"}:
            raise CertificateFormatError("expected an object with keys k, f, dir", at)
        k = s["k"]
        if isinstance(k, bool) or not isinstance(k, int) or k < 0:
            raise CertificateFormatError(f"k={k!r} is not a natural number", at)
        try:
            d = Direction(s["dir"])
        except ValueError:
            raise CertificateFormatError(f"unknown direction {s['dir']!r}", at) from None
        steps.append(LinkStep(k, _pairs(s["f"], f"{at}.f"), d))
    return Certificate(p, start, end, tuple(steps))


def parse(text: str) -> Certificate:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return from_json(data)
