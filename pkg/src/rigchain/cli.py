"""Command-line interface.

Exit codes: 0 success/holds/found, 1 fails/invalid/not found, 2 input error,
3 hypothesis violation.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import chain
from .hypotheses import check_complex_route, full_report
from .polycore import IntPoly, NatPoly, PolyParseError
from .rigmodels import CLI_MODELS, DEFAULT_BOUND, find_counterexample, get_model
from .search import bfs_search
from .synth import HypothesisViolation, RingImplicationFails, synthesize
from .treeexec import (
    Bijection,
    EndpointMismatch,
    MalformedValue,
    check_value,
    parse_value,
    random_value,
)

OK, FAIL, INPUT_ERROR, HYPOTHESIS = 0, 1, 2, 3
DEFAULT_SEED = 20240601


class InputError(Exception):
    pass


def _poly(text: Optional[str], name: str, cls=NatPoly):
    if text is None:
        raise InputError(f"missing polynomial {name}")
    try:
        return cls.parse(text)
    except (PolyParseError, ValueError) as exc:
        raise InputError(f"{name}: {exc}") from None


def _emit(args, payload: dict, human: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


def _flags(report) -> str:
    rows = []
    for key, value in report.to_json().items():
        if value is None:
            continue
        mark = value if key == "content" else ("yes" if value else "NO")
        rows.append(f"  {key:<17} {mark}")
    return "\n".join(rows)


def cmd_check(args) -> int:
    general = args.p1 is not None or args.p2 is not None
    if general and args.p is not None:
        raise InputError("give either -p or both -p1/-p2, not both")
    if general:
        p1, p2 = _poly(args.p1, "p1", IntPoly), _poly(args.p2, "p2", IntPoly)
        q1, q2 = _poly(args.q1, "q1", IntPoly), _poly(args.q2, "q2", IntPoly)
        if p1 == p2:
            raise InputError("p1 and p2 coincide")
        report, verdict = check_complex_route(p1, p2, q1, q2)
        code = OK if verdict.holds else FAIL
    else:
        p = _poly(args.p, "p")
        q1, q2 = _poly(args.q1, "q1"), _poly(args.q2, "q2")
        report, verdict = full_report(p, q1, q2)
        if not report.synthesis_ok:
            code = HYPOTHESIS
        else:
            code = OK if verdict.holds else FAIL
    if verdict.holds:
        ring = f"ring implication holds: q1 - q2 = ({verdict.cofactor}) * ({verdict.divisor})"
    else:
        ring = f"ring implication FAILS: residue {verdict.remainder} mod {verdict.divisor}"
    _emit(
        args,
        {"report": report.to_json(), "verdict": verdict.to_json(), "exit": code},
        f"hypotheses:\n{_flags(report)}\n{ring}",
    )
    return code


def cmd_prove(args) -> int:
    p, q1, q2 = _poly(args.p, "p"), _poly(args.q1, "q1"), _poly(args.q2, "q2")
    try:
        cert = synthesize(p, q1, q2)
    except HypothesisViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return HYPOTHESIS
    except RingImplicationFails as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL
    text = chain.serialize(cert)
    if args.stdout:
        sys.stdout.write(text)
        return OK
    Path(args.out).write_text(text)
    _emit(
        args,
        {"steps": len(cert), "file": str(args.out)},
        f"wrote certificate with {len(cert)} steps to {args.out}",
    )
    return OK


def _load(path: str) -> chain.Certificate:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return chain.parse(text)
    except chain.CertificateFormatError as exc:
        raise InputError(f"malformed certificate {path}: {exc}") from None


def cmd_verify(args) -> int:
    cert = _load(args.file)
    verdict = chain.verify(cert)
    human = (
        f"valid: {len(cert)} steps from {cert.start} to {cert.end}"
        if verdict
        else f"INVALID at step {verdict.failed_at}: {verdict.reason}"
    )
    _emit(
        args,
        {"valid": verdict.ok, "failed_at": verdict.failed_at, "reason": verdict.reason,
         "steps": len(cert)},
        human,
    )
    return OK if verdict else FAIL


def cmd_run(args) -> int:
    cert = _load(args.cert)
    verdict = chain.verify(cert)
    if not verdict:
        print(f"error: certificate invalid at step {verdict.failed_at}", file=sys.stderr)
        return FAIL
    if cert.p.coeff(0) < 1:
        raise InputError(f"{cert.p} has no constant term, so there are no trees")
    bij = Bijection(cert)
    if args.roundtrip is not None:
        rng = random.Random(args.seed)
        failures = 0
        for _ in range(args.roundtrip):
            v = random_value(cert.start, cert.p, args.max_nodes, rng)
            w = bij.forward(v)
            if bij.backward(w) != v:
                failures += 1
            w2 = random_value(cert.end, cert.p, args.max_nodes, rng)
            if bij.forward(bij.backward(w2)) != w2:
                failures += 1
        _emit(
            args,
            {"trials": args.roundtrip, "failures": failures, "seed": args.seed},
            f"roundtrip: {args.roundtrip} trials each way, {failures} failures (seed {args.seed})",
        )
        return OK if failures == 0 else FAIL
    if args.value is None:
        raise InputError("give a value or --roundtrip N")
    backward = args.direction == "backward"
    source = cert.end if backward else cert.start
    try:
        v = parse_value(args.value, source)
        check_value(v, cert.p)
        w = bij.backward(v) if backward else bij.forward(v)
    except (MalformedValue, EndpointMismatch) as exc:
        raise InputError(f"value over {source}: {exc}") from None
    _emit(
        args,
        {"direction": args.direction, "input": str(v), "output": str(w),
         "over": w.q.to_pairs()},
        str(w),
    )
    return OK


def cmd_search(args) -> int:
    p, q1, q2 = _poly(args.p, "p"), _poly(args.q1, "q1"), _poly(args.q2, "q2")
    for name in ("max_steps", "max_degree", "max_mass"):
        if getattr(args, name) <= 0:
            raise InputError(f"--{name.replace('_', '-')} must be positive")
    cert = bfs_search(p, q1, q2, args.max_steps, args.max_degree, args.max_mass)
    if cert is None:
        _emit(args, {"found": False}, "not found within bounds")
        return FAIL
    if args.out:
        Path(args.out).write_text(chain.serialize(cert))
    terms = cert.terms()
    _emit(
        args,
        {"found": True, "length": len(cert), "terms": [t.to_pairs() for t in terms]},
        f"found chain of length {len(cert)}:\n" + "\n".join(f"  {t}" for t in terms),
    )
    return OK


def cmd_counterexample(args) -> int:
    polys = [_poly(getattr(args, n), n) for n in ("p1", "p2", "q1", "q2")]
    model = get_model(args.model)
    a = find_counterexample(*polys, model, bound=args.bound)
    if a is None:
        _emit(args, {"found": False, "model": model.name}, "none within bound")
        return FAIL
    _emit(args, {"found": True, "model": model.name, "element": str(a)}, str(a))
    return OK


def _add_pq(sp: argparse.ArgumentParser, with_p: bool = True) -> None:
    if with_p:
        sp.add_argument("-p", "--p", dest="p", help="right-hand side of x = p(x)")
    sp.add_argument("-q1", "--q1", dest="q1", required=True)
    sp.add_argument("-q2", "--q2", dest="q2", required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rigchain",
        description="Prove, verify and run polynomial identities in N[x]/(x = p(x)).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", help="report hypotheses and the ring implication")
    _add_pq(sp)
    sp.add_argument("-p1", "--p1", dest="p1", help="general form: left side of p1 = p2")
    sp.add_argument("-p2", "--p2", dest="p2", help="general form: right side of p1 = p2")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("prove", help="synthesize a certificate for q1 ~ q2")
    _add_pq(sp)
    sp.add_argument("-o", "--out", default="certificate.json")
    sp.add_argument("--stdout", action="store_true", help="write the certificate to stdout")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_prove)

    sp = sub.add_parser("verify", help="check a certificate file")
    sp.add_argument("file")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("run", help="apply a certificate's bijection to tree values")
    sp.add_argument("cert")
    sp.add_argument("value", nargs="?", help="value text, e.g. 0[0,0,0,0,0,0,0]")
    sp.add_argument("--direction", choices=("forward", "backward"), default="forward")
    sp.add_argument("--backward", dest="direction", action="store_const", const="backward")
    sp.add_argument("--roundtrip", type=int, metavar="N")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--max-nodes", type=int, default=50)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("search", help="bounded breadth-first search for a short chain")
    _add_pq(sp)
    sp.add_argument("--max-steps", type=int, default=18)
    sp.add_argument("--max-degree", type=int, default=8)
    sp.add_argument("--max-mass", "--max-coeff-mass", dest="max_mass", type=int, default=64)
    sp.add_argument("-o", "--out", help="also write the certificate here")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("counterexample", help="look for a separating element in a small rig")
    sp.add_argument("-p1", "--p1", dest="p1", required=True)
    sp.add_argument("-p2", "--p2", dest="p2", required=True)
    sp.add_argument("-q1", "--q1", dest="q1", required=True)
    sp.add_argument("-q2", "--q2", dest="q2", required=True)
    sp.add_argument("--model", choices=CLI_MODELS, required=True)
    sp.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_counterexample)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
