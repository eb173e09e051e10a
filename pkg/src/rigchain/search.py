"""Bounded breadth-first search for short rewrite chains.

The congruence graph on N[x] is infinite, so states are restricted to degree
``<= max_degree`` and coefficient mass ``<= max_coeff_mass``.  The search is
bidirectional (full layers, smaller frontier first), which still returns a
chain of minimal length within the bounds.  Neighbours are generated by
ascending ``k``, expansion before contraction, so results are reproducible.
"""

from __future__ import annotations

from typing import Iterator, Optional

from .chain import CONTRACT, EXPAND, Certificate, Direction, LinkStep
from .polycore import NatPoly

State = tuple[int, ...]


def _dense(q: NatPoly, width: int) -> State:
    out = [0] * width
    for e, c in q.terms.items():
        out[e] = c
    return tuple(out)


def _sparse(s: State) -> NatPoly:
    return NatPoly({e: c for e, c in enumerate(s) if c})


def _neighbours(
    s: State, pd: State, pdeg: int, max_degree: int, max_mass: int, mass: int
) -> Iterator[tuple[int, Direction, State]]:
    pmass = sum(pd)
    for k in range(max_degree):
        if k + pdeg > max_degree:
            break
        if s[k + 1] and mass - 1 + pmass <= max_mass:
            t = list(s)
            t[k + 1] -= 1
            for e, c in enumerate(pd):
                if c:
                    t[k + e] += c
            yield k, EXPAND, tuple(t)
        if all(s[k + e] >= c for e, c in enumerate(pd) if c):
            t = list(s)
            for e, c in enumerate(pd):
                if c:
                    t[k + e] -= c
            t[k + 1] += 1
            yield k, CONTRACT, tuple(t)


def bfs_search(
    p: NatPoly,
    q1: NatPoly,
    q2: NatPoly,
    max_steps: int = 18,
    max_degree: int = 8,
    max_coeff_mass: int = 64,
) -> Optional[Certificate]:
    """A shortest certificate ``q1 ~ q2`` inside the bounds, or ``None``."""
    if min(max_steps, max_degree, max_coeff_mass) <= 0:
        raise ValueError("search bounds must be positive")
    for q in (q1, q2):
        if q.degree > max_degree or q.mass > max_coeff_mass:
            return None
    if q1 == q2:
        return Certificate(p, q1, q2, ())
    width = max_degree + 1
    pdeg = p.degree
    pd = _dense(p, pdeg + 1) if pdeg >= 0 else (0,)
    start, goal = _dense(q1, width), _dense(q2, width)

    # state -> (depth, parent state, k, direction parent->state)
    seen = (
        {start: (0, None, 0, EXPAND)},
        {goal: (0, None, 0, EXPAND)},
    )
    frontiers = [[start], [goal]]
    depths = [0, 0]
    while depths[0] + depths[1] < max_steps:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        if not frontiers[side]:
            return None
        mine, other = seen[side], seen[1 - side]
        depth = depths[side] + 1
        nxt: list[State] = []
        meets: list[State] = []
        for s in frontiers[side]:
            mass = sum(s)
            for k, d, t in _neighbours(s, pd, pdeg, max_degree, max_coeff_mass, mass):
                if t in mine:
                    continue
                mine[t] = (depth, s, k, d)
                nxt.append(t)
                if t in other:
                    meets.append(t)
        frontiers[side] = nxt
        depths[side] = depth
        if meets:
            best = min(meets, key=lambda t: depth + other[t][0])
            return _assemble(p, q1, q2, best, seen)
    return None


def _assemble(p: NatPoly, q1: NatPoly, q2: NatPoly, meet: State, seen) -> Certificate:
    fwd: list[tuple[State, int, Direction]] = []  # (source state, k, dir)
    t = meet
    while seen[0][t][1] is not None:
        _, parent, k, d = seen[0][t]
        fwd.append((parent, k, d))
        t = parent
    fwd.reverse()
    t = meet
    while seen[1][t][1] is not None:
        _, parent, k, d = seen[1][t]
        # walked parent -> t while searching backwards, so t -> parent is flipped
        fwd.append((t, k, d.flipped()))
        t = parent
    steps = []
    for src, k, d in fwd:
        r = _sparse(src)
        remove = NatPoly.monomial(k + 1) if d is EXPAND else p.shift(k)
        steps.append(LinkStep(k, r.monus(remove), d))
    return Certificate(p, q1, q2, tuple(steps))
