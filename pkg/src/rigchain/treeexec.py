"""Running certificates as bijections on trees.

For ``p`` in N[x] with ``p(0) >= 1`` the initial algebra ``T = p(T)`` is the set
of finite trees whose nodes are labelled by a *slot*: an index into the
unit-monomial decomposition of ``p`` (ascending exponent, equal copies
adjacent).  A node in a slot of exponent ``e`` has ``e`` children.

A value of ``q(T)`` is a slot of ``q`` together with a tuple of trees of the
matching length.  Each link step of a certificate induces a bijection between
the value sets of its two terms; running the steps in order gives an explicit
bijection ``q1(T) -> q2(T)``.

Slot layout of a step's term ``f + A`` (``A`` the active part): unit monomials
are ordered by exponent, and within one exponent the copies belonging to ``f``
come before those of ``A``.  Expanding feeds the last tree of the active
``x^k * x`` value to ``alpha``.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .chain import EXPAND, Certificate, LinkStep
from .polycore import NatPoly


class MalformedValue(ValueError):
    pass


class EndpointMismatch(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Tree:
    slot: int
    children: tuple["Tree", ...] = ()

    def size(self) -> int:
        total, stack = 0, [self]
        while stack:
            t = stack.pop()
            total += 1
            stack.extend(t.children)
        return total

    def __str__(self) -> str:
        if not self.children:
            return str(self.slot)
        return f"{self.slot}({','.join(map(str, self.children))})"


@dataclass(frozen=True, slots=True)
class PolyValue:
    q: NatPoly
    slot: int
    trees: tuple[Tree, ...] = ()

    def size(self) -> int:
        return sum(t.size() for t in self.trees)

    def __str__(self) -> str:
        return f"{self.slot}[{','.join(map(str, self.trees))}]"


def leaf(p: NatPoly) -> Tree:
    """The tree made of the first constant slot."""
    if p.coeff(0) < 1:
        raise ValueError(f"{p} has no constant term, so T = p(T) has no trees")
    return Tree(0)


def check_tree(t: Tree, p: NatPoly) -> None:
    units = p.units()
    stack = [t]
    while stack:
        node = stack.pop()
        if not 0 <= node.slot < len(units):
            raise MalformedValue(f"slot {node.slot} out of range for {p}")
        if len(node.children) != units[node.slot]:
            raise MalformedValue(
                f"slot {node.slot} of {p} needs {units[node.slot]} children, "
                f"got {len(node.children)}"
            )
        stack.extend(node.children)


def check_value(v: PolyValue, p: NatPoly) -> None:
    units = v.q.units()
    if not 0 <= v.slot < len(units):
        raise MalformedValue(f"slot {v.slot} out of range for {v.q}")
    if len(v.trees) != units[v.slot]:
        raise MalformedValue(f"slot {v.slot} of {v.q} needs {units[v.slot]} trees")
    for t in v.trees:
        check_tree(t, p)


def alpha(t: Tree, p: NatPoly) -> PolyValue:
    """Unpack the root: ``T -> p(T)``."""
    return PolyValue(p, t.slot, t.children)


def alpha_inv(v: PolyValue) -> Tree:
    """Repack: ``p(T) -> T``."""
    units = v.q.units()
    if not 0 <= v.slot < len(units) or len(v.trees) != units[v.slot]:
        raise MalformedValue(f"{v} is not a value over {v.q}")
    return Tree(v.slot, tuple(v.trees))


# -- compiled steps ---------------------------------------------------------------

class _Layout:
    """Slot bookkeeping for a term ``f + active``."""

    __slots__ = ("exps", "offs", "fcount", "index", "first_active")

    def __init__(self, f: NatPoly, active: Sequence[int]):
        counts = dict(f.terms)
        acount: dict[int, int] = {}
        self.first_active: dict[int, int] = {}
        for j, e in enumerate(active):
            acount[e] = acount.get(e, 0) + 1
            self.first_active.setdefault(e, j)
        self.exps = sorted(set(counts) | set(acount))
        self.offs = []
        self.fcount = []
        self.index = {}
        pos = 0
        for i, e in enumerate(self.exps):
            self.offs.append(pos)
            self.fcount.append(counts.get(e, 0))
            self.index[e] = i
            pos += counts.get(e, 0) + acount.get(e, 0)

    def locate(self, slot: int) -> tuple[int, int, bool, int]:
        # -> (exponent, offset within exponent, is_active, active index or -1)
        i = bisect_right(self.offs, slot) - 1
        e = self.exps[i]
        within = slot - self.offs[i]
        if within < self.fcount[i]:
            return e, within, False, -1
        return e, within, True, self.first_active[e] + within - self.fcount[i]

    def f_slot(self, e: int, within: int) -> int:
        return self.offs[self.index[e]] + within

    def active_slot(self, e: int, rank: int) -> int:
        # rank counts active copies of x^e already placed before this one
        i = self.index[e]
        return self.offs[i] + self.fcount[i] + rank


class _CompiledStep:
    __slots__ = ("k", "small", "big", "p_units", "p_first", "expand", "small_term", "big_term")

    def __init__(self, step: LinkStep, p: NatPoly, p_units: list[int]):
        self.k = step.k
        self.expand = step.dir is EXPAND
        self.p_units = p_units
        self.small = _Layout(step.f, [step.k + 1])
        self.big = _Layout(step.f, [step.k + e for e in p_units])
        self.p_first = {}
        for j, e in enumerate(p_units):
            self.p_first.setdefault(e, j)
        self.small_term = step.small()
        self.big_term = step.big(p)

    def to_big(self, slot: int, trees: tuple) -> tuple[int, tuple]:
        e, within, active, _ = self.small.locate(slot)
        if not active:
            return self.big.f_slot(e, within), trees
        node = trees[-1]
        pe = self.p_units[node.slot]
        rank = node.slot - self.p_first[pe]
        return self.big.active_slot(self.k + pe, rank), trees[:-1] + node.children

    def to_small(self, slot: int, trees: tuple) -> tuple[int, tuple]:
        e, within, active, j = self.big.locate(slot)
        if not active:
            return self.small.f_slot(e, within), trees
        k = self.k
        node = Tree(j, trees[k:])
        return self.small.active_slot(k + 1, 0), trees[:k] + (node,)


class Bijection:
    """The bijection ``start(T) -> end(T)`` induced by a valid certificate."""

    def __init__(self, cert: Certificate):
        self.cert = cert
        p_units = cert.p.units()
        self._steps = [_CompiledStep(s, cert.p, p_units) for s in cert.steps]

    def forward(self, v: PolyValue) -> PolyValue:
        if v.q != self.cert.start:
            raise EndpointMismatch(f"value lies over {v.q}, certificate starts at {self.cert.start}")
        slot, trees = v.slot, v.trees
        for st in self._steps:
            slot, trees = st.to_big(slot, trees) if st.expand else st.to_small(slot, trees)
        return PolyValue(self.cert.end, slot, trees)

    def backward(self, w: PolyValue) -> PolyValue:
        if w.q != self.cert.end:
            raise EndpointMismatch(f"value lies over {w.q}, certificate ends at {self.cert.end}")
        slot, trees = w.slot, w.trees
        for st in reversed(self._steps):
            slot, trees = st.to_small(slot, trees) if st.expand else st.to_big(slot, trees)
        return PolyValue(self.cert.start, slot, trees)

    def trace(self, v: PolyValue) -> list[PolyValue]:
        """Intermediate values over each replayed term (forward direction)."""
        out = [v]
        slot, trees = v.slot, v.trees
        for st in self._steps:
            if st.expand:
                slot, trees = st.to_big(slot, trees)
                out.append(PolyValue(st.big_term, slot, trees))
            else:
                slot, trees = st.to_small(slot, trees)
                out.append(PolyValue(st.small_term, slot, trees))
        return out


def apply_bijection(cert: Certificate, v: PolyValue, direction: str = "forward") -> PolyValue:
    """One-off application; build a :class:`Bijection` to reuse across values."""
    check_value(v, cert.p)
    bij = Bijection(cert)
    if direction == "forward":
        return bij.forward(v)
    if direction == "backward":
        return bij.backward(v)
    raise ValueError(f"direction must be 'forward' or 'backward', not {direction!r}")


# -- generation -------------------------------------------------------------------

def random_tree(p: NatPoly, size_bound: int, seed=None, rng: Optional[random.Random] = None) -> Tree:
    """A random tree with at most ``size_bound`` nodes (``size_bound >= 1``)."""
    if size_bound < 1:
        raise ValueError("size_bound must be at least 1")
    if p.coeff(0) < 1:
        raise ValueError(f"{p} has no constant term, so T = p(T) has no trees")
    rng = rng if rng is not None else random.Random(seed)
    units = p.units()
    tree, _ = _grow(units, size_bound, rng)
    return tree


def _grow(units: list[int], budget: int, rng: random.Random) -> tuple[Tree, int]:
    # each child needs at least one node
    choices = [s for s, e in enumerate(units) if 1 + e <= budget]
    slot = rng.choice(choices)
    arity = units[slot]
    left = budget - 1
    used = 1
    children = []
    for i in range(arity):
        reserve = arity - i - 1
        child_budget = rng.randint(1, left - reserve)
        child, n = _grow(units, child_budget, rng)
        children.append(child)
        left -= n
        used += n
    return Tree(slot, tuple(children)), used


def random_value(q: NatPoly, p: NatPoly, size_bound: int, rng: random.Random) -> PolyValue:
    """Random slot of ``q``; each tree has at most ``size_bound`` nodes."""
    units = q.units()
    if not units:
        raise ValueError("the zero polynomial has no values")
    slot = rng.randrange(len(units))
    trees = tuple(random_tree(p, size_bound, rng=rng) for _ in range(units[slot]))
    return PolyValue(q, slot, trees)


def trees_of_size(p: NatPoly, n: int) -> list[Tree]:
    """All trees with exactly ``n`` nodes, in canonical order."""
    return list(_trees_of_size(tuple(p.units()), n))


@lru_cache(maxsize=None)
def _trees_of_size(units: tuple[int, ...], n: int) -> tuple[Tree, ...]:
    if n < 1:
        return ()
    out = []
    for slot, e in enumerate(units):
        for kids in _forests(units, e, n - 1):
            out.append(Tree(slot, kids))
    return tuple(out)


def _forests(units: tuple[int, ...], count: int, total: int) -> Iterator[tuple[Tree, ...]]:
    # tuples of `count` trees with `total` nodes altogether
    if count == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - count + 2):
        for t in _trees_of_size(units, first):
            for rest in _forests(units, count - 1, total - first):
                yield (t,) + rest


def enumerate_values(q: NatPoly, p: NatPoly, max_nodes: int) -> list[PolyValue]:
    """Every value over ``q`` with at most ``max_nodes`` nodes in total."""
    if p.coeff(0) < 1:
        raise ValueError(f"{p} has no constant term, so T = p(T) has no trees")
    units = tuple(p.units())
    out = []
    for slot, e in enumerate(q.units()):
        for total in range(e, max_nodes + 1):
            for trees in _forests(units, e, total):
                out.append(PolyValue(q, slot, trees))
    return out


# -- text -------------------------------------------------------------------------

class _TreeParser:
    def __init__(self, text: str):
        self.text = "".join(text.split())
        self.i = 0

    def fail(self, message: str):
        raise MalformedValue(f"{message} at position {self.i} in {self.text!r}")

    def number(self) -> int:
        j = self.i
        while j < len(self.text) and self.text[j].isdigit():
            j += 1
        if j == self.i:
            self.fail("expected a slot number")
        n = int(self.text[self.i:j])
        self.i = j
        return n

    def tree(self) -> Tree:
        slot = self.number()
        if self.i < len(self.text) and self.text[self.i] == "(":
            self.i += 1
            return Tree(slot, self.seq(")"))
        return Tree(slot)

    def seq(self, close: str) -> tuple[Tree, ...]:
        items = []
        if self.i < len(self.text) and self.text[self.i] == close:
            self.i += 1
            return ()
        while True:
            items.append(self.tree())
            if self.i >= len(self.text):
                self.fail(f"expected {close!r}")
            ch = self.text[self.i]
            self.i += 1
            if ch == close:
                return tuple(items)
            if ch != ",":
                self.i -= 1
                self.fail(f"expected ',' or {close!r}")

    def done(self):
        if self.i != len(self.text):
            self.fail("trailing input")


def parse_tree(text: str) -> Tree:
    """Parse ``slot(child, ...)``, e.g. ``1(0,0)``."""
    parser = _TreeParser(text)
    t = parser.tree()
    parser.done()
    return t


def parse_value(text: str, q: NatPoly) -> PolyValue:
    """Parse ``slot[tree, ...]``, e.g. ``0[0,0,0,0,0,0,0]`` over ``x^7``."""
    parser = _TreeParser(text)
    slot = parser.number()
    if parser.i >= len(parser.text) or parser.text[parser.i] != "[":
        parser.fail("expected '['")
    parser.i += 1
    trees = parser.seq("]")
    parser.done()
    return PolyValue(q, slot, trees)
