"""Rewrite-chain proofs of polynomial identities in rigs.

Given ``x = p(x)`` and polynomials ``q1``, ``q2`` over N whose difference is
divisible by ``p(x) - x`` over Z, :func:`synthesize` builds an explicit chain of
generator substitutions turning ``q1`` into ``q2`` without ever subtracting.
"""

from .chain import Certificate, LinkStep, verify
from .hypotheses import check_complex_route, check_ring_implication, check_synthesis_preconditions
from .polycore import IntPoly, NatPoly, RatPoly
from .search import bfs_search
from .synth import synthesize
from .treeexec import Bijection, PolyValue, Tree

__all__ = [
    "Bijection",
    "Certificate",
    "IntPoly",
    "LinkStep",
    "NatPoly",
    "PolyValue",
    "RatPoly",
    "Tree",
    "bfs_search",
    "check_complex_route",
    "check_ring_implication",
    "check_synthesis_preconditions",
    "synthesize",
    "verify",
]

__version__ = "0.1.0"
