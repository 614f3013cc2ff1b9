"""Exact order of polynomial growth for DFAs.

In a trim DFA of polynomial growth every cycle is disjoint from every other,
so each nontrivial strongly connected component is one simple cycle.
Contracting those cycles to *special* vertices leaves a DAG, and the growth
is ``Theta(m**(d - 1))`` where ``d`` is the largest number of special
vertices on a start-to-final path.  A path reaching that maximum spells out
a family ``x1 y1* x2 y2* ... xd yd* x(d+1)`` of accepted words.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Optional

from .automata import Dfa, scc_decomposition, trim

__all__ = [
    "NotPolynomialGrowth",
    "Vertex",
    "ContractedDag",
    "OrderKind",
    "OrderResult",
    "BoundedWitness",
    "contract_cycles",
    "max_special_path",
    "polynomial_order",
    "bounded_witness",
]


class NotPolynomialGrowth(ValueError):
    """A strongly connected component holds two distinct cycles."""

    def __init__(self, state: int):
        super().__init__(
            f"state {state} lies on two distinct cycles; the language grows exponentially"
        )
        self.state = state


@dataclass(frozen=True)
class Vertex:
    members: tuple[int, ...]
    special: bool
    final: bool
    start: bool
    cycle_word: Optional[str]


@dataclass(frozen=True)
class ContractedDag:
    """Vertices are stored in topological order; ``edges`` carry symbols."""

    dfa: Dfa
    vertices: tuple[Vertex, ...]
    vertex_of: tuple[int, ...]
    edges: tuple[tuple[int, str, int], ...]
    start: int

    @property
    def order(self) -> range:
        return range(len(self.vertices))


class OrderKind(enum.Enum):
    FINITE = "finite"
    DEGREE = "degree"


@dataclass(frozen=True)
class OrderResult:
    kind: OrderKind
    degree: Optional[int]
    special_count_d: int

    def __str__(self):
        return "finite" if self.kind is OrderKind.FINITE else f"degree {self.degree}"


@dataclass(frozen=True)
class BoundedWitness:
    """Words ``xs[0] ys[0]* xs[1] ys[1]* ... ys[-1]* xs[-1]``; ``len(xs) == len(ys) + 1``."""

    xs: tuple[str, ...]
    ys: tuple[str, ...]

    def word(self, exponents) -> str:
        exponents = tuple(exponents)
        if len(exponents) != len(self.ys):
            raise ValueError("need one exponent per cycle word")
        parts = [self.xs[0]]
        for y, e, x in zip(self.ys, exponents, self.xs[1:]):
            parts.append(y * e)
            parts.append(x)
        return "".join(parts)

    def words(self, max_exponent: int = 3):
        for exponents in itertools.product(range(max_exponent + 1), repeat=len(self.ys)):
            yield exponents, self.word(exponents)


def _require_trim(d: Dfa) -> None:
    if trim(d) is not d:
        raise ValueError("automaton must be trim")


def contract_cycles(d: Dfa) -> ContractedDag:
    """Collapse each cycle of a trim polynomial-growth DFA to a special vertex.

    Raises ``NotPolynomialGrowth`` if some strongly connected component is
    not a single simple cycle.
    """
    _require_trim(d)
    cond = scc_decomposition(d)
    inner_moves = [0] * d.state_count
    for p, _, q in d.transitions:
        if cond.component_of[p] == cond.component_of[q]:
            inner_moves[p] += 1
    vertices = []
    for i, members in enumerate(cond.components):
        special = cond.is_nontrivial(i)
        word = None
        if special:
            for q in members:
                if inner_moves[q] != 1:
                    raise NotPolynomialGrowth(q)
            word = _cycle_word(d, members[0], cond.component_of)
        vertices.append(
            Vertex(
                members=members,
                special=special,
                final=any(q in d.finals for q in members),
                start=d.start in members,
                cycle_word=word,
            )
        )
    edges = sorted(
        {
            (cond.component_of[p], c, cond.component_of[q])
            for p, c, q in d.transitions
            if cond.component_of[p] != cond.component_of[q]
        },
        key=lambda e: (e[0], e[2], d.rank[e[1]]),
    )
    start = cond.component_of[d.start] if d.state_count else 0
    return ContractedDag(d, tuple(vertices), cond.component_of, tuple(edges), start)


def _inner_move(d: Dfa, q: int, component_of) -> tuple[str, int]:
    for c, r in d.out[q]:
        if component_of[r] == component_of[q]:
            return c, r
    raise AssertionError(f"state {q} has no move inside its cycle")


def _cycle_word(d: Dfa, entry: int, component_of) -> str:
    """Label of the cycle read once around starting from ``entry``."""
    letters = []
    q = entry
    while True:
        c, q = _inner_move(d, q, component_of)
        letters.append(c)
        if q == entry:
            return "".join(letters)


def _inner_path(d: Dfa, src: int, dst: int, component_of) -> str:
    letters = []
    q = src
    while q != dst:
        c, q = _inner_move(d, q, component_of)
        letters.append(c)
    return "".join(letters)


def _best_paths(g: ContractedDag) -> list[Optional[int]]:
    """Most special vertices on a path from the start vertex to each vertex."""
    best: list[Optional[int]] = [None] * len(g.vertices)
    if not g.vertices:
        return best
    best[g.start] = int(g.vertices[g.start].special)
    for u, _, v in g.edges:  # sorted by source, which is a topological order
        if best[u] is None:
            continue
        cand = best[u] + g.vertices[v].special
        if best[v] is None or cand > best[v]:
            best[v] = cand
    return best


def max_special_path(g: ContractedDag) -> int:
    """Largest number of special vertices on a path from start to a final vertex."""
    best = _best_paths(g)
    values = [b for b, v in zip(best, g.vertices) if v.final and b is not None]
    return max(values, default=0)


def polynomial_order(d: Dfa) -> OrderResult:
    """Growth order of a DFA whose language grows polynomially.

    ``Finite`` when no accepting path meets a cycle, else ``degree = d - 1``
    meaning ``|L & Sigma**m|`` is ``Theta(m**degree)``.  The input is trimmed
    first.
    """
    dag = contract_cycles(trim(d))
    count = max_special_path(dag)
    if count == 0:
        return OrderResult(OrderKind.FINITE, None, 0)
    return OrderResult(OrderKind.DEGREE, count - 1, count)


def bounded_witness(d: Dfa) -> BoundedWitness:
    """Decomposition ``x1 y1* ... xd yd* x(d+1)`` along a path with ``d`` cycles.

    Each ``y`` is its cycle's word rotated to begin where the path enters the
    cycle; every exponent choice gives an accepted word.  Requires ``d >= 1``.
    """
    d = trim(d)
    g = contract_cycles(d)
    best = _best_paths(g)
    target = None
    for v, vertex in enumerate(g.vertices):
        if vertex.final and best[v] is not None and (target is None or best[v] > best[target]):
            target = v
    if target is None or best[target] == 0:
        raise ValueError("no accepting path passes through a cycle; the language is finite")

    # walk back along optimal edges, recording the transition used on each
    via: dict[int, tuple[int, str, int]] = {}
    comp = g.vertex_of
    for p, c, q in sorted(d.transitions, key=lambda t: (t[0], d.rank[t[1]], t[2])):
        u, v = comp[p], comp[q]
        if u == v or best[u] is None or v in via:
            continue
        if best[u] + g.vertices[v].special == best[v]:
            via[v] = (p, c, q)
    chain = [target]
    while chain[-1] != g.start:
        p, _, _ = via[chain[-1]]
        chain.append(comp[p])
    chain.reverse()

    xs: list[str] = []
    ys: list[str] = []
    pending = ""
    entry = d.start
    for i, v in enumerate(chain):
        vertex = g.vertices[v]
        if i + 1 < len(chain):
            exit_state, label, next_entry = via[chain[i + 1]]
        else:
            exit_state = _nearest_final(d, entry, comp)
            label, next_entry = "", None
        if vertex.special:
            xs.append(pending)
            ys.append(_cycle_word(d, entry, comp))
            pending = ""
        pending += _inner_path(d, entry, exit_state, comp) + label
        entry = next_entry
    xs.append(pending)
    return BoundedWitness(tuple(xs), tuple(ys))


def _nearest_final(d: Dfa, entry: int, comp) -> int:
    q = entry
    while q not in d.finals:
        _, q = _inner_move(d, q, comp)
    return q
