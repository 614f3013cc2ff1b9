"""Brute-force ground truth for the growth algorithms.

Nothing here reuses the classifier, the trimming code or the SCC routine of
:mod:`langgrowth.automata`; the point is to have a second, independent
derivation of every answer.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

from .automata import Dfa
from .classifier import Growth

__all__ = [
    "CountTable",
    "InsufficientData",
    "NonPolynomial",
    "count_words",
    "structural_growth_oracle",
    "degree_estimate",
]


class InsufficientData(ValueError):
    pass


class NonPolynomial(enum.Enum):
    """Marker returned by :func:`degree_estimate` for exponential-looking counts."""

    TOKEN = "non-polynomial"

    def __repr__(self):
        return "NonPolynomial"


@dataclass(frozen=True)
class CountTable:
    """``counts[m]`` is the number of accepted words of length ``m``."""

    counts: tuple[int, ...]

    def __getitem__(self, m: int) -> int:
        return self.counts[m]

    def __len__(self):
        return len(self.counts)

    def cumulative(self, m: int) -> int:
        return sum(self.counts[: m + 1])


def count_words(d: Dfa, max_len: int) -> CountTable:
    """Exact word counts for lengths ``0 .. max_len``.

    Counting paths only counts words when the automaton is deterministic, so
    nondeterministic input is rejected.
    """
    step: dict[int, list[int]] = {}
    seen = set()
    for p, c, q in d.transitions:
        if (p, c) in seen:
            raise ValueError("count_words needs a deterministic automaton")
        seen.add((p, c))
        step.setdefault(p, []).append(q)
    if d.state_count == 0:
        return CountTable((0,) * (max_len + 1))
    # ways[q] = number of words of the current length leading start -> q
    ways = {d.start: 1}
    counts = []
    for m in range(max_len + 1):
        counts.append(sum(n for q, n in ways.items() if q in d.finals))
        if m == max_len:
            break
        nxt: dict[int, int] = {}
        for p, n in ways.items():
            for q in step.get(p, ()):
                nxt[q] = nxt.get(q, 0) + n
        ways = nxt
    return CountTable(tuple(counts))


def _useful_states(d: Dfa) -> set[int]:
    fwd: dict[int, set[int]] = {}
    bwd: dict[int, set[int]] = {}
    for p, _, q in d.transitions:
        fwd.setdefault(p, set()).add(q)
        bwd.setdefault(q, set()).add(p)

    def closure(seeds, graph):
        seen = set(seeds)
        todo = list(seeds)
        while todo:
            for q in graph.get(todo.pop(), ()):
                if q not in seen:
                    seen.add(q)
                    todo.append(q)
        return seen

    if d.state_count == 0:
        return set()
    return closure([d.start], fwd) & closure(d.finals, bwd)


def _components(states: set[int], edges: dict[int, list[int]]) -> dict[int, int]:
    """Kosaraju: map each state to a component label."""
    order = []
    visited = set()
    for root in sorted(states):
        if root in visited:
            continue
        visited.add(root)
        stack = [(root, iter(edges.get(root, ())))]
        while stack:
            v, it = stack[-1]
            for w in it:
                if w not in visited:
                    visited.add(w)
                    stack.append((w, iter(edges.get(w, ()))))
                    break
            else:
                stack.pop()
                order.append(v)
    reverse: dict[int, list[int]] = {}
    for p, qs in edges.items():
        for q in qs:
            reverse.setdefault(q, []).append(p)
    label: dict[int, int] = {}
    for root in reversed(order):
        if root in label:
            continue
        label[root] = root
        todo = [root]
        while todo:
            v = todo.pop()
            for w in reverse.get(v, ()):
                if w not in label:
                    label[w] = root
                    todo.append(w)
    return label


def structural_growth_oracle(d: Dfa) -> Growth:
    """Growth class read off the cycle structure of a DFA.

    Restricted to useful states, the language is exponential iff some state
    has two moves that stay inside its strongly connected component, finite
    iff no component carries a cycle, and polynomial otherwise.
    """
    useful = _useful_states(d)
    edges: dict[int, list[int]] = {}
    for p, _, q in d.transitions:
        if p in useful and q in useful:
            edges.setdefault(p, []).append(q)
    label = _components(useful, edges)
    cyclic = False
    for p, qs in edges.items():
        inside = sum(1 for q in qs if label[q] == label[p])
        if inside >= 2:
            return Growth.EXPONENTIAL
        cyclic = cyclic or inside == 1
    return Growth.POLYNOMIAL if cyclic else Growth.FINITE


def degree_estimate(c: CountTable) -> Union[int, NonPolynomial]:
    """Rough polynomial degree from the doubling ratio of cumulative counts.

    With ``S(m) = counts[0] + ... + counts[m]`` the ratio ``S(64) / S(32)``
    is about ``2**(k + 1)`` for counts of order ``m**k``; the estimate is
    the rounded exponent minus one.  Summing smooths out lengths on which
    the count is zero for periodicity reasons.  Not a proof of anything.
    """
    if len(c) < 65:
        raise InsufficientData("need counts up to length 64")
    if not any(c[m] for m in range(32, 65)):
        raise InsufficientData("no accepted word with length in [32, 64]")
    ratio = c.cumulative(64) / c.cumulative(32)
    if ratio > 2 ** 10:
        return NonPolynomial.TOKEN
    return round(math.log2(ratio)) - 1
