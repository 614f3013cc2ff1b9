"""Explicit finite automata and the graph routines the growth algorithms rely on.

States are the integers ``0 .. state_count - 1``.  Symbols are single
printable ASCII characters (no whitespace, no ``#``); words are plain
``str`` values.  Automata are immutable, and every operation here returns a
new automaton rather than modifying its input.

A DFA is *partial*: a missing ``(state, symbol)`` transition rejects.
"""

from __future__ import annotations

import re
import string
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

__all__ = [
    "SYMBOL_CHARS",
    "Nfa",
    "Dfa",
    "Condensation",
    "StateBudgetExceeded",
    "AutomatonFormatError",
    "trim",
    "trim_map",
    "accepts_empty_language",
    "shortest_accepted_word",
    "loop_language",
    "shortest_nonempty_loop_word",
    "intersect",
    "strongly_connected_components",
    "scc_decomposition",
    "determinize",
    "parse_automaton",
    "format_automaton",
    "DEFAULT_STATE_BUDGET",
]

SYMBOL_CHARS = frozenset(
    c for c in string.printable if c not in string.whitespace and c != "#"
)

DEFAULT_STATE_BUDGET = 1_000_000


class StateBudgetExceeded(RuntimeError):
    """Raised when subset construction would create too many states."""

    def __init__(self, budget: int):
        super().__init__(f"subset construction exceeded {budget} states")
        self.budget = budget


class AutomatonFormatError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


Transition = tuple[int, str, int]


@dataclass(frozen=True)
class Nfa:
    """A nondeterministic finite automaton without epsilon transitions.

    The automaton with ``state_count == 0`` is the canonical empty-language
    automaton; its ``start`` is the placeholder 0.
    """

    state_count: int
    symbols: str
    transitions: frozenset[Transition]
    start: int
    finals: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if not isinstance(self.symbols, str):
            object.__setattr__(self, "symbols", "".join(self.symbols))
        if not isinstance(self.transitions, frozenset):
            object.__setattr__(self, "transitions", frozenset(tuple(t) for t in self.transitions))
        if not isinstance(self.finals, frozenset):
            object.__setattr__(self, "finals", frozenset(self.finals))
        n = self.state_count
        if n < 0:
            raise ValueError("state_count must be nonnegative")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"duplicate symbols in {self.symbols!r}")
        bad = [c for c in self.symbols if c not in SYMBOL_CHARS]
        if bad:
            raise ValueError(f"unsupported symbols {bad!r}")
        if n == 0:
            if self.start != 0 or self.finals or self.transitions:
                raise ValueError("a 0-state automaton has start 0, no finals and no transitions")
            return
        if not 0 <= self.start < n:
            raise ValueError(f"start state {self.start} out of range")
        for q in self.finals:
            if not 0 <= q < n:
                raise ValueError(f"final state {q} out of range")
        alphabet = set(self.symbols)
        for p, c, q in self.transitions:
            if not (0 <= p < n and 0 <= q < n):
                raise ValueError(f"transition {(p, c, q)} out of range")
            if c not in alphabet:
                raise ValueError(f"transition {(p, c, q)} uses unknown symbol")

    @classmethod
    def empty(cls, symbols: str = "") -> "Nfa":
        return cls(0, symbols, frozenset(), 0, frozenset())

    @classmethod
    def _trusted(cls, n, symbols, transitions, start, finals, out=None):
        # internal constructor for results that are valid by construction
        obj = object.__new__(cls)
        set_ = object.__setattr__
        set_(obj, "state_count", n)
        set_(obj, "symbols", symbols)
        set_(obj, "transitions", transitions)
        set_(obj, "start", start)
        set_(obj, "finals", finals)
        if out is not None:
            obj.__dict__["out"] = out
        return obj

    @cached_property
    def rank(self) -> dict[str, int]:
        """Position of each symbol in the declared order."""
        return {c: i for i, c in enumerate(self.symbols)}

    @cached_property
    def out(self) -> tuple[tuple[tuple[str, int], ...], ...]:
        """Outgoing ``(symbol, target)`` pairs per state, in symbol order."""
        rank = self.rank
        buckets: list[list[tuple[int, int, str]]] = [[] for _ in range(self.state_count)]
        for p, c, q in self.transitions:
            buckets[p].append((rank[c], q, c))
        result = []
        for b in buckets:
            b.sort()
            result.append(tuple((c, q) for _, q, c in b))
        return tuple(result)

    @cached_property
    def into(self) -> tuple[tuple[int, ...], ...]:
        """Predecessor states of each state (with repetition)."""
        preds: list[list[int]] = [[] for _ in range(self.state_count)]
        for p, _, q in self.transitions:
            preds[q].append(p)
        return tuple(tuple(x) for x in preds)

    @cached_property
    def delta(self) -> dict[tuple[int, str], tuple[int, ...]]:
        table: dict[tuple[int, str], list[int]] = {}
        for p, edges in enumerate(self.out):
            for c, q in edges:
                table.setdefault((p, c), []).append(q)
        return {k: tuple(v) for k, v in table.items()}

    @property
    def transition_count(self) -> int:
        return len(self.transitions)

    def is_deterministic(self) -> bool:
        return all(len(v) == 1 for v in self.delta.values())

    def run(self, word: str, start: Optional[int] = None) -> frozenset[int]:
        """Set of states reachable from ``start`` (default: the start state) on ``word``."""
        if self.state_count == 0:
            return frozenset()
        current = {self.start if start is None else start}
        delta = self.delta
        for c in word:
            nxt: set[int] = set()
            for p in current:
                nxt.update(delta.get((p, c), ()))
            if not nxt:
                return frozenset()
            current = nxt
        return frozenset(current)

    def accepts(self, word: str) -> bool:
        return not self.finals.isdisjoint(self.run(word))

    def with_ends(self, start: int, finals: Iterable[int]) -> "Nfa":
        """Same transition graph, different start and final states."""
        finals = frozenset(finals)
        n = self.state_count
        if not 0 <= start < n or any(not 0 <= q < n for q in finals):
            raise ValueError("start or final state out of range")
        other = type(self)._trusted(n, self.symbols, self.transitions, start, finals)
        for key in ("rank", "out", "into", "delta", "step"):
            if key in self.__dict__:
                other.__dict__[key] = self.__dict__[key]
        return other


@dataclass(frozen=True)
class Dfa(Nfa):
    """A partial deterministic automaton: at most one move per (state, symbol)."""

    def __post_init__(self):
        super().__post_init__()
        seen: set[tuple[int, str]] = set()
        for p, c, _ in self.transitions:
            if (p, c) in seen:
                raise ValueError(f"state {p} has two transitions on {c!r}")
            seen.add((p, c))

    @classmethod
    def from_nfa(cls, a: Nfa) -> "Dfa":
        """Reinterpret a deterministic Nfa as a Dfa (validated)."""
        return cls(a.state_count, a.symbols, a.transitions, a.start, a.finals)

    @cached_property
    def step(self) -> dict[tuple[int, str], int]:
        return {(p, c): q for p, c, q in self.transitions}


# ---------------------------------------------------------------------------
# reachability and trimming


def _forward(a: Nfa, sources: Iterable[int]) -> set[int]:
    seen = set(sources)
    stack = list(seen)
    out = a.out
    while stack:
        p = stack.pop()
        for _, q in out[p]:
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return seen


def _backward(a: Nfa, targets: Iterable[int]) -> set[int]:
    preds = a.into
    seen = set(targets)
    stack = list(seen)
    while stack:
        q = stack.pop()
        for p in preds[q]:
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def _restrict(a: Nfa, keep: Sequence[int]) -> tuple[Nfa, dict[int, int]]:
    mapping = {old: new for new, old in enumerate(keep)}
    if not mapping:
        return type(a).empty(a.symbols), mapping
    transitions = frozenset(
        (mapping[p], c, mapping[q])
        for p, c, q in a.transitions
        if p in mapping and q in mapping
    )
    finals = frozenset(mapping[q] for q in a.finals if q in mapping)
    return type(a)(len(keep), a.symbols, transitions, mapping[a.start], finals), mapping


def trim_map(a: Nfa) -> tuple[Nfa, dict[int, int]]:
    """Trim ``a`` and also return the old-id -> new-id map of surviving states.

    Surviving states keep their relative order.  If the language is empty the
    result is the 0-state automaton.
    """
    if a.state_count == 0:
        return a, {}
    useful = _forward(a, [a.start]) & _backward(a, a.finals)
    if len(useful) == a.state_count:
        return a, {q: q for q in range(a.state_count)}
    return _restrict(a, sorted(useful))


def trim(a: Nfa) -> Nfa:
    """Keep exactly the states that are accessible and co-accessible."""
    return trim_map(a)[0]


# ---------------------------------------------------------------------------
# shortest words


def accepts_empty_language(a: Nfa) -> bool:
    if a.state_count == 0 or not a.finals:
        return True
    return a.finals.isdisjoint(_forward(a, [a.start]))


def _distances_to(a: Nfa, targets: Iterable[int]) -> dict[int, int]:
    """Length of a shortest path from each state into ``targets``."""
    preds = a.into
    dist = {q: 0 for q in targets}
    queue = deque(dist)
    while queue:
        q = queue.popleft()
        d = dist[q] + 1
        for p in preds[q]:
            if p not in dist:
                dist[p] = d
                queue.append(p)
    return dist


def _least_word(a: Nfa, frontier: list[int], dist: dict[int, int]) -> str:
    # every state in frontier is at the same distance; at each step take the
    # smallest symbol that still leads one step closer from some state in it
    out = a.out
    letters = []
    remaining = dist[frontier[0]]
    while remaining:
        remaining -= 1
        best = None
        following: set[int] = set()
        for p in frontier:
            for c, q in out[p]:
                if dist.get(q) != remaining:
                    continue
                r = a.rank[c]
                if best is None or r < best:
                    best = r
                    following = {q}
                elif r == best:
                    following.add(q)
        letters.append(a.symbols[best])
        frontier = list(following)
    return "".join(letters)


def shortest_accepted_word(a: Nfa) -> Optional[str]:
    """A shortest accepted word, ties broken lexicographically by symbol order.

    Returns ``None`` when the language is empty.
    """
    if a.state_count == 0:
        return None
    dist = _distances_to(a, a.finals)
    if a.start not in dist:
        return None
    return _least_word(a, [a.start], dist)


def loop_language(a: Nfa, q: int) -> Nfa:
    """The automaton with ``q`` as both start and only final state."""
    if not 0 <= q < a.state_count:
        raise ValueError(f"state {q} out of range")
    return a.with_ends(q, (q,))


def shortest_nonempty_loop_word(a: Nfa, q: int) -> Optional[str]:
    """Shortest nonempty word leading from ``q`` back to ``q``, or ``None``.

    Ties are broken lexicographically by symbol order.
    """
    if not 0 <= q < a.state_count:
        raise ValueError(f"state {q} out of range")
    dist = _distances_to(a, (q,))
    steps = {r: dist[r] for _, r in a.out[q] if r in dist}
    if not steps:
        return None
    nearest = min(steps.values())
    first = min(a.rank[c] for c, r in a.out[q] if steps.get(r) == nearest)
    c = a.symbols[first]
    frontier = sorted({r for s, r in a.out[q] if s == c and steps.get(r) == nearest})
    return c + _least_word(a, frontier, dist)


# ---------------------------------------------------------------------------
# products


def intersect(a: Nfa, d: Dfa) -> Nfa:
    """Product automaton for ``L(a) & L(d)``, restricted to reachable pairs.

    The result uses ``a``'s symbol order; symbols of ``d`` that ``a`` does not
    have are dropped.  Pair states are numbered in breadth-first order.
    """
    if a.state_count == 0 or d.state_count == 0:
        return Nfa.empty(a.symbols)
    step = d.step
    out = a.out
    rank = a.rank
    first = (a.start, d.start)
    index = {first: 0}
    pairs = [first]
    transitions = []
    product_out = []
    i = 0
    while i < len(pairs):
        p, s = pairs[i]
        edges = []
        for c, q in out[p]:
            t = step.get((s, c))
            if t is None:
                continue
            key = (q, t)
            j = index.get(key)
            if j is None:
                j = index[key] = len(pairs)
                pairs.append(key)
            transitions.append((i, c, j))
            edges.append((c, j))
        if len(edges) > 1:
            # a's order is by original target; the product wants pair ids
            edges.sort(key=lambda e: (rank[e[0]], e[1]))
        product_out.append(tuple(edges))
        i += 1
    finals = frozenset(
        k for k, (p, s) in enumerate(pairs) if p in a.finals and s in d.finals
    )
    return Nfa._trusted(len(pairs), a.symbols, frozenset(transitions), 0, finals, tuple(product_out))



# ---------------------------------------------------------------------------
# strongly connected components


def strongly_connected_components(n: int, successors: Sequence[Iterable[int]]) -> list[list[int]]:
    """Tarjan's algorithm, iterative.

    Returns the components in topological order of the condensation: every
    edge between different components goes from an earlier component to a
    later one.  Members of each component are sorted.
    """
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    result: list[list[int]] = []
    counter = 0
    succ = [list(s) for s in successors]
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    component.append(w)
                    if w == v:
                        break
                result.append(sorted(component))
    result.reverse()
    return result


@dataclass(frozen=True)
class Condensation:
    """SCC partition plus the DAG of components.

    ``components`` are listed in topological order, so every entry of
    ``edges`` satisfies ``source < target``.
    """

    components: tuple[tuple[int, ...], ...]
    component_of: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    internal_transitions: tuple[int, ...]

    def is_nontrivial(self, i: int) -> bool:
        """True when component ``i`` carries a cycle (a self-loop counts)."""
        return self.internal_transitions[i] > 0


def scc_decomposition(a: Nfa) -> Condensation:
    succ = [sorted({q for _, q in edges}) for edges in a.out]
    components = strongly_connected_components(a.state_count, succ)
    component_of = [0] * a.state_count
    for i, members in enumerate(components):
        for q in members:
            component_of[q] = i
    internal = [0] * len(components)
    edges = set()
    for p, _, q in a.transitions:
        cp, cq = component_of[p], component_of[q]
        if cp == cq:
            internal[cp] += 1
        else:
            edges.add((cp, cq))
    return Condensation(
        tuple(tuple(c) for c in components),
        tuple(component_of),
        tuple(sorted(edges)),
        tuple(internal),
    )


# ---------------------------------------------------------------------------
# subset construction


def determinize(a: Nfa, max_states: int = DEFAULT_STATE_BUDGET) -> Dfa:
    """Subset construction followed by trimming.

    The number of subsets can be exponential in ``a.state_count``;
    ``StateBudgetExceeded`` is raised once more than ``max_states`` subsets
    have been discovered.
    """
    if a.state_count == 0:
        return Dfa.empty(a.symbols)
    symbols = a.symbols
    rank = a.rank
    moves = [[0] * len(symbols) for _ in range(a.state_count)]
    for p, c, q in a.transitions:
        moves[p][rank[c]] |= 1 << q
    final_mask = 0
    for q in a.finals:
        final_mask |= 1 << q

    first = 1 << a.start
    index = {first: 0}
    subsets = [first]
    transitions = []
    out = []
    preds: list[list[int]] = [[]]
    i = 0
    while i < len(subsets):
        subset = subsets[i]
        members = [q for q in range(a.state_count) if subset >> q & 1]
        edges = []
        for k, c in enumerate(symbols):
            target = 0
            for q in members:
                target |= moves[q][k]
            if not target:
                continue
            j = index.get(target)
            if j is None:
                if len(subsets) >= max_states:
                    raise StateBudgetExceeded(max_states)
                j = index[target] = len(subsets)
                subsets.append(target)
                preds.append([])
            transitions.append((i, c, j))
            edges.append((c, j))
            preds[j].append(i)
        out.append(tuple(edges))
        i += 1
    finals = frozenset(k for k, s in enumerate(subsets) if s & final_mask)
    dfa = Dfa._trusted(len(subsets), symbols, frozenset(transitions), 0, finals, tuple(out))
    # every subset is reachable, so trimming only has to drop dead subsets
    live = set(finals)
    stack = list(live)
    while stack:
        for p in preds[stack.pop()]:
            if p not in live:
                live.add(p)
                stack.append(p)
    if len(live) == dfa.state_count:
        return dfa
    if 0 not in live:
        return Dfa.empty(symbols)
    return _restrict(dfa, sorted(live))[0]


# ---------------------------------------------------------------------------
# text format

_HEADER = re.compile(r"^(states|symbols|start|finals|deterministic):(.*)$")
_TRANSITION = re.compile(r"^(\d+) (\S) (\d+)$")


def parse_automaton(text: str) -> Nfa:
    """Parse the line-oriented automaton format.

    Returns a ``Dfa`` when the file declares ``deterministic: true`` (the
    determinism invariant is then checked), an ``Nfa`` otherwise.
    """
    headers: dict[str, tuple[int, str]] = {}
    transitions: list[tuple[int, Transition]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _HEADER.match(line)
        if m:
            key, value = m.group(1), m.group(2).strip()
            if key in headers:
                raise AutomatonFormatError(lineno, f"duplicate {key!r} line")
            headers[key] = (lineno, value)
            continue
        m = _TRANSITION.match(line)
        if not m:
            raise AutomatonFormatError(lineno, f"cannot parse {raw.strip()!r}")
        transitions.append((lineno, (int(m.group(1)), m.group(2), int(m.group(3)))))

    for key in ("states", "symbols", "start", "finals"):
        if key not in headers:
            raise AutomatonFormatError(0, f"missing {key!r} line")

    def integer(key: str) -> int:
        lineno, value = headers[key]
        if not value.isdigit():
            raise AutomatonFormatError(lineno, f"{key} must be a nonnegative integer")
        return int(value)

    n = integer("states")
    start = integer("start")
    symbols = headers["symbols"][1]
    lineno, value = headers["finals"]
    try:
        finals = [int(tok) for tok in value.split()]
    except ValueError:
        raise AutomatonFormatError(lineno, "finals must be integers") from None
    deterministic = False
    if "deterministic" in headers:
        lineno, value = headers["deterministic"]
        if value not in ("true", "false"):
            raise AutomatonFormatError(lineno, "deterministic must be true or false")
        deterministic = value == "true"

    seen: set[Transition] = set()
    for lineno, t in transitions:
        if t in seen:
            raise AutomatonFormatError(lineno, f"duplicate transition {t}")
        seen.add(t)
    cls = Dfa if deterministic else Nfa
    try:
        return cls(n, symbols, frozenset(seen), start, frozenset(finals))
    except ValueError as exc:
        raise AutomatonFormatError(0, str(exc)) from None


def format_automaton(a: Nfa) -> str:
    """Canonical text form; ``parse_automaton`` inverts it exactly."""
    lines = [
        f"states: {a.state_count}",
        f"symbols: {a.symbols}",
        f"start: {a.start}",
        "finals: " + " ".join(str(q) for q in sorted(a.finals)),
    ]
    lines[3] = lines[3].rstrip()
    if isinstance(a, Dfa):
        lines.append("deterministic: true")
    for p, edges in enumerate(a.out):
        for c, q in edges:
            lines.append(f"{p} {c} {q}")
    return "\n".join(lines) + "\n"
