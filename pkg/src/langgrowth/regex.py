"""A small regular-expression frontend.

Grammar: alternation ``|``, grouping ``( )``, postfix ``*`` ``+`` ``?`` and
implicit concatenation.  Any other symbol character is a literal, and ``\\``
makes a metacharacter literal.  Patterns compile via Thompson's construction
to an epsilon-NFA, which is then turned into an epsilon-free trim NFA with
bisimilar states merged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .automata import SYMBOL_CHARS, Nfa, trim

__all__ = [
    "RegexSyntaxError",
    "Literal",
    "Epsilon",
    "Concat",
    "Alt",
    "Star",
    "Plus",
    "Optional_",
    "parse_regex",
    "compile_regex",
    "regex_to_nfa",
]

METACHARACTERS = frozenset("|()*+?\\")


class RegexSyntaxError(ValueError):
    def __init__(self, offset: int, message: str):
        super().__init__(f"offset {offset}: {message}")
        self.offset = offset
        self.message = message


@dataclass(frozen=True)
class Literal:
    symbol: str


@dataclass(frozen=True)
class Epsilon:
    pass


@dataclass(frozen=True)
class Concat:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Alt:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Star:
    inner: "Node"


@dataclass(frozen=True)
class Plus:
    inner: "Node"


@dataclass(frozen=True)
class Optional_:
    inner: "Node"


Node = Union[Literal, Epsilon, Concat, Alt, Star, Plus, Optional_]


class _Parser:
    def __init__(self, pattern: str):
        self.text = pattern
        self.pos = 0

    def peek(self) -> Optional[str]:
        return self.text[self.pos] if self.pos < len(self.text) else None

    def parse(self) -> Node:
        node = self.alternation()
        if self.pos < len(self.text):
            # only an unmatched ')' can stop the top-level alternation early
            raise RegexSyntaxError(self.pos, "unmatched ')'")
        return node

    def alternation(self) -> Node:
        node = self.concatenation()
        while self.peek() == "|":
            self.pos += 1
            node = Alt(node, self.concatenation())
        return node

    def concatenation(self) -> Node:
        parts = []
        while self.peek() is not None and self.peek() not in "|)":
            parts.append(self.repetition())
        if not parts:
            return Epsilon()
        node = parts[0]
        for part in parts[1:]:
            node = Concat(node, part)
        return node

    def repetition(self) -> Node:
        node = self.atom()
        while self.peek() is not None and self.peek() in "*+?":
            op = self.text[self.pos]
            self.pos += 1
            node = {"*": Star, "+": Plus, "?": Optional_}[op](node)
        return node

    def atom(self) -> Node:
        c = self.peek()
        start = self.pos
        if c == "(":
            self.pos += 1
            node = self.alternation()
            if self.peek() != ")":
                raise RegexSyntaxError(self.pos, "expected ')'")
            self.pos += 1
            return node
        if c in ("*", "+", "?"):
            raise RegexSyntaxError(start, f"nothing to repeat before {c!r}")
        if c == "\\":
            self.pos += 1
            c = self.peek()
            if c is None:
                raise RegexSyntaxError(self.pos, "dangling escape")
            if c not in METACHARACTERS:
                raise RegexSyntaxError(self.pos, f"cannot escape {c!r}")
        if c not in SYMBOL_CHARS:
            raise RegexSyntaxError(self.pos, f"unsupported symbol {c!r}")
        self.pos += 1
        return Literal(c)


def parse_regex(pattern: str) -> Node:
    """Parse ``pattern``; errors carry the 0-based offset of the problem."""
    return _Parser(pattern).parse()


def _symbols_of(node: Node, acc: set[str]) -> set[str]:
    if isinstance(node, Literal):
        acc.add(node.symbol)
    elif isinstance(node, (Concat, Alt)):
        _symbols_of(node.left, acc)
        _symbols_of(node.right, acc)
    elif isinstance(node, (Star, Plus, Optional_)):
        _symbols_of(node.inner, acc)
    return acc


class _Thompson:
    """Epsilon-NFA under construction; fragments are (entry, exit) pairs."""

    def __init__(self):
        self.count = 0
        self.moves: list[tuple[int, str, int]] = []
        self.eps: list[list[int]] = []

    def state(self) -> int:
        self.eps.append([])
        self.count += 1
        return self.count - 1

    def build(self, node: Node) -> tuple[int, int]:
        if isinstance(node, Literal):
            s, f = self.state(), self.state()
            self.moves.append((s, node.symbol, f))
            return s, f
        if isinstance(node, Epsilon):
            s = self.state()
            return s, s
        if isinstance(node, Concat):
            s1, f1 = self.build(node.left)
            s2, f2 = self.build(node.right)
            self.eps[f1].append(s2)
            return s1, f2
        if isinstance(node, Alt):
            s, f = self.state(), self.state()
            for branch in (node.left, node.right):
                bs, bf = self.build(branch)
                self.eps[s].append(bs)
                self.eps[bf].append(f)
            return s, f
        s, f = self.state(), self.state()
        bs, bf = self.build(node.inner)
        self.eps[s].append(bs)
        self.eps[bf].append(f)
        if isinstance(node, (Star, Plus)):
            self.eps[bf].append(bs)
        if isinstance(node, (Star, Optional_)):
            self.eps[s].append(f)
        return s, f

    def closure(self, q: int) -> set[int]:
        seen = {q}
        todo = [q]
        while todo:
            for r in self.eps[todo.pop()]:
                if r not in seen:
                    seen.add(r)
                    todo.append(r)
        return seen


def compile_regex(ast: Node, symbols: Optional[str] = None) -> Nfa:
    """Epsilon-free trim NFA for ``ast``.

    ``symbols`` fixes the alphabet and its order; by default it is the set of
    symbols used in the pattern, sorted.
    """
    used = _symbols_of(ast, set())
    if symbols is None:
        symbols = "".join(sorted(used))
    elif not used <= set(symbols):
        raise ValueError(f"pattern uses symbols outside {symbols!r}")
    t = _Thompson()
    start, final = t.build(ast)
    by_source: dict[int, list[tuple[str, int]]] = {}
    for p, c, q in t.moves:
        by_source.setdefault(p, []).append((c, q))
    transitions = set()
    finals = set()
    for p in range(t.count):
        reach = t.closure(p)
        if final in reach:
            finals.add(p)
        for r in reach:
            for c, q in by_source.get(r, ()):
                transitions.add((p, c, q))
    nfa = trim(Nfa(t.count, symbols, frozenset(transitions), start, frozenset(finals)))
    return _merge_bisimilar(nfa)


def _merge_bisimilar(a: Nfa) -> Nfa:
    """Quotient by forward bisimulation, which preserves the language.

    Epsilon removal leaves several copies of states that loop back to the
    same place (one per alternative of a starred group); merging them gives
    each loop a single representative state.
    """
    n = a.state_count
    if n == 0:
        return a
    block = [int(q in a.finals) for q in range(n)]
    while True:
        signatures: dict[tuple, int] = {}
        refined = []
        for q in range(n):
            sig = (block[q], frozenset((c, block[r]) for c, r in a.out[q]))
            refined.append(signatures.setdefault(sig, len(signatures)))
        stable = len(signatures) == len(set(block))
        block = refined
        if stable:
            break
    # number blocks by their smallest member so the start keeps a low id
    first: dict[int, int] = {}
    for q in range(n):
        first.setdefault(block[q], len(first))
    new = [first[block[q]] for q in range(n)]
    transitions = frozenset((new[p], c, new[q]) for p, c, q in a.transitions)
    finals = frozenset(new[q] for q in a.finals)
    return Nfa(len(first), a.symbols, transitions, new[a.start], finals)


def regex_to_nfa(pattern: str, symbols: Optional[str] = None) -> Nfa:
    return compile_regex(parse_regex(pattern), symbols)
