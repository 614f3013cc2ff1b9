"""Primitive roots of words and the complement-of-``z*`` recognizer."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .automata import Dfa

__all__ = ["PrimitiveRoot", "failure_function", "primitive_root", "power_star_dfa"]


@dataclass(frozen=True)
class PrimitiveRoot:
    root: str
    exponent: int

    def expand(self) -> str:
        return self.root * self.exponent


def failure_function(w: str) -> list[int]:
    """Knuth-Morris-Pratt border table.

    ``fail[i]`` is the length of the longest proper border of ``w[:i + 1]``.
    """
    fail = [0] * len(w)
    k = 0
    for i in range(1, len(w)):
        while k and w[i] != w[k]:
            k = fail[k - 1]
        if w[i] == w[k]:
            k += 1
        fail[i] = k
    return fail


def primitive_root(w: str) -> PrimitiveRoot:
    """Shortest ``z`` with ``w == z * k``, found in linear time.

    The smallest period of ``w`` is ``len(w) - border`` where ``border`` is
    the longest proper border; it yields the root exactly when it divides
    ``len(w)``, and otherwise ``w`` is primitive.

    >>> primitive_root("aabaab")
    PrimitiveRoot(root='aab', exponent=2)
    """
    if not w:
        raise ValueError("the empty word has no primitive root")
    n = len(w)
    period = n - failure_function(w)[-1]
    if n % period:
        return PrimitiveRoot(w, 1)
    return PrimitiveRoot(w[:period], n // period)


@lru_cache(maxsize=4096)
def power_star_dfa(z: str, symbols: str) -> Dfa:
    """Total DFA over ``symbols`` accepting every word *not* in ``z*``.

    States ``0 .. len(z) - 1`` track the position inside the current copy of
    ``z``; state ``len(z)`` is an accepting sink entered on the first
    mismatch.  Only state 0 (a whole number of copies read) rejects.
    """
    if not z:
        raise ValueError("z must be nonempty")
    missing = set(z) - set(symbols)
    if missing:
        raise ValueError(f"symbols {sorted(missing)} of z are not in the symbol set")
    k = len(z)
    sink = k
    transitions = []
    for i, expected in enumerate(z):
        for c in symbols:
            transitions.append((i, c, (i + 1) % k if c == expected else sink))
    for c in symbols:
        transitions.append((sink, c, sink))
    return Dfa(k + 1, symbols, frozenset(transitions), 0, frozenset(range(1, k + 1)))
