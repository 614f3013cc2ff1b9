"""Polynomial-versus-exponential growth test for NFAs.

For a trim automaton the language grows polynomially exactly when every loop
language ``L_q`` (words leading from ``q`` back to ``q``) is contained in
``u*`` for a single word ``u``.  Each state is tested by taking one nonempty
loop word, reducing it to its primitive root ``z``, and checking whether
``L_q`` minus ``z*`` is empty with a product construction.  Total cost is
``O(n**3 + n**2 * t)``.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Union

from .automata import (
    Nfa,
    shortest_accepted_word,
    shortest_nonempty_loop_word,
    trim_map,
)
from .words import power_star_dfa, primitive_root

__all__ = [
    "Growth",
    "ExponentialWitness",
    "CommutativityCertificate",
    "Classification",
    "is_state_commutative",
    "classify",
    "witness_holds",
    "certificate_holds",
]


class Growth(enum.Enum):
    FINITE = "finite"
    POLYNOMIAL = "polynomial"
    EXPONENTIAL = "exponential"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ExponentialWitness:
    """Two non-commuting loop words at ``state`` plus a way in and out.

    Every word of ``prefix_v (word_x word_y | word_y word_x)^m suffix_v_prime``
    is accepted, and these are ``2**m`` distinct words of equal length.
    """

    state: int
    word_x: str
    word_y: str
    prefix_v: str
    suffix_v_prime: str

    def pump(self, m: int) -> list[str]:
        """All ``2**m`` words of the pumped family for exponent ``m``."""
        words = [self.prefix_v]
        for _ in range(m):
            xy, yx = self.word_x + self.word_y, self.word_y + self.word_x
            words = [w + xy for w in words] + [w + yx for w in words]
        return [w + self.suffix_v_prime for w in words]


@dataclass(frozen=True)
class CommutativityCertificate:
    """``L_state`` is contained in ``root*`` (``root`` empty: no nonempty loop)."""

    state: int
    root: str


StateVerdict = Union[CommutativityCertificate, ExponentialWitness]


@dataclass(frozen=True)
class Classification:
    """Result of :func:`classify`.

    State ids in ``witness`` and ``certificates`` refer to ``automaton``, the
    trimmed input; ``state_map`` sends original ids to trimmed ids.
    """

    growth: Growth
    witness: Optional[ExponentialWitness]
    certificates: tuple[CommutativityCertificate, ...]
    automaton: Nfa
    state_map: dict[int, int]


def is_state_commutative(a: Nfa, q: int) -> StateVerdict:
    """Decide whether the loop language of ``q`` is commutative.

    ``a`` must be trim.  Returns a certificate ``L_q <= root*`` or a witness
    that ``L_q`` holds two words with different primitive roots.
    """
    w = shortest_nonempty_loop_word(a, q)
    if w is None:
        return CommutativityCertificate(q, "")
    z = primitive_root(w).root
    other = _shortest_escape(a, q, power_star_dfa(z, a.symbols))
    if other is None:
        return CommutativityCertificate(q, z)
    # w is a shortest nonempty loop word and other is nonempty, so |w| <= |other|
    x, y = w, other
    if x + y == y + x:
        raise AssertionError(f"loop words {x!r} and {y!r} commute at state {q}")
    v = "" if q == a.start else shortest_accepted_word(a.with_ends(a.start, (q,)))
    v_prime = "" if q in a.finals else shortest_accepted_word(a.with_ends(q, a.finals))
    if v is None or v_prime is None:
        raise ValueError(f"state {q} is not accessible and co-accessible; trim first")
    return ExponentialWitness(q, x, y, v, v_prime)


def _shortest_escape(a: Nfa, q: int, outside) -> Optional[str]:
    """Shortest (then least) word of ``L_q`` accepted by ``outside``.

    Breadth-first search of the product of ``L_q`` with ``outside``, built
    lazily.  Each layer is a list of groups of pair states sharing one word,
    kept in lexicographic order of those words, so the first accepting pair
    found is reached by the least shortest word.
    """
    step = outside.step
    accepting = outside.finals
    out = a.out
    rank = a.rank
    first = (q, outside.start)
    seen = {first}
    layer = [("", [first])]
    while layer:
        following = []
        for word, group in layer:
            buckets: dict[str, list[tuple[int, int]]] = {}
            for p, s in group:
                for c, r in out[p]:
                    buckets.setdefault(c, []).append((r, step[(s, c)]))
            for c in sorted(buckets, key=rank.__getitem__):
                fresh = []
                for pair in buckets[c]:
                    if pair[0] == q and pair[1] in accepting:
                        return word + c
                    if pair not in seen:
                        seen.add(pair)
                        fresh.append(pair)
                if fresh:
                    following.append((word + c, fresh))
        layer = following
    return None


def classify(a: Nfa, parallel: bool = False) -> Classification:
    """Classify ``L(a)`` as polynomial or exponential growth.

    Finite languages (including the empty one) come back as ``POLYNOMIAL``;
    use :func:`langgrowth.order.polynomial_order` to separate them.  States
    are examined in increasing id order and the first failing state supplies
    the witness.  With ``parallel=True`` the per-state tests run on a thread
    pool; the reported result is the same as the sequential one.
    """
    trimmed, state_map = trim_map(a)
    states = range(trimmed.state_count)
    certificates = []
    if parallel and trimmed.state_count > 1:
        with ThreadPoolExecutor() as pool:
            verdicts = pool.map(lambda q: is_state_commutative(trimmed, q), states)
            return _collect(verdicts, trimmed, state_map)
    for q in states:
        verdict = is_state_commutative(trimmed, q)
        if isinstance(verdict, ExponentialWitness):
            return Classification(Growth.EXPONENTIAL, verdict, tuple(certificates), trimmed, state_map)
        certificates.append(verdict)
    return Classification(Growth.POLYNOMIAL, None, tuple(certificates), trimmed, state_map)


def _collect(verdicts, trimmed: Nfa, state_map: dict[int, int]) -> Classification:
    certificates = []
    for verdict in verdicts:  # in state order
        if isinstance(verdict, ExponentialWitness):
            return Classification(Growth.EXPONENTIAL, verdict, tuple(certificates), trimmed, state_map)
        certificates.append(verdict)
    return Classification(Growth.POLYNOMIAL, None, tuple(certificates), trimmed, state_map)


def witness_holds(a: Nfa, w: ExponentialWitness) -> bool:
    """Check a witness directly against ``a`` (the automaton it refers to)."""
    x, y = w.word_x, w.word_y
    if not x or not y or x + y == y + x:
        return False
    q = w.state
    if q not in a.run(w.prefix_v) or q not in a.run(x, q) or q not in a.run(y, q):
        return False
    if a.finals.isdisjoint(a.run(w.suffix_v_prime, q)):
        return False
    return a.accepts(w.prefix_v + x + y + w.suffix_v_prime) and a.accepts(
        w.prefix_v + y + x + w.suffix_v_prime
    )


def certificate_holds(a: Nfa, c: CommutativityCertificate) -> bool:
    """Re-verify ``L_q <= root*`` without the product machinery.

    Walks the pairs (state, offset into ``root``) reachable from ``(q, 0)``
    while reading a prefix of ``root root root ...``.  The inclusion fails
    iff some such walk returns to ``q`` mid-copy, or leaves the pattern on a
    transition from which ``q`` is still reachable.
    """
    q, z = c.state, c.root
    back = _reaches(a, q)
    if not z:
        return not any(p in back for _, p in a.out[q])
    seen = {(q, 0)}
    stack = [(q, 0)]
    while stack:
        p, i = stack.pop()
        if p == q and i:
            return False
        for c_, r in a.out[p]:
            if c_ != z[i]:
                if r in back:
                    return False
                continue
            nxt = (r, (i + 1) % len(z))
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return True


def _reaches(a: Nfa, target: int) -> set[int]:
    """States from which ``target`` is reachable (including ``target``)."""
    preds = [[] for _ in range(a.state_count)]
    for p, _, r in a.transitions:
        preds[r].append(p)
    seen = {target}
    stack = [target]
    while stack:
        r = stack.pop()
        for p in preds[r]:
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen
