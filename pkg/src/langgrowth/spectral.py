"""Adjacency matrices of automata and their spectral radius class.

The spectral radius ``r`` of a nonnegative integer matrix is either 0 or at
least 1.  Viewing the matrix as a multigraph (``a[i][j]`` parallel edges
from ``i`` to ``j``), ``r = 0`` iff the graph is acyclic, and ``r > 1`` iff
some strongly connected component contains two distinct cycles.  When
``r = 1``, ``max(A**m)`` grows like ``m**(d - 1)`` where ``d`` is the largest
number of cyclic components met by one path of the condensation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .automata import Dfa, Nfa, strongly_connected_components

__all__ = [
    "AdjacencyMatrix",
    "SpectralKind",
    "SpectralClass",
    "GrowthLawReport",
    "UnsupportedSpectralClass",
    "MatrixFormatError",
    "adjacency_of",
    "matrix_power",
    "spectral_class",
    "verify_growth_law",
    "exponential_rate",
    "estimate_spectral_radius",
    "matrix_to_dfa",
    "parse_matrix",
    "format_matrix",
]


class UnsupportedSpectralClass(ValueError):
    pass


class MatrixFormatError(ValueError):
    pass


@dataclass(frozen=True)
class AdjacencyMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix must be square")
            if any(x < 0 for x in row):
                raise ValueError("entries must be nonnegative")

    @property
    def order(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> "AdjacencyMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def max_entry(self) -> int:
        return max((max(row) for row in self.rows), default=0)

    def __matmul__(self, other: "AdjacencyMatrix") -> "AdjacencyMatrix":
        if self.order != other.order:
            raise ValueError("order mismatch")
        cols = list(zip(*other.rows))
        return AdjacencyMatrix(
            tuple(
                tuple(sum(x * y for x, y in zip(row, col) if x) for col in cols)
                for row in self.rows
            )
        )

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]


def adjacency_of(a: Nfa) -> AdjacencyMatrix:
    """``entry[i][j]`` is the number of transitions from state ``i`` to ``j``."""
    n = a.state_count
    rows = [[0] * n for _ in range(n)]
    for p, _, q in a.transitions:
        rows[p][q] += 1
    return AdjacencyMatrix(tuple(tuple(r) for r in rows))


def matrix_power(a: AdjacencyMatrix, m: int) -> AdjacencyMatrix:
    """Exact ``a**m`` by repeated squaring."""
    if m < 0:
        raise ValueError("exponent must be nonnegative")
    result = AdjacencyMatrix.identity(a.order)
    base = a
    while m:
        if m & 1:
            result = result @ base
        m >>= 1
        if m:
            base = base @ base
    return result


class SpectralKind(enum.Enum):
    ZERO = "zero"
    ONE = "one"
    GREATER_THAN_ONE = "greater_than_one"


@dataclass(frozen=True)
class SpectralClass:
    kind: SpectralKind
    dominating_d: Optional[int] = None

    def __str__(self):
        if self.kind is SpectralKind.ZERO:
            return "Zero"
        if self.kind is SpectralKind.ONE:
            return f"One(d={self.dominating_d})"
        return "GreaterThanOne"


def spectral_class(a: AdjacencyMatrix) -> SpectralClass:
    n = a.order
    succ = [[j for j in range(n) if a.rows[i][j]] for i in range(n)]
    components = strongly_connected_components(n, succ)
    comp = [0] * n
    for k, members in enumerate(components):
        for i in members:
            comp[i] = k
    cyclic = [False] * len(components)
    for k, members in enumerate(components):
        inside = set(members)
        for i in members:
            moves = sum(a.rows[i][j] for j in inside)
            if moves > 1:
                # two distinct closed walks through i
                return SpectralClass(SpectralKind.GREATER_THAN_ONE)
            if moves == 1:
                cyclic[k] = True
    if not any(cyclic):
        return SpectralClass(SpectralKind.ZERO)

    # longest chain of cyclic components, over every start component
    best = [int(c) for c in cyclic]
    for k in range(len(components) - 1, -1, -1):
        for i in components[k]:
            for j in succ[i]:
                if comp[j] != k:
                    best[k] = max(best[k], cyclic[k] + best[comp[j]])
    return SpectralClass(SpectralKind.ONE, max(best))


@dataclass(frozen=True)
class GrowthLawReport:
    """``values[m] = max(A**m) / m**(d - 1)`` for each sampled ``m``."""

    dominating_d: int
    values: dict[int, Fraction]

    def ratio(self, m: int) -> Fraction:
        return self.values[m]


def verify_growth_law(a: AdjacencyMatrix, m_lo: int, m_hi: int, ms: Optional[Sequence[int]] = None) -> GrowthLawReport:
    """Normalized maximum entries of ``A**m`` for ``r = 1`` matrices.

    Samples every ``m`` in ``[m_lo, m_hi]`` (or only ``ms`` when given).
    ``m = 0`` is skipped since ``m**(d - 1)`` vanishes there for ``d > 1``.
    """
    cls = spectral_class(a)
    if cls.kind is not SpectralKind.ONE:
        raise UnsupportedSpectralClass(f"growth law check needs r = 1, got {cls}")
    if m_lo > m_hi or m_lo < 0:
        raise ValueError("need 0 <= m_lo <= m_hi")
    d = cls.dominating_d
    wanted = sorted(set(ms)) if ms is not None else range(m_lo, m_hi + 1)
    wanted = [m for m in wanted if m >= 1]
    values: dict[int, Fraction] = {}
    if not wanted:
        return GrowthLawReport(d, values)
    current_m = wanted[0]
    power = matrix_power(a, current_m)
    for m in wanted:
        if m - current_m <= 8:
            for _ in range(m - current_m):
                power = power @ a
        else:
            power = power @ matrix_power(a, m - current_m)
        current_m = m
        values[m] = Fraction(power.max_entry(), m ** (d - 1))
    return GrowthLawReport(d, values)


def exponential_rate(a: AdjacencyMatrix, m1: int, m2: int) -> float:
    """``(max(A**m2) / max(A**m1)) ** (1 / (m2 - m1))``, a lower-bound proxy for ``r``."""
    if not 0 <= m1 < m2:
        raise ValueError("need 0 <= m1 < m2")
    lo = matrix_power(a, m1).max_entry()
    hi = matrix_power(a, m2).max_entry()
    if lo == 0:
        return 0.0 if hi == 0 else math.inf
    return math.exp((math.log(hi) - math.log(lo)) / (m2 - m1)) if hi else 0.0


def estimate_spectral_radius(a: AdjacencyMatrix, iterations: int = 200) -> tuple[float, bool]:
    """Floating-point spectral radius by power iteration, ``(estimate, converged)``.

    The radius of ``a`` is the largest radius of its irreducible diagonal
    blocks (one per strongly connected component).  Each block ``B`` is
    iterated as ``B + I``: its Perron root ``r + 1`` is simple and strictly
    dominant, so the iteration converges geometrically even when ``B`` is
    periodic or ``a`` has repeated eigenvalues across blocks.  ``converged``
    requires every block's last two estimates to agree to ``1e-12``.
    """
    n = a.order
    succ = [[j for j in range(n) if a.rows[i][j]] for i in range(n)]
    best = 0.0
    converged = True
    for members in strongly_connected_components(n, succ):
        if len(members) == 1:
            best = max(best, float(a.rows[members[0]][members[0]]))
            continue
        block = [[float(a.rows[i][j]) + (i == j) for j in members] for i in members]
        x = [1.0] * len(members)
        last = prev = 0.0
        for _ in range(iterations):
            y = [sum(r * v for r, v in zip(row, x)) for row in block]
            prev, last = last, max(y)
            x = [v / last for v in y]
        best = max(best, last - 1.0)
        converged = converged and abs(last - prev) <= 1e-12 * last
    return best, converged


def matrix_to_dfa(a: AdjacencyMatrix, symbols: str) -> Dfa:
    """A DFA whose adjacency matrix is ``a``.

    Each state's outgoing edges get distinct symbols, taken in order from
    ``symbols``.  Every state is final and the start is state 0.
    """
    transitions = []
    for i, row in enumerate(a.rows):
        k = 0
        for j, count in enumerate(row):
            for _ in range(count):
                if k >= len(symbols):
                    raise ValueError(f"row {i} needs more than {len(symbols)} symbols")
                transitions.append((i, symbols[k], j))
                k += 1
    n = a.order
    if n == 0:
        return Dfa.empty(symbols)
    return Dfa(n, symbols, frozenset(transitions), 0, frozenset(range(n)))


def parse_matrix(text: str) -> AdjacencyMatrix:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("order:"):
        raise MatrixFormatError("first line must be 'order: <n>'")
    try:
        n = int(lines[0][len("order:"):].strip())
    except ValueError:
        raise MatrixFormatError("bad order line") from None
    body = lines[1:]
    if len(body) != n:
        raise MatrixFormatError(f"expected {n} rows, found {len(body)}")
    rows = []
    for k, line in enumerate(body):
        toks = line.split()
        if len(toks) != n or not all(t.isdigit() for t in toks):
            raise MatrixFormatError(f"row {k}: expected {n} nonnegative integers")
        rows.append(tuple(int(t) for t in toks))
    return AdjacencyMatrix(tuple(rows))


def format_matrix(a: AdjacencyMatrix) -> str:
    lines = [f"order: {a.order}"]
    lines.extend(" ".join(str(x) for x in row) for row in a.rows)
    return "\n".join(lines) + "\n"
