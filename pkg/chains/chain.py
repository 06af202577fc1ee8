"""
Finite Markov chains, their directed metric and stationary law.

Updates: v0.1.0 - 2026-10-16 - Exact/float chains validated at construction.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from chains.arithmetic import (
    FLOAT_ROW_TOLERANCE,
    Scalar,
    exact_array,
    float_array,
    scaled_matrix,
    zeros_like_mode,
)
from errors import (
    DenominatorOverflowError,
    NegativeEntryError,
    NumericalFailure,
    ReducibleError,
    RowSumError,
    ChainValidationError,
)

logger = logging.getLogger(__name__)

EXACT = "exact"
FLOAT = "float"
DEFAULT_BIT_BUDGET = 4096
STATIONARY_RESIDUAL = 1e-12


@dataclass(frozen=True, slots=True, eq=False)
class Chain:
    """Validated stochastic matrix. Build instances with :func:`build_chain`."""

    P: np.ndarray
    mode: str
    labels: Optional[Tuple[str, ...]] = None
    meta: Mapping[str, Any] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return int(self.P.shape[0])

    @property
    def exact(self) -> bool:
        return self.mode == EXACT

    def row(self, x: int) -> np.ndarray:
        return self.P[x]

    def support(self) -> List[Tuple[int, int]]:
        """Ordered pairs x != y with P(x, y) > 0."""
        return [
            (x, y)
            for x in range(self.n)
            for y in range(self.n)
            if x != y and self.P[x, y] > 0
        ]

    def label(self, x: int) -> str:
        if self.labels is not None:
            return self.labels[x]
        return str(x)

    def zero(self) -> Scalar:
        return Fraction(0) if self.exact else 0.0

    def one(self) -> Scalar:
        return Fraction(1) if self.exact else 1.0

    def identity(self) -> np.ndarray:
        eye = zeros_like_mode((self.n, self.n), self.exact)
        for x in range(self.n):
            eye[x, x] = self.one()
        return eye

    def as_float(self) -> "Chain":
        """Float copy of the chain (identity when already float)."""
        if not self.exact:
            return self
        return build_chain(float_array(self.P), mode=FLOAT, labels=self.labels, meta=self.meta)


@dataclass(frozen=True, slots=True, eq=False)
class DirectedMetric:
    """Matrix of directed graph distances d(x, y) and their maximum."""

    d: np.ndarray
    diam: int

    @property
    def n(self) -> int:
        return int(self.d.shape[0])

    def __call__(self, x: int, y: int) -> int:
        return int(self.d[x, y])

    def neighbours(self) -> List[Tuple[int, int]]:
        """Ordered pairs at distance one."""
        rows, cols = np.nonzero(self.d == 1)
        return sorted(zip(rows.tolist(), cols.tolist()))


@dataclass(frozen=True, slots=True, eq=False)
class StationaryDist:
    """Invariant probability vector pi with pi P = pi."""

    pi: np.ndarray
    mode: str

    @property
    def n(self) -> int:
        return int(self.pi.shape[0])

    def mass(self, states: Sequence[int]) -> Scalar:
        total: Scalar = Fraction(0) if self.mode == EXACT else 0.0
        for x in states:
            total += self.pi[x]
        return total


def _freeze(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def build_chain(
    matrix: Any,
    mode: str = EXACT,
    labels: Optional[Sequence[str]] = None,
    meta: Optional[Mapping[str, Any]] = None,
) -> Chain:
    """Validate a transition matrix and wrap it as an immutable :class:`Chain`.

    Exact entries may be Fractions, ints or "p/q" strings; floats given in exact
    mode are read through their decimal repr. Validation order: shape,
    non-negativity, row sums, irreducibility.
    """
    if mode not in (EXACT, FLOAT):
        raise ChainValidationError(f"unknown arithmetic mode {mode!r}")

    raw = np.asarray(matrix, dtype=object)
    if raw.ndim != 2 or raw.shape[0] != raw.shape[1] or raw.shape[0] == 0:
        raise ChainValidationError(f"transition matrix must be square and non-empty, got shape {raw.shape}")

    try:
        P = exact_array(raw) if mode == EXACT else float_array(raw)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ChainValidationError(f"unparseable matrix entry: {exc}") from exc

    n = P.shape[0]
    if mode == FLOAT and not np.all(np.isfinite(P)):
        raise ChainValidationError("transition matrix contains non-finite entries")

    for x in range(n):
        for y in range(n):
            if P[x, y] < 0:
                raise NegativeEntryError(x, y, P[x, y])

    for x in range(n):
        total = sum(P[x], Fraction(0)) if mode == EXACT else float(np.sum(P[x]))
        if mode == EXACT and total != 1:
            raise RowSumError(x, total)
        if mode == FLOAT and abs(total - 1.0) > FLOAT_ROW_TOLERANCE:
            raise RowSumError(x, total)

    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from((x, y) for x in range(n) for y in range(n) if x != y and P[x, y] > 0)
    if not nx.is_strongly_connected(graph):
        components = nx.number_strongly_connected_components(graph)
        raise ReducibleError(f"support digraph has {components} strongly connected components")

    label_tuple: Optional[Tuple[str, ...]] = None
    if labels is not None:
        label_tuple = tuple(str(label) for label in labels)
        if len(label_tuple) != n:
            raise ChainValidationError(f"expected {n} labels, got {len(label_tuple)}")

    return Chain(P=_freeze(P), mode=mode, labels=label_tuple, meta=dict(meta or {}))


def support_graph(chain: Chain) -> nx.DiGraph:
    """Support digraph without self-loops."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(chain.n))
    graph.add_edges_from(chain.support())
    return graph


def directed_metric(chain: Chain) -> DirectedMetric:
    """Directed distances by breadth-first search from every state."""
    graph = support_graph(chain)
    n = chain.n
    d = np.zeros((n, n), dtype=np.int64)
    for source, lengths in nx.all_pairs_shortest_path_length(graph):
        for target, length in lengths.items():
            d[source, target] = length
    diam = int(d.max()) if n else 0
    return DirectedMetric(d=_freeze(d), diam=diam)


def _solve_exact(A: List[List[Fraction]], b: List[Fraction]) -> List[Fraction]:
    """Gauss-Jordan elimination over the rationals (A square, non-singular)."""
    n = len(A)
    rows = [list(A[i]) + [b[i]] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            raise ChainValidationError("stationary system is singular")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col][col]
        rows[col] = [value / lead for value in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * c for a, c in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


def stationary(chain: Chain) -> StationaryDist:
    """Unique invariant distribution; exact in rational mode, residual-checked in float mode."""
    n = chain.n
    if chain.exact:
        # (P^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
        A = [[chain.P[y, x] - (1 if x == y else 0) for y in range(n)] for x in range(n)]
        A[n - 1] = [Fraction(1)] * n
        b = [Fraction(0)] * (n - 1) + [Fraction(1)]
        pi = np.array(_solve_exact(A, b), dtype=object)
        if any(value <= 0 for value in pi) or list(pi.dot(chain.P)) != list(pi):
            raise NumericalFailure("exact stationary solve failed post-check")
        return StationaryDist(pi=_freeze(pi), mode=EXACT)

    A = np.append(chain.P.T - np.eye(n), np.ones((1, n)), axis=0)
    b = np.zeros(n + 1)
    b[-1] = 1.0
    pi, *_ = np.linalg.lstsq(A, b, rcond=None)
    residual = float(np.max(np.abs(pi @ chain.P - pi))) if n else 0.0
    if residual > STATIONARY_RESIDUAL or np.any(pi <= 0):
        raise NumericalFailure(f"stationary residual {residual:.3e} exceeds {STATIONARY_RESIDUAL}")
    pi = pi / pi.sum()
    return StationaryDist(pi=_freeze(pi), mode=FLOAT)


def p_min(chain: Chain) -> Scalar:
    """Smallest strictly positive transition probability."""
    return min(value for value in chain.P.ravel() if value > 0)


def is_lazy(chain: Chain) -> bool:
    """True iff every diagonal entry is at least 1/2 (exact comparison in rational mode)."""
    half: Scalar = Fraction(1, 2) if chain.exact else 0.5
    return all(chain.P[x, x] >= half for x in range(chain.n))


def lazify(chain: Chain) -> Chain:
    """Return (P + I) / 2 with the same labels; metadata records the lazification."""
    half: Scalar = Fraction(1, 2) if chain.exact else 0.5
    lazy = (chain.P + chain.identity()) * half
    meta: Dict[str, Any] = dict(chain.meta)
    meta["lazified"] = True
    return build_chain(lazy, mode=chain.mode, labels=chain.labels, meta=meta)


def is_reversible(chain: Chain, dist: StationaryDist) -> bool:
    """Detailed balance pi(x)P(x,y) = pi(y)P(y,x), exact in rational mode."""
    pi = dist.pi
    for x in range(chain.n):
        for y in range(x + 1, chain.n):
            forward = pi[x] * chain.P[x, y]
            backward = pi[y] * chain.P[y, x]
            if chain.exact:
                if forward != backward:
                    return False
            elif abs(forward - backward) > FLOAT_ROW_TOLERANCE * max(1.0, abs(forward)):
                return False
    return True


def matrix_power_row(chain: Chain, x: int, t: int, *, bit_budget: int = DEFAULT_BIT_BUDGET) -> np.ndarray:
    """Row x of P^t by repeated vector-matrix products.

    Exact mode keeps integer numerators over D^t and raises
    :class:`DenominatorOverflowError` once D^t would exceed ``bit_budget`` bits.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    if not 0 <= x < chain.n:
        raise IndexError(f"state {x} out of range for n = {chain.n}")

    if not chain.exact:
        vector = np.zeros(chain.n)
        vector[x] = 1.0
        for _ in range(t):
            vector = vector @ chain.P
        return vector

    M, D = scaled_matrix(chain.P)
    vector = np.array([0] * chain.n, dtype=object)
    vector[x] = 1
    scale = 1
    for step in range(1, t + 1):
        bits = (scale * D).bit_length()
        if bits > bit_budget:
            raise DenominatorOverflowError(step, bits, bit_budget)
        vector = vector.dot(M)
        scale *= D
    return np.array([Fraction(int(value), scale) for value in vector], dtype=object)
