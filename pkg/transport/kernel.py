"""
Coupling kernel K((x, y), (u, v)) = chi_{x,y}(u, v) on V x V.

Off-diagonal rows hold good optimal couplings, diagonal rows the identity
coupling, so coupled walkers never split once they meet.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Tuple

import numpy as np

from chains.arithmetic import Scalar, to_float, zeros_like_mode
from chains.chain import Chain, DirectedMetric, is_lazy
from errors import HypothesisError
from transport.wasserstein import Coupling, good_optimal_coupling

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


@dataclass(frozen=True, slots=True, eq=False)
class CouplingKernel:
    n: int
    exact: bool
    couplings: Mapping[Pair, Coupling]

    def coupling(self, x: int, y: int) -> Coupling:
        return self.couplings[(x, y)]

    def index(self, x: int, y: int) -> int:
        return x * self.n + y

    def transitions(self, x: int, y: int) -> List[Tuple[Pair, Scalar]]:
        """Positive-probability moves from (x, y), in row-major order."""
        return self.couplings[(x, y)].support()

    def expected_distance(self, metric: DirectedMetric, x: int, y: int) -> Scalar:
        """E[d(X_1, Y_1) | X_0 = x, Y_0 = y]."""
        total: Scalar = self.couplings[(x, y)].chi[0, 0] * 0
        for (u, v), weight in self.transitions(x, y):
            total += weight * int(metric.d[u, v])
        return total

    def separation_curve(self, x: int, y: int, horizon: int) -> List[Scalar]:
        """P(X_t != Y_t) for t = 0..horizon, evaluated exactly on the pair chain."""
        size = self.n * self.n
        law = zeros_like_mode(size, self.exact)
        law[self.index(x, y)] = law[self.index(x, y)] + 1
        moves = {
            (a, b): [(self.index(u, v), weight) for (u, v), weight in self.transitions(a, b)]
            for a in range(self.n)
            for b in range(self.n)
        }
        diagonal = [self.index(a, a) for a in range(self.n)]
        curve: List[Scalar] = []
        for t in range(horizon + 1):
            met = sum((law[i] for i in diagonal), law[0] * 0)
            curve.append(1 - met)
            if t == horizon:
                break
            nxt = zeros_like_mode(size, self.exact)
            for (a, b), targets in moves.items():
                mass = law[self.index(a, b)]
                if mass == 0:
                    continue
                for target, weight in targets:
                    nxt[target] = nxt[target] + mass * weight
            law = nxt
        return curve

    def sampling_tables(self) -> Tuple[np.ndarray, np.ndarray]:
        """Float cumulative probabilities and target pair indices, padded per row."""
        size = self.n * self.n
        rows: Dict[int, List[Tuple[int, float]]] = {}
        for (a, b), coupling in self.couplings.items():
            rows[self.index(a, b)] = [
                (self.index(u, v), to_float(weight)) for (u, v), weight in coupling.support()
            ]
        width = max(len(entries) for entries in rows.values())
        cdf = np.ones((size, width))
        targets = np.zeros((size, width), dtype=np.int64)
        for state, entries in rows.items():
            cumulative = np.cumsum([weight for _, weight in entries])
            cumulative /= cumulative[-1]
            cdf[state, : len(entries)] = cumulative
            targets[state, : len(entries)] = [target for target, _ in entries]
            targets[state, len(entries):] = entries[-1][0]
        return cdf, targets


def coupling_kernel(chain: Chain, metric: DirectedMetric) -> CouplingKernel:
    """Assemble the kernel from good optimal couplings over all ordered pairs."""
    if not is_lazy(chain):
        raise HypothesisError("the coupling kernel is defined for lazy chains")
    couplings: Dict[Pair, Coupling] = {}
    for x in range(chain.n):
        for y in range(chain.n):
            if x == y:
                chi = zeros_like_mode((chain.n, chain.n), chain.exact)
                for u in range(chain.n):
                    chi[u, u] = chain.P[x, u]
                chi.setflags(write=False)
                couplings[(x, y)] = Coupling(
                    chi=chi,
                    source_marginal=np.array(chain.P[x]),
                    target_marginal=np.array(chain.P[x]),
                    cost=chain.zero(),
                )
            else:
                couplings[(x, y)] = good_optimal_coupling(chain, metric, x, y)
    logger.info("Coupling kernel assembled for %s ordered pairs", len(couplings))
    return CouplingKernel(n=chain.n, exact=chain.exact, couplings=couplings)
