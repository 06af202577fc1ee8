"""
Monte Carlo check of the hitting-time tail bound P(tau >= t) <= z0 * sqrt(10 / (p t))
for non-negative integer supermartingales that move with probability >= p
while away from zero.

Two processes are built in: the distance d(X_t, Y_t) of two walkers driven by
the coupling kernel of a curved lazy chain (p = P_min), and a lazy reflected
walk on {0..m} absorbed at 0 (p = 1/2), which also has an exact tail oracle.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Protocol, Sequence, Tuple

import numpy as np

from chains.arithmetic import to_float
from chains.chain import DirectedMetric
from transport.kernel import CouplingKernel
from verifier.report import InequalityReport, Status

logger = logging.getLogger(__name__)

CONFIDENCE = 0.99
REFLECTED_WALK_SALT = 0xC0FFEE
DEFAULT_GRID = (16, 64, 256)


class SupermartingaleProcess(Protocol):
    name: str
    z0: int
    p: Any

    def sampling_tables(self) -> Tuple[np.ndarray, np.ndarray, int, np.ndarray]:
        """(cdf, targets, start state, absorbing mask) over an indexed state space."""


@dataclass(frozen=True)
class ReflectedWalkProcess:
    """From z in 1..m-1: down 1/4, stay 1/2, up 1/4. From m: down 1/2, stay 1/2. 0 absorbs."""

    m: int = 8
    z0: int = 4
    name: str = "reflected_walk"

    @property
    def p(self) -> Fraction:
        return Fraction(1, 2)

    def kernel(self) -> List[List[Fraction]]:
        m = self.m
        rows = [[Fraction(0)] * (m + 1) for _ in range(m + 1)]
        rows[0][0] = Fraction(1)
        for z in range(1, m + 1):
            if z < m:
                rows[z][z - 1] = Fraction(1, 4)
                rows[z][z] = Fraction(1, 2)
                rows[z][z + 1] = Fraction(1, 4)
            else:
                rows[z][z - 1] = Fraction(1, 2)
                rows[z][z] = Fraction(1, 2)
        return rows

    def sampling_tables(self) -> Tuple[np.ndarray, np.ndarray, int, np.ndarray]:
        rows = self.kernel()
        size = self.m + 1
        cdf = np.ones((size, 3))
        targets = np.zeros((size, 3), dtype=np.int64)
        for z, row in enumerate(rows):
            entries = [(target, float(weight)) for target, weight in enumerate(row) if weight > 0]
            cumulative = np.cumsum([weight for _, weight in entries])
            cdf[z, : len(entries)] = cumulative / cumulative[-1]
            targets[z, : len(entries)] = [target for target, _ in entries]
            targets[z, len(entries):] = entries[-1][0]
        absorbing = np.zeros(size, dtype=bool)
        absorbing[0] = True
        return cdf, targets, self.z0, absorbing

    def exact_tail(self, grid: Sequence[int]) -> List[Fraction]:
        """P(tau >= t) = 1 - Q^(t-1)(z0, 0), by exact vector iteration."""
        rows = self.kernel()
        size = self.m + 1
        law = [Fraction(0)] * size
        law[self.z0] = Fraction(1)
        wanted = sorted(set(grid))
        tails: Dict[int, Fraction] = {}
        step = 0
        for t in wanted:
            target = max(0, t - 1)
            while step < target:
                law = [sum((law[a] * rows[a][b] for a in range(size)), Fraction(0)) for b in range(size)]
                step += 1
            tails[t] = 1 - law[0]
        return [tails[t] for t in grid]


@dataclass(frozen=True)
class CoupledDistanceProcess:
    """Z_t = d(X_t, Y_t) for walkers started at (x, y) and moved by the coupling kernel."""

    kernel: CouplingKernel
    metric: DirectedMetric
    x: int
    y: int
    p: Any
    name: str = "coupled_distance"

    @property
    def z0(self) -> int:
        return int(self.metric.d[self.x, self.y])

    def sampling_tables(self) -> Tuple[np.ndarray, np.ndarray, int, np.ndarray]:
        cdf, targets = self.kernel.sampling_tables()
        n = self.kernel.n
        absorbing = np.zeros(n * n, dtype=bool)
        absorbing[[self.kernel.index(a, a) for a in range(n)]] = True
        return cdf, targets, self.kernel.index(self.x, self.y), absorbing


@dataclass(frozen=True)
class SupermartingaleTrial:
    """Outcome of one Monte Carlo run of a supermartingale process."""

    process: str
    seed: int
    z0: int
    p: Any
    trials: int
    grid: Tuple[int, ...]
    empirical: Tuple[float, ...]
    radius: float
    bounds: Tuple[float, ...]
    exact: Optional[Tuple[Fraction, ...]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "process": self.process,
            "seed": self.seed,
            "z0": self.z0,
            "p": self.p,
            "trials": self.trials,
            "grid": list(self.grid),
            "empirical": list(self.empirical),
            "radius": self.radius,
            "bounds": list(self.bounds),
            "exact": list(self.exact) if self.exact is not None else None,
        }


def hoeffding_radius(trials: int, points: int, *, confidence: float = CONFIDENCE, sides: int = 1) -> float:
    """sqrt(ln(sides * points / delta) / (2 N)): Bonferroni over the grid."""
    delta = 1.0 - confidence
    return math.sqrt(math.log(sides * points / delta) / (2 * trials))


def tail_bound(z0: int, p: Any, t: int) -> float:
    return z0 * math.sqrt(10.0 / (to_float(p) * t))


def sample_hitting_times(
    process: SupermartingaleProcess, rng: np.random.Generator, trials: int, max_t: int
) -> np.ndarray:
    """First time each sampled path hits the absorbing set; max_t + 1 if it has not by max_t."""
    cdf, targets, start, absorbing = process.sampling_tables()
    states = np.full(trials, start, dtype=np.int64)
    hits = np.full(trials, max_t + 1, dtype=np.int64)
    alive = ~absorbing[states]
    hits[~alive] = 0
    width = cdf.shape[1]
    for t in range(1, max_t + 1):
        if not alive.any():
            break
        live = np.flatnonzero(alive)
        draws = rng.random(live.size)
        columns = np.minimum((draws[:, None] >= cdf[states[live]]).sum(axis=1), width - 1)
        states[live] = targets[states[live], columns]
        absorbed = absorbing[states[live]]
        hits[live[absorbed]] = t
        alive[live[absorbed]] = False
    return hits


def simulate_supermartingale(
    process: SupermartingaleProcess,
    *,
    grid: Sequence[int] = DEFAULT_GRID,
    trials: int = 100_000,
    rng: Optional[np.random.Generator] = None,
    seed: int = 0,
    chain_id: str = "supermartingale",
    hypotheses: Optional[Dict[str, Optional[bool]]] = None,
) -> Tuple[InequalityReport, SupermartingaleTrial]:
    """Estimate P(tau >= t) on the grid and compare with z0 * sqrt(10 / (p t)).

    Passes iff the empirical frequency minus the one-sided 99% Hoeffding
    radius (Bonferroni over the grid) is below the bound at every grid point.
    When the process has an exact tail, the estimate must also lie within the
    two-sided radius of it.
    """
    grid = tuple(sorted(int(t) for t in grid))
    if not grid or grid[0] < 1:
        raise ValueError("grid must contain positive times")
    rng = rng or np.random.default_rng([seed, REFLECTED_WALK_SALT])
    hits = sample_hitting_times(process, rng, trials, grid[-1])
    empirical = tuple(float(np.mean(hits >= t)) for t in grid)
    radius = hoeffding_radius(trials, len(grid))
    bounds = tuple(tail_bound(process.z0, process.p, t) for t in grid)

    exact = None
    if hasattr(process, "exact_tail"):
        exact = tuple(process.exact_tail(grid))

    trial = SupermartingaleTrial(
        process=process.name,
        seed=seed,
        z0=process.z0,
        p=process.p,
        trials=trials,
        grid=grid,
        empirical=empirical,
        radius=radius,
        bounds=bounds,
        exact=exact,
    )

    slacks = [bound - (freq - radius) for freq, bound in zip(empirical, bounds)]
    tightest = int(np.argmin(slacks))
    report = InequalityReport.evaluate(
        "hitting_time",
        chain_id,
        empirical[tightest] - radius,
        bounds[tightest],
        hypotheses=hypotheses,
        parameters={**trial.to_dict(), "t": grid[tightest]},
        force_float=True,
    )
    if exact is not None:
        oracle_radius = hoeffding_radius(trials, len(grid), sides=2)
        gaps = [abs(freq - to_float(value)) for freq, value in zip(empirical, exact)]
        report.parameters["oracle_gap"] = max(gaps)
        report.parameters["oracle_radius"] = oracle_radius
        if max(gaps) > oracle_radius:
            report.passed = False
            report.status = Status.FAIL
            report.detail = f"Monte Carlo tail deviates from the exact oracle by {max(gaps):.3e}"
    logger.info(
        "%s: %s trials of %s, tightest t=%s (%.4f vs bound %.4f)",
        chain_id,
        trials,
        process.name,
        grid[tightest],
        empirical[tightest],
        bounds[tightest],
    )
    return report, trial
