"""
Wasserstein-1 distance under a directed metric, with primal coupling and
Kantorovich dual certificate, plus the two-stage "good" optimal coupling.

Updates: v0.1.0 - 2026-10-16 - Exact transport with strong-duality check.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, NamedTuple, Optional, Sequence

import numpy as np

from chains.arithmetic import FLOAT_SLACK, Scalar, to_float, zeros_like_mode
from chains.chain import Chain, DirectedMetric, is_lazy, p_min
from errors import DualityGapError, HypothesisError, InvariantViolation
from transport.simplex import DEFAULT_MAX_PIVOTS, TransportationSimplex, TransportSolution
from utils.helpers import format_rational, is_exact, value_payload

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True, eq=False)
class Coupling:
    """Joint law chi on V x V with the given marginals and transport cost."""

    chi: np.ndarray
    source_marginal: np.ndarray
    target_marginal: np.ndarray
    cost: Scalar

    @property
    def n(self) -> int:
        return int(self.chi.shape[0])

    def mass(self, mask: np.ndarray) -> Scalar:
        """Total chi-mass of the cells where ``mask`` is True."""
        total: Scalar = self.chi[0, 0] * 0
        for u, v in zip(*np.nonzero(mask)):
            total += self.chi[u, v]
        return total

    def support(self) -> List[tuple]:
        rows, cols = np.nonzero(self.chi > 0)
        return [((int(u), int(v)), self.chi[u, v]) for u, v in zip(rows, cols)]

    def to_dict(self) -> Dict[str, Any]:
        """Audit export: dense chi as "p/q" strings (exact) or floats."""
        def render(value: Scalar) -> Any:
            return format_rational(value) if is_exact(value) else float(value)

        return {
            "cost": value_payload(self.cost),
            "chi": [[render(value) for value in row] for row in self.chi],
            "source_marginal": [render(value) for value in self.source_marginal],
            "target_marginal": [render(value) for value in self.target_marginal],
        }


@dataclass(frozen=True, slots=True, eq=False)
class DualCertificate:
    """Potential f with f(y) - f(x) <= 1 whenever d(x, y) = 1."""

    f: np.ndarray

    def value(self, mu: Sequence[Scalar], nu: Sequence[Scalar]) -> Scalar:
        """nu f - mu f."""
        total = self.f[0] * 0 * mu[0]
        for z in range(len(self.f)):
            total += (nu[z] - mu[z]) * self.f[z]
        return total

    def is_feasible(self, metric: DirectedMetric) -> bool:
        return all(self.f[y] - self.f[x] <= 1 for x, y in metric.neighbours())

    def to_dict(self) -> Dict[str, Any]:
        return {"f": [int(value) if is_exact(value) else float(value) for value in self.f]}


class TransportResult(NamedTuple):
    cost: Scalar
    coupling: Coupling
    dual: DualCertificate


def _as_distribution(vector: Sequence[Any], n: int, name: str) -> np.ndarray:
    values = list(vector)
    if len(values) != n:
        raise ValueError(f"{name} has length {len(values)}, expected {n}")
    exact = all(is_exact(value) for value in values)
    if exact:
        array = np.array([Fraction(value) for value in values], dtype=object)
        total = sum(array, Fraction(0))
        ok = total == 1
    else:
        array = np.array([to_float(value) for value in values], dtype=float)
        total = float(array.sum())
        ok = abs(total - 1.0) <= FLOAT_SLACK
    if any(value < 0 for value in array):
        raise ValueError(f"{name} has negative entries")
    if not ok:
        raise ValueError(f"{name} sums to {total}, expected 1")
    return array


def _support_problem(metric: DirectedMetric, mu: np.ndarray, nu: np.ndarray):
    rows = [u for u in range(len(mu)) if mu[u] > 0]
    cols = [v for v in range(len(nu)) if nu[v] > 0]
    cost = [[int(metric.d[u, v]) for v in cols] for u in rows]
    return rows, cols, cost


def _assemble(
    n: int,
    rows: Sequence[int],
    cols: Sequence[int],
    solution: TransportSolution,
    mu: np.ndarray,
    nu: np.ndarray,
    exact: bool,
) -> Coupling:
    chi = zeros_like_mode((n, n), exact)
    for (i, j), quantity in solution.flows.items():
        chi[rows[i], cols[j]] = chi[rows[i], cols[j]] + quantity
    chi.setflags(write=False)
    return Coupling(chi=chi, source_marginal=mu, target_marginal=nu, cost=solution.objective)


def _dual_from_potentials(metric: DirectedMetric, rows: Sequence[int], u: Sequence[Scalar]) -> DualCertificate:
    """c-transform f(z) = min_i d(rows[i], z) - u_i, a 1-Lipschitz potential."""
    n = metric.n
    f = np.array(
        [min(int(metric.d[rows[i], z]) - u[i] for i in range(len(rows))) for z in range(n)],
        dtype=object,
    )
    return DualCertificate(f=f)


def w1(
    metric: DirectedMetric,
    mu: Sequence[Any],
    nu: Sequence[Any],
    *,
    max_pivots: int = DEFAULT_MAX_PIVOTS,
) -> TransportResult:
    """Exact W1(mu, nu) with an optimal coupling and a matching dual certificate."""
    n = metric.n
    mu_arr = _as_distribution(mu, n, "mu")
    nu_arr = _as_distribution(nu, n, "nu")
    exact = mu_arr.dtype == object and nu_arr.dtype == object
    if not exact:
        mu_arr = mu_arr.astype(float)
        nu_arr = nu_arr.astype(float)

    rows, cols, cost = _support_problem(metric, mu_arr, nu_arr)
    solver = TransportationSimplex(
        [mu_arr[u] for u in rows], [nu_arr[v] for v in cols], cost, max_pivots=max_pivots
    )
    solution = solver.solve()
    coupling = _assemble(n, rows, cols, solution, mu_arr, nu_arr, exact)
    dual = _dual_from_potentials(metric, rows, solution.row_potentials)

    dual_value = dual.value(mu_arr, nu_arr)
    if exact:
        if dual_value != solution.objective:
            raise DualityGapError(f"primal {solution.objective} != dual {dual_value}")
    elif abs(to_float(dual_value) - to_float(solution.objective)) > FLOAT_SLACK * max(1.0, abs(to_float(solution.objective))):
        raise DualityGapError(f"primal {solution.objective} != dual {dual_value}")
    return TransportResult(cost=solution.objective, coupling=coupling, dual=dual)


def good_set(metric: DirectedMetric, x: int, y: int) -> np.ndarray:
    """Boolean mask of pairs (u, v) strictly closer than (x, y)."""
    return metric.d < metric.d[x, y]


def good_set_mass(coupling: Coupling, metric: DirectedMetric, x: int, y: int) -> Scalar:
    return coupling.mass(good_set(metric, x, y))


def good_optimal_coupling(
    chain: Chain,
    metric: DirectedMetric,
    x: int,
    y: int,
    *,
    require_lazy: bool = True,
    max_pivots: int = DEFAULT_MAX_PIVOTS,
) -> Coupling:
    """Optimal coupling of P(x,.) and P(y,.) maximising its mass on the good set.

    Stage one minimises transport cost. Stage two re-optimises from the stage
    one basis, restricted to zero reduced-cost cells (the optimal face), with
    cost -1 on pairs strictly closer than (x, y). On lazy chains the result is
    checked to carry good-set mass at least P_min. On other chains the
    coupling is still computed and, unless ``require_lazy`` is False, returned
    on the raised HypothesisError as ``result``.
    """
    if x == y:
        raise ValueError("good optimal coupling needs x != y")
    lazy = is_lazy(chain)

    mu = np.array(chain.P[x])
    nu = np.array(chain.P[y])
    rows, cols, cost = _support_problem(metric, mu, nu)
    supply = [mu[u] for u in rows]
    demand = [nu[v] for v in cols]
    stage_one = TransportationSimplex(supply, demand, cost, max_pivots=max_pivots).solve()

    optimal_face = [
        [stage_one.reduced_cost(cost, i, j) == 0 for j in range(len(cols))]
        for i in range(len(rows))
    ]
    threshold = int(metric.d[x, y])
    good_cost = [[-1 if cost[i][j] < threshold else 0 for j in range(len(cols))] for i in range(len(rows))]
    stage_two = TransportationSimplex(
        supply, demand, good_cost, allowed=optimal_face, max_pivots=max_pivots
    ).solve(start=stage_one)

    coupling = _assemble(chain.n, rows, cols, stage_two, mu, nu, chain.exact)
    transport_cost = sum(
        (coupling.chi[u, v] * int(metric.d[u, v]) for u in range(chain.n) for v in range(chain.n)),
        chain.zero(),
    )
    coupling = Coupling(
        chi=coupling.chi,
        source_marginal=mu,
        target_marginal=nu,
        cost=transport_cost,
    )
    if chain.exact and transport_cost != stage_one.objective:
        raise InvariantViolation("second stage left the optimal face")

    if lazy:
        mass = good_set_mass(coupling, metric, x, y)
        if mass < p_min(chain) and (chain.exact or to_float(p_min(chain)) - to_float(mass) > FLOAT_SLACK):
            raise InvariantViolation(
                f"good-set mass {mass} below P_min {p_min(chain)} for pair ({x}, {y})"
            )
    logger.debug("Good coupling (%s, %s): %s + %s pivots", x, y, stage_one.pivots, stage_two.pivots)
    if require_lazy and not lazy:
        raise HypothesisError(
            f"good optimal coupling for ({x}, {y}) computed on a non-lazy chain; P_min floor not asserted",
            result=coupling,
        )
    return coupling
