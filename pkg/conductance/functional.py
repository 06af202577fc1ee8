"""
Functional inequalities driven by conductance: the L1 Cheeger inequality
(applied to P^t) and the two-sided concentration inequality.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Any, List, Optional, Sequence

import numpy as np

from chains.arithmetic import FLOAT_SLACK, Scalar, float_array, to_float
from chains.chain import Chain, StationaryDist, is_lazy, stationary
from conductance.cheeger import ConductanceValue, conductance, conductance_of_matrix, power_matrix
from errors import NotCenteredError
from utils.helpers import is_exact
from verifier.report import InequalityReport

logger = logging.getLogger(__name__)


def _vector(values: Sequence[Any], exact: bool) -> np.ndarray:
    if exact:
        return np.array([Fraction(value) for value in values], dtype=object)
    return np.array([to_float(value) for value in values], dtype=float)


def _mean(pi: np.ndarray, f: np.ndarray) -> Scalar:
    return sum((pi[x] * f[x] for x in range(len(f))), pi[0] * 0 * f[0])


def centre(chain: Chain, f: Sequence[Any], dist: Optional[StationaryDist] = None) -> np.ndarray:
    """Return f - pi f."""
    dist = dist or stationary(chain)
    exact = chain.exact and all(is_exact(value) for value in f)
    pi = dist.pi if exact else float_array(dist.pi)
    vector = _vector(f, exact)
    return vector - _mean(pi, vector)


def check_l1_cheeger(
    chain: Chain,
    t: int,
    f: Sequence[Any],
    *,
    dist: Optional[StationaryDist] = None,
    phi: Optional[ConductanceValue] = None,
    matrix: Optional[np.ndarray] = None,
    chain_id: str = "chain",
) -> InequalityReport:
    """sum pi|f| <= (1/Phi(P^t)) sum pi(x) P^t(x,y) |f(y) - f(x)| for centred f."""
    if len(f) != chain.n:
        raise ValueError(f"f has length {len(f)}, expected {chain.n}")
    dist = dist or stationary(chain)
    matrix = matrix if matrix is not None else power_matrix(chain, t)
    exact = matrix.dtype == object and all(is_exact(value) for value in f)
    pi = dist.pi if exact else float_array(dist.pi)
    Q = matrix if exact else float_array(matrix)
    vector = _vector(f, exact)

    mean = _mean(pi, vector)
    if (exact and mean != 0) or (not exact and abs(to_float(mean)) > FLOAT_SLACK):
        raise NotCenteredError(f"pi f = {mean}, expected 0")

    if phi is None:
        phi = conductance_of_matrix(Q, pi, t=t)
    phi_value = phi.phi if exact else to_float(phi.phi)

    lhs = sum((pi[x] * abs(vector[x]) for x in range(chain.n)), pi[0] * 0)
    gradient = sum(
        (pi[x] * Q[x, y] * abs(vector[y] - vector[x]) for x in range(chain.n) for y in range(chain.n)),
        pi[0] * 0,
    )
    rhs = gradient / phi_value
    return InequalityReport.evaluate(
        "l1_cheeger",
        chain_id,
        lhs,
        rhs,
        hypotheses={"centred": True},
        parameters={"t": t, "phi": phi.phi, "argmin_set": phi.members()},
    )


def _increments(chain: Chain, f: np.ndarray) -> tuple:
    up = f[0] * 0
    down = f[0] * 0
    for x, y in chain.support():
        up = max(up, f[y] - f[x])
        down = max(down, f[x] - f[y])
    return up, down


def _symmetric_support(chain: Chain) -> bool:
    edges = set(chain.support())
    return all((y, x) in edges for x, y in edges)


def check_concentration(
    chain: Chain,
    f: Sequence[Any],
    a: Any,
    *,
    dist: Optional[StationaryDist] = None,
    phi: Optional[ConductanceValue] = None,
    chain_id: str = "chain",
) -> List[InequalityReport]:
    """pi(f >= pi f + a) and pi(f <= pi f - a) against min(up, down) / (a Phi).

    Lazy chains additionally get both tails checked with the constant 2 Phi.
    """
    if len(f) != chain.n:
        raise ValueError(f"f has length {len(f)}, expected {chain.n}")
    dist = dist or stationary(chain)
    phi = phi or conductance(chain, 1, dist=dist)
    exact = chain.exact and is_exact(a) and is_exact(phi.phi) and all(is_exact(value) for value in f)
    if (Fraction(a) if exact else to_float(a)) <= 0:
        raise ValueError("a must be positive")
    pi = dist.pi if exact else float_array(dist.pi)
    vector = _vector(f, exact)
    level = Fraction(a) if exact else to_float(a)
    phi_value = phi.phi if exact else to_float(phi.phi)

    mean = _mean(pi, vector)
    upper_mass = sum((pi[x] for x in range(chain.n) if vector[x] >= mean + level), pi[0] * 0)
    lower_mass = sum((pi[x] for x in range(chain.n) if vector[x] <= mean - level), pi[0] * 0)
    up, down = _increments(chain, vector)
    symmetric = _symmetric_support(chain)
    increment = min(up, down)
    parameters = {
        "a": level,
        "phi": phi.phi,
        "increment_up": up,
        "increment_down": down,
        "symmetric_support": symmetric,
    }
    if symmetric:
        parameters["lipschitz"] = max(up, down)

    lazy = is_lazy(chain)
    reports = []
    for tail, mass in (("upper", upper_mass), ("lower", lower_mass)):
        reports.append(
            InequalityReport.evaluate(
                f"concentration_{tail}",
                chain_id,
                mass,
                increment / (level * phi_value),
                hypotheses={"lazy": lazy},
                parameters=dict(parameters, tail=tail),
            )
        )
        if lazy:
            reports.append(
                InequalityReport.evaluate(
                    f"concentration_{tail}_lazy",
                    chain_id,
                    mass,
                    increment / (2 * level * phi_value),
                    hypotheses={"lazy": True},
                    parameters=dict(parameters, tail=tail, constant="2 phi"),
                )
            )
    return reports
