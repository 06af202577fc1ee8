"""
Total-variation profiles, mixing times, displacement curves and the
effective diameter.

Updates: v0.1.0 - 2026-10-16 - Mixing profile, displacement curve and CSV trace frame.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterator, Mapping, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from chains.arithmetic import FLOAT_ROW_TOLERANCE, Scalar, less_equal, to_float
from chains.chain import DEFAULT_BIT_BUDGET, Chain, DirectedMetric, StationaryDist, directed_metric, p_min, stationary
from chains.powers import TransitionPowers
from errors import InvariantViolation
from utils.helpers import format_decimal, format_rational, is_exact, value_payload

logger = logging.getLogger(__name__)

MIXING_THRESHOLD = Fraction(1, 4)
HORIZON_FACTOR = 32


def default_horizon(metric: DirectedMetric, pmin: Scalar) -> int:
    """ceil(32 * diam^2 / P_min), at least 1."""
    value = HORIZON_FACTOR * metric.diam ** 2 / (Fraction(pmin) if is_exact(pmin) else to_float(pmin))
    return max(1, math.ceil(value))


def tv_distance(p: Sequence[Any], q: Sequence[Any]) -> Scalar:
    """Half the L1 distance; exact when both vectors are rational."""
    if len(p) != len(q):
        raise ValueError("distributions live on different state spaces")
    if all(is_exact(value) for value in p) and all(is_exact(value) for value in q):
        return sum((abs(Fraction(a) - Fraction(b)) for a, b in zip(p, q)), Fraction(0)) / 2
    return 0.5 * float(sum(abs(to_float(a) - to_float(b)) for a, b in zip(p, q)))


def effective_diameter(metric: DirectedMetric, dist: StationaryDist) -> Scalar:
    """diam# = sum pi(x) pi(y) d(x, y)."""
    pi = dist.pi
    return sum(
        (pi[x] * pi[y] * int(metric.d[x, y]) for x in range(metric.n) for y in range(metric.n)),
        pi[0] * 0,
    )


@dataclass(frozen=True, slots=True)
class StepStatistics:
    t: int
    row_tv: np.ndarray
    d_tv: Scalar
    d_tv_sharp: Scalar
    displacement: Optional[Scalar]
    exact: bool


def iter_statistics(
    chain: Chain,
    dist: StationaryDist,
    metric: Optional[DirectedMetric] = None,
    *,
    bit_budget: int = DEFAULT_BIT_BUDGET,
    powers: Optional[TransitionPowers] = None,
) -> Iterator[StepStatistics]:
    """Yield TV and displacement statistics for t = 0, 1, 2, ... (unbounded)."""
    powers = powers or TransitionPowers(chain, bit_budget=bit_budget)
    weights = None
    if metric is not None:
        weights = np.empty((chain.n, chain.n), dtype=object)
        for x in range(chain.n):
            for y in range(chain.n):
                weights[x, y] = dist.pi[x] * int(metric.d[x, y])
    while True:
        rows = powers.tv_to(dist.pi)
        exact = powers.exact
        pi = dist.pi if exact else np.array([to_float(value) for value in dist.pi])
        d_tv = max(rows)
        d_sharp = sum((pi[x] * rows[x] for x in range(chain.n)), pi[0] * 0)
        displacement = powers.weighted_sum(weights) if weights is not None else None
        yield StepStatistics(
            t=powers.t,
            row_tv=rows,
            d_tv=d_tv,
            d_tv_sharp=d_sharp,
            displacement=displacement,
            exact=exact,
        )
        powers.advance()


@dataclass(frozen=True, slots=True)
class MixingProfile:
    tv_curve: Tuple[Scalar, ...]
    avg_tv_curve: Tuple[Scalar, ...]
    t_mix: Optional[int]
    t_mix_sharp: Optional[int]
    horizon: int
    truncated: bool
    switched_at: Optional[int] = None
    rows_constant: bool = True
    threshold: Scalar = MIXING_THRESHOLD

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t_mix": self.t_mix,
            "t_mix_sharp": self.t_mix_sharp,
            "horizon": self.horizon,
            "truncated": self.truncated,
            "switched_at": self.switched_at,
            "rows_constant": self.rows_constant,
            "threshold": value_payload(self.threshold),
            "tv_curve": [value_payload(value) for value in self.tv_curve],
            "avg_tv_curve": [value_payload(value) for value in self.avg_tv_curve],
        }


def _rows_equal(rows: np.ndarray, exact: bool) -> bool:
    if exact:
        return all(value == rows[0] for value in rows)
    values = [to_float(value) for value in rows]
    return max(values) - min(values) <= FLOAT_ROW_TOLERANCE


def mixing_profile(
    chain: Chain,
    horizon: Optional[int] = None,
    *,
    dist: Optional[StationaryDist] = None,
    metric: Optional[DirectedMetric] = None,
    threshold: Scalar = MIXING_THRESHOLD,
    bit_budget: int = DEFAULT_BIT_BUDGET,
) -> MixingProfile:
    """Iterate P^t until both d_tv and d_tv# are <= threshold or the horizon is hit."""
    dist = dist or stationary(chain)
    if horizon is None:
        horizon = default_horizon(metric or directed_metric(chain), p_min(chain))
    if horizon < 1:
        raise ValueError("horizon must be at least 1")

    tv_curve = []
    avg_curve = []
    t_mix: Optional[int] = None
    t_mix_sharp: Optional[int] = None
    rows_constant = True
    switched_at: Optional[int] = None
    powers = TransitionPowers(chain, bit_budget=bit_budget)
    for step in iter_statistics(chain, dist, bit_budget=bit_budget, powers=powers):
        if tv_curve:
            for label, previous, current in (
                ("d_tv", tv_curve[-1], step.d_tv),
                ("d_tv_sharp", avg_curve[-1], step.d_tv_sharp),
            ):
                if not less_equal(current, previous):
                    raise InvariantViolation(f"{label} increased at t={step.t}: {previous} -> {current}")
        tv_curve.append(step.d_tv)
        avg_curve.append(step.d_tv_sharp)
        rows_constant = rows_constant and _rows_equal(step.row_tv, step.exact)
        if t_mix is None and less_equal(step.d_tv, threshold):
            t_mix = step.t
        if t_mix_sharp is None and less_equal(step.d_tv_sharp, threshold):
            t_mix_sharp = step.t
        if t_mix is not None and t_mix_sharp is not None:
            break
        if step.t >= horizon:
            break
    switched_at = powers.switched_at

    truncated = t_mix is None or t_mix_sharp is None
    if truncated:
        logger.warning("Mixing profile truncated at horizon %s before reaching %s", horizon, threshold)
    return MixingProfile(
        tv_curve=tuple(tv_curve),
        avg_tv_curve=tuple(avg_curve),
        t_mix=t_mix,
        t_mix_sharp=t_mix_sharp,
        horizon=horizon,
        truncated=truncated,
        switched_at=switched_at,
        rows_constant=rows_constant,
        threshold=threshold,
    )


@dataclass(frozen=True, slots=True)
class DisplacementCurve:
    values: Tuple[Scalar, ...]
    diam_sharp: Scalar
    diam: int
    switched_at: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "diam": self.diam,
            "diam_sharp": value_payload(self.diam_sharp),
            "switched_at": self.switched_at,
            "values": [value_payload(value) for value in self.values],
        }


def displacement_curve(
    chain: Chain,
    metric: DirectedMetric,
    horizon: int,
    *,
    dist: Optional[StationaryDist] = None,
    bit_budget: int = DEFAULT_BIT_BUDGET,
) -> DisplacementCurve:
    """E[d(X_0, X_t)] under X_0 ~ pi for t = 0..horizon."""
    if horizon < 0:
        raise ValueError("horizon must be non-negative")
    dist = dist or stationary(chain)
    powers = TransitionPowers(chain, bit_budget=bit_budget)
    values = []
    for step in iter_statistics(chain, dist, metric, bit_budget=bit_budget, powers=powers):
        values.append(step.displacement)
        if step.t >= horizon:
            break
    return DisplacementCurve(
        values=tuple(values),
        diam_sharp=effective_diameter(metric, dist),
        diam=metric.diam,
        switched_at=powers.switched_at,
    )


def build_trace(
    profile: MixingProfile,
    displacement: Optional[DisplacementCurve] = None,
    phi_by_t: Optional[Mapping[int, Scalar]] = None,
) -> pd.DataFrame:
    """One row per t: d_tv, d_tv_sharp, displacement and optional phi_pt, decimals plus exact columns."""
    records = []
    for t, (d_tv, d_sharp) in enumerate(zip(profile.tv_curve, profile.avg_tv_curve)):
        record: Dict[str, Any] = {
            "t": t,
            "d_tv": format_decimal(d_tv),
            "d_tv_sharp": format_decimal(d_sharp),
        }
        if displacement is not None and t < len(displacement.values):
            record["displacement"] = format_decimal(displacement.values[t])
        if phi_by_t is not None:
            value = phi_by_t.get(t)
            record["phi_pt"] = format_decimal(value) if value is not None else ""
        record["d_tv_exact"] = format_rational(d_tv) if is_exact(d_tv) else ""
        record["d_tv_sharp_exact"] = format_rational(d_sharp) if is_exact(d_sharp) else ""
        if displacement is not None and t < len(displacement.values):
            value = displacement.values[t]
            record["displacement_exact"] = format_rational(value) if is_exact(value) else ""
        records.append(record)
    return pd.DataFrame.from_records(records)
