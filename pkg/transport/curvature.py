"""
Certification of non-negative Ollivier curvature.

The local check compares W(P(x,.), P(y,.)) with 1 for every ordered pair at
distance one. The full check compares W with d(x, y) for every ordered pair
and must agree with the local verdict.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Tuple

from chains.arithmetic import Scalar, to_float
from chains.chain import Chain, DirectedMetric
from errors import InvariantViolation
from transport.wasserstein import DualCertificate, w1
from utils.helpers import value_payload

logger = logging.getLogger(__name__)

FLOAT_PASS_BAND = 1e-9
FLOAT_FAIL_BAND = 1e-6


class CurvatureVerdict(str, Enum):
    NON_NEGATIVE = "non-negative"
    NEGATIVE = "negative"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True, slots=True)
class CurvatureWitness:
    x: int
    y: int
    w: Scalar
    dual: DualCertificate

    def to_dict(self) -> Dict[str, Any]:
        return {"x": self.x, "y": self.y, "w": value_payload(self.w), "dual": self.dual.to_dict()}


@dataclass(frozen=True, slots=True)
class CurvatureCertificate:
    verdict: CurvatureVerdict
    witness: Optional[CurvatureWitness]
    pairs_checked: int
    max_w: Scalar
    max_pair: Optional[Tuple[int, int]]
    full_check: Optional[bool] = None

    @property
    def non_negative(self) -> bool:
        return self.verdict is CurvatureVerdict.NON_NEGATIVE

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "witness": self.witness.to_dict() if self.witness else None,
            "pairs_checked": self.pairs_checked,
            "max_w": value_payload(self.max_w),
            "max_pair": list(self.max_pair) if self.max_pair else None,
            "full_check": self.full_check,
        }


def _classify(w: Scalar, bound: Scalar, exact: bool) -> CurvatureVerdict:
    if exact:
        return CurvatureVerdict.NON_NEGATIVE if w <= bound else CurvatureVerdict.NEGATIVE
    excess = to_float(w) - to_float(bound)
    if excess <= FLOAT_PASS_BAND:
        return CurvatureVerdict.NON_NEGATIVE
    if excess > FLOAT_FAIL_BAND:
        return CurvatureVerdict.NEGATIVE
    return CurvatureVerdict.INDETERMINATE


def full_pair_check(chain: Chain, metric: DirectedMetric) -> Tuple[bool, Optional[Tuple[int, int, Scalar]]]:
    """W(P(x,.), P(y,.)) <= d(x, y) over all ordered pairs; returns (ok, worst excess pair)."""
    ok = True
    worst: Optional[Tuple[int, int, Scalar]] = None
    worst_excess: Optional[Scalar] = None
    for x in range(chain.n):
        for y in range(chain.n):
            if x == y:
                continue
            result = w1(metric, chain.P[x], chain.P[y])
            excess = result.cost - int(metric.d[x, y])
            if _classify(result.cost, int(metric.d[x, y]), chain.exact) is not CurvatureVerdict.NON_NEGATIVE:
                ok = False
            if worst_excess is None or excess > worst_excess:
                worst_excess = excess
                worst = (x, y, result.cost)
    return ok, worst


def certify_curvature(chain: Chain, metric: DirectedMetric, *, full_check: bool = False) -> CurvatureCertificate:
    """Local curvature certificate; optionally cross-validated on all ordered pairs."""
    verdict = CurvatureVerdict.NON_NEGATIVE
    witness: Optional[CurvatureWitness] = None
    max_w: Scalar = chain.zero()
    max_pair: Optional[Tuple[int, int]] = None
    pairs = metric.neighbours()

    for x, y in pairs:
        result = w1(metric, chain.P[x], chain.P[y])
        if max_pair is None or result.cost > max_w:
            max_w = result.cost
            max_pair = (x, y)
        pair_verdict = _classify(result.cost, 1, chain.exact)
        if pair_verdict is CurvatureVerdict.NEGATIVE:
            if witness is None or result.cost > witness.w:
                witness = CurvatureWitness(x=x, y=y, w=result.cost, dual=result.dual)
            verdict = CurvatureVerdict.NEGATIVE
        elif pair_verdict is CurvatureVerdict.INDETERMINATE and verdict is CurvatureVerdict.NON_NEGATIVE:
            verdict = CurvatureVerdict.INDETERMINATE

    full_ok: Optional[bool] = None
    if full_check:
        full_ok, worst = full_pair_check(chain, metric)
        if verdict is CurvatureVerdict.NON_NEGATIVE and not full_ok:
            raise InvariantViolation(
                f"local curvature check passed but the full check fails at {worst}"
            )

    logger.info(
        "Curvature: %s over %s neighbour pairs (max W = %s)", verdict.value, len(pairs), max_w
    )
    return CurvatureCertificate(
        verdict=verdict,
        witness=witness,
        pairs_checked=len(pairs),
        max_w=max_w,
        max_pair=max_pair,
        full_check=full_ok,
    )
