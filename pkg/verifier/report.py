"""
Inequality records and suite reports.

Updates: v0.1.0 - 2026-10-16 - InequalityReport with exact/float comparison and JSON export.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional

from chains.arithmetic import FLOAT_SLACK, Scalar, to_float
from utils.helpers import is_exact, to_jsonable

SCHEMA_VERSION = "1.0"


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"
    ERROR = "error"


def _square_root(value: Scalar) -> float:
    return math.sqrt(max(0.0, to_float(value)))


@dataclass(slots=True)
class InequalityReport:
    """One evaluated statement lhs <= rhs on one chain."""

    statement: str
    chain_id: str
    hypotheses: Dict[str, Optional[bool]]
    status: Status
    lhs: Optional[Scalar] = None
    rhs: Optional[Scalar] = None
    mode: str = "exact"
    slack: Optional[Scalar] = None
    passed: Optional[bool] = None
    parameters: Dict[str, Any] = field(default_factory=dict)
    detail: str = ""

    @classmethod
    def evaluate(
        cls,
        statement: str,
        chain_id: str,
        lhs: Scalar,
        rhs: Scalar,
        *,
        hypotheses: Optional[Dict[str, Optional[bool]]] = None,
        parameters: Optional[Dict[str, Any]] = None,
        lhs_squared: Optional[Scalar] = None,
        rhs_squared: Optional[Scalar] = None,
        force_float: bool = False,
        detail: str = "",
    ) -> "InequalityReport":
        """Compare lhs <= rhs.

        When a side involves a square root, pass its square as ``lhs_squared``
        or ``rhs_squared`` (both sides must then be non-negative); the
        comparison is made on squares, exactly if both squares are rational.
        """
        if lhs_squared is not None or rhs_squared is not None:
            left_sq = lhs_squared if lhs_squared is not None else lhs * lhs
            right_sq = rhs_squared if rhs_squared is not None else rhs * rhs
            if lhs_squared is not None:
                lhs = _square_root(lhs_squared)
            if rhs_squared is not None:
                rhs = _square_root(rhs_squared)
            exact = not force_float and is_exact(left_sq) and is_exact(right_sq)
            if exact:
                passed = Fraction(left_sq) <= Fraction(right_sq)
            else:
                passed = to_float(rhs) - to_float(lhs) >= -FLOAT_SLACK * max(1.0, abs(to_float(rhs)))
            slack: Scalar = to_float(rhs) - to_float(lhs)
        else:
            exact = not force_float and is_exact(lhs) and is_exact(rhs)
            if exact:
                slack = Fraction(rhs) - Fraction(lhs)
                passed = slack >= 0
            else:
                slack = to_float(rhs) - to_float(lhs)
                passed = slack >= -FLOAT_SLACK * max(1.0, abs(to_float(rhs)))
        return cls(
            statement=statement,
            chain_id=chain_id,
            hypotheses=dict(hypotheses or {}),
            status=Status.PASS if passed else Status.FAIL,
            lhs=lhs,
            rhs=rhs,
            mode="exact" if exact else "float",
            slack=slack,
            passed=passed,
            parameters=dict(parameters or {}),
            detail=detail,
        )

    @classmethod
    def skipped(
        cls,
        statement: str,
        chain_id: str,
        reason: str,
        hypotheses: Optional[Dict[str, Optional[bool]]] = None,
    ) -> "InequalityReport":
        return cls(
            statement=statement,
            chain_id=chain_id,
            hypotheses=dict(hypotheses or {}),
            status=Status.SKIP,
            detail=reason,
        )

    @classmethod
    def errored(
        cls,
        statement: str,
        chain_id: str,
        reason: str,
        hypotheses: Optional[Dict[str, Optional[bool]]] = None,
    ) -> "InequalityReport":
        return cls(
            statement=statement,
            chain_id=chain_id,
            hypotheses=dict(hypotheses or {}),
            status=Status.ERROR,
            passed=False,
            detail=reason,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "statement": self.statement,
            "chain_id": self.chain_id,
            "status": self.status.value,
            "hypotheses": dict(sorted(self.hypotheses.items())),
            "lhs": to_jsonable(self.lhs),
            "rhs": to_jsonable(self.rhs),
            "mode": self.mode,
            "slack": to_jsonable(self.slack),
            "pass": self.passed,
            "parameters": to_jsonable(dict(sorted(self.parameters.items()))),
            "detail": self.detail,
        }


@dataclass(slots=True)
class SuiteReport:
    """All records of one run, ordered by (chain id, statement id)."""

    seed: int
    reports: List[InequalityReport] = field(default_factory=list)
    config: Dict[str, Any] = field(default_factory=dict)

    def extend(self, records: Iterable[InequalityReport]) -> None:
        self.reports.extend(records)

    def sorted_reports(self) -> List[InequalityReport]:
        return sorted(self.reports, key=lambda record: (record.chain_id, record.statement))

    def counts(self) -> Dict[str, int]:
        summary = {status.value: 0 for status in Status}
        for record in self.reports:
            summary[record.status.value] += 1
        summary["total"] = len(self.reports)
        return summary

    @property
    def clean(self) -> bool:
        counts = self.counts()
        return counts[Status.FAIL.value] == 0 and counts[Status.ERROR.value] == 0

    @property
    def exit_code(self) -> int:
        return 0 if self.clean else 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "seed": self.seed,
            "config": to_jsonable(dict(sorted(self.config.items()))),
            "summary": self.counts(),
            "reports": [record.to_dict() for record in self.sorted_reports()],
        }
