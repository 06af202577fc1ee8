"""
Exception hierarchy for curvmix.

Every domain error derives from ``CurvmixError`` and from the builtin exception
that best matches its meaning, so callers may catch either.

Updates: v0.1.0 - 2026-10-16 - Initial hierarchy for chains, transport, conductance and verifier.
"""

from __future__ import annotations

from typing import Any, Dict, Optional


class CurvmixError(Exception):
    """Base class for all curvmix errors."""


class ChainValidationError(CurvmixError, ValueError):
    """A transition matrix failed validation."""


class ChainParseError(ChainValidationError):
    """A chain file could not be parsed."""


class RowSumError(ChainValidationError):
    """A row does not sum to one within the mode tolerance."""

    def __init__(self, row: int, total: Any) -> None:
        super().__init__(f"row {row} sums to {total}, expected 1")
        self.row = row
        self.total = total


class NegativeEntryError(ChainValidationError):
    """A transition probability is negative."""

    def __init__(self, row: int, column: int, value: Any) -> None:
        super().__init__(f"entry ({row}, {column}) is negative: {value}")
        self.row = row
        self.column = column
        self.value = value


class ReducibleError(ChainValidationError):
    """The support digraph is not strongly connected."""


class NumericalFailure(CurvmixError, ArithmeticError):
    """A float computation missed its residual target."""


class DenominatorOverflowError(CurvmixError, OverflowError):
    """Exact denominators exceeded the configured bit budget."""

    def __init__(self, t: int, bits: int, budget: int) -> None:
        super().__init__(f"denominator needs {bits} bits at t={t} (budget {budget})")
        self.t = t
        self.bits = bits
        self.budget = budget


class SolverStall(CurvmixError, RuntimeError):
    """The transportation simplex exceeded its pivot limit."""


class DualityGapError(CurvmixError, RuntimeError):
    """Primal and dual objective values disagree."""


class HypothesisError(CurvmixError, ValueError):
    """An operation was called on a chain that misses a required hypothesis.

    ``result`` holds whatever the operation still computed, or None.
    """

    def __init__(self, message: str, result: Any = None) -> None:
        super().__init__(message)
        self.result = result


class NotReversibleError(CurvmixError, ValueError):
    """Detailed balance fails."""


class NotCenteredError(CurvmixError, ValueError):
    """A test function is not centred under the stationary law."""


class TooLargeError(CurvmixError, ValueError):
    """A state space exceeds an exhaustive-search limit."""

    def __init__(self, n: int, limit: int, what: str = "enumeration") -> None:
        super().__init__(f"{what} limited to n <= {limit}, got n = {n}")
        self.n = n
        self.limit = limit


class NoAdmissibleSetError(CurvmixError, ValueError):
    """No subset satisfies 0 < pi(A) <= 1/2."""


class SizeError(CurvmixError, ValueError):
    """Generator parameters exceed the supported state count."""


class NotGeneratingError(CurvmixError, ValueError):
    """A generating multiset does not generate the group."""


class TruncationError(CurvmixError, RuntimeError):
    """A quantity was not reached before the horizon."""


class InvariantViolation(CurvmixError, AssertionError):
    """An internal cross-validation failed."""


class HypothesisSkip(CurvmixError):
    """A verifier check does not apply to the chain."""

    def __init__(self, reason: str, hypotheses: Optional[Dict[str, Optional[bool]]] = None) -> None:
        super().__init__(reason)
        self.reason = reason
        self.hypotheses: Dict[str, Optional[bool]] = dict(hypotheses or {})
