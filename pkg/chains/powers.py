"""
Iterated transition matrices P^t with an exact-to-float switch.

Exact mode stores P^t as M^t / D^t with Python-int numerators, so each step is
one integer matrix product. When D^(t+1) would exceed the bit budget the
iterator converts to float64 and records ``switched_at``.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Optional

import numpy as np

from chains.arithmetic import Scalar, common_denominator, float_array, scaled_matrix
from chains.chain import DEFAULT_BIT_BUDGET, Chain

logger = logging.getLogger(__name__)


class TransitionPowers:
    """Stateful iterator over P^0, P^1, P^2, ..."""

    def __init__(self, chain: Chain, *, bit_budget: int = DEFAULT_BIT_BUDGET) -> None:
        self.chain = chain
        self.bit_budget = bit_budget
        self.t = 0
        self.switched_at: Optional[int] = None
        n = chain.n
        if chain.exact:
            self._step, self._base = scaled_matrix(chain.P)
            self._numerators: Optional[np.ndarray] = np.array(
                [[1 if x == y else 0 for y in range(n)] for x in range(n)], dtype=object
            )
            self._scale = 1
            self._float: Optional[np.ndarray] = None
        else:
            self._numerators = None
            self._scale = 1
            self._float = np.eye(n)
        self._float_step = float_array(chain.P) if chain.exact else chain.P
        self._cached_exact: Optional[np.ndarray] = None

    @property
    def exact(self) -> bool:
        return self._numerators is not None

    def advance(self) -> int:
        """Move to t + 1 and return the new t."""
        self._cached_exact = None
        if self.exact:
            if (self._scale * self._base).bit_length() > self.bit_budget:
                self._switch_to_float()
            else:
                self._numerators = self._numerators.dot(self._step)
                self._scale *= self._base
                self.t += 1
                return self.t
        self._float = self._float @ self._float_step
        self.t += 1
        return self.t

    def advance_to(self, t: int) -> None:
        if t < self.t:
            raise ValueError(f"cannot rewind from t={self.t} to t={t}")
        while self.t < t:
            self.advance()

    def _switch_to_float(self) -> None:
        scale = self._scale
        self._float = np.array(
            [[int(value) / scale for value in row] for row in self._numerators], dtype=float
        )
        self._numerators = None
        self.switched_at = self.t + 1
        logger.warning(
            "Exact powers exceed %s-bit budget; switching to float from t=%s",
            self.bit_budget,
            self.switched_at,
        )

    def matrix(self) -> np.ndarray:
        """P^t as Fractions (exact) or float64."""
        if not self.exact:
            return self._float
        if self._cached_exact is None:
            scale = self._scale
            self._cached_exact = np.array(
                [[Fraction(int(value), scale) for value in row] for row in self._numerators],
                dtype=object,
            )
        return self._cached_exact

    def row(self, x: int) -> np.ndarray:
        return self.matrix()[x]

    def tv_to(self, target: np.ndarray) -> np.ndarray:
        """Per-row total variation ||P^t(x, .) - target||."""
        if not self.exact:
            target_float = np.array([float(value) for value in target])
            return 0.5 * np.abs(self._float - target_float[None, :]).sum(axis=1)
        numerators, denominator = common_denominator(target)
        scale = self._scale
        diffs = np.abs(self._numerators * denominator - numerators[None, :] * scale).sum(axis=1)
        return np.array([Fraction(int(value), 2 * scale * denominator) for value in diffs], dtype=object)

    def pairwise_tv(self) -> np.ndarray:
        """Matrix of ||P^t(x, .) - P^t(y, .)|| over all ordered pairs."""
        n = self.chain.n
        if not self.exact:
            diffs = np.abs(self._float[:, None, :] - self._float[None, :, :]).sum(axis=2)
            return 0.5 * diffs
        scale = self._scale
        result = np.empty((n, n), dtype=object)
        for x in range(n):
            sums = np.abs(self._numerators - self._numerators[x][None, :]).sum(axis=1)
            for y in range(n):
                result[x, y] = Fraction(int(sums[y]), 2 * scale)
        return result

    def weighted_sum(self, weights: np.ndarray) -> Scalar:
        """Sum over (x, y) of weights(x, y) * P^t(x, y)."""
        if not self.exact:
            weights_float = np.array([[float(value) for value in row] for row in weights])
            return float(np.sum(weights_float * self._float))
        numerators, denominator = common_denominator(weights.ravel())
        numerators = numerators.reshape(weights.shape)
        total = int(np.sum(numerators * self._numerators))
        return Fraction(total, denominator * self._scale)
