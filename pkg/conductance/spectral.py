"""
Spectra of reversible chains via the symmetrised matrix D^{1/2} P D^{-1/2}.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
from scipy.linalg import eigh

from chains.arithmetic import float_array
from chains.chain import Chain, StationaryDist, is_lazy, is_reversible, stationary
from errors import InvariantViolation, NotReversibleError

logger = logging.getLogger(__name__)

EIGEN_TOLERANCE = 1e-9


@dataclass(frozen=True, slots=True)
class SpectralProfile:
    """Eigenvalues in decreasing order; t_rel = 1 / (1 - lambda_2)."""

    eigenvalues: Tuple[float, ...]
    t_rel: float
    tolerance: float = EIGEN_TOLERANCE

    @property
    def lambda2(self) -> float:
        return self.eigenvalues[1]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "eigenvalues": list(self.eigenvalues),
            "lambda2": self.lambda2,
            "t_rel": self.t_rel,
            "tolerance": self.tolerance,
        }


def _check_spectrum(values: np.ndarray, *, lazy: bool, tolerance: float = EIGEN_TOLERANCE) -> None:
    """lambda_1 = 1, every |lambda| <= 1, and lambda >= 0 when the chain is lazy."""
    if abs(float(values[0]) - 1.0) > tolerance:
        raise InvariantViolation(f"leading eigenvalue {values[0]!r} differs from 1")
    if float(np.max(np.abs(values))) > 1.0 + tolerance:
        raise InvariantViolation(f"eigenvalue of modulus {np.max(np.abs(values))!r} exceeds 1")
    if lazy and float(values[-1]) < -tolerance:
        raise InvariantViolation(f"lazy chain has negative eigenvalue {values[-1]!r}")


def spectral_profile(chain: Chain, dist: Optional[StationaryDist] = None) -> SpectralProfile:
    if chain.n < 2:
        raise ValueError("spectral profile needs at least two states")
    dist = dist or stationary(chain)
    if not is_reversible(chain, dist):
        raise NotReversibleError("detailed balance pi(x)P(x,y) = pi(y)P(y,x) fails")

    root = np.sqrt(float_array(dist.pi))
    similar = root[:, None] * float_array(chain.P) / root[None, :]
    symmetric = 0.5 * (similar + similar.T)
    values = eigh(symmetric, eigvals_only=True)[::-1]
    _check_spectrum(values, lazy=is_lazy(chain))
    gap = 1.0 - float(values[1])
    t_rel = 1.0 / gap if gap > 0 else float("inf")
    logger.debug("Spectral profile: lambda2=%.12f t_rel=%.6f", values[1], t_rel)
    return SpectralProfile(eigenvalues=tuple(float(value) for value in values), t_rel=t_rel)
