"""
Per-chain evaluation context.

Every derived quantity a check needs (metric, stationary law, curvature
certificate, spectra, mixing profile, conductance of each power, coupling
kernel, the stream of per-t statistics) is computed once on first use.
"""

from __future__ import annotations

import logging
from functools import cached_property
from typing import Any, Dict, List, Optional

import numpy as np

from chains.arithmetic import Scalar, float_array
from chains.chain import (
    DEFAULT_BIT_BUDGET,
    Chain,
    DirectedMetric,
    StationaryDist,
    directed_metric,
    is_lazy,
    is_reversible,
    p_min,
    stationary,
)
from chains.powers import TransitionPowers
from conductance.cheeger import (
    DEFAULT_ENUMERATION_LIMIT,
    ConductanceValue,
    conductance_of_matrix,
    power_matrix,
    sweep_conductance,
)
from conductance.spectral import SpectralProfile, spectral_profile
from errors import HypothesisSkip, NotReversibleError, TooLargeError, TruncationError
from mixing.profiles import (
    MixingProfile,
    StepStatistics,
    default_horizon,
    effective_diameter,
    iter_statistics,
    mixing_profile,
)
from mixing.symmetry import is_transitive
from transport.curvature import CurvatureCertificate, certify_curvature
from transport.kernel import CouplingKernel, coupling_kernel
from utils.helpers import to_jsonable

logger = logging.getLogger(__name__)

WINDOW_FACTOR = 4


class ChainContext:
    """Lazily evaluated quantities of one chain under one run configuration."""

    def __init__(
        self,
        chain: Chain,
        chain_id: str = "chain",
        *,
        horizon: Optional[int] = None,
        enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT,
        threads: int = 1,
        bit_budget: int = DEFAULT_BIT_BUDGET,
        full_curvature_check: bool = True,
    ) -> None:
        self.chain = chain
        self.chain_id = chain_id
        self.horizon_override = horizon
        self.enumeration_limit = enumeration_limit
        self.threads = threads
        self.bit_budget = bit_budget
        self.full_curvature_check = full_curvature_check
        self._phi: Dict[int, ConductanceValue] = {}
        self._powers: Dict[int, np.ndarray] = {}
        self._steps: List[StepStatistics] = []
        self._stream = None

    @property
    def n(self) -> int:
        return self.chain.n

    @cached_property
    def metric(self) -> DirectedMetric:
        return directed_metric(self.chain)

    @cached_property
    def dist(self) -> StationaryDist:
        return stationary(self.chain)

    @cached_property
    def pmin(self) -> Scalar:
        return p_min(self.chain)

    @cached_property
    def lazy(self) -> bool:
        return is_lazy(self.chain)

    @cached_property
    def reversible(self) -> bool:
        return is_reversible(self.chain, self.dist)

    @cached_property
    def transitive(self) -> Optional[bool]:
        """None when the automorphism search is out of reach."""
        try:
            return is_transitive(self.chain)
        except TooLargeError as exc:
            logger.info("%s: transitivity unknown (%s)", self.chain_id, exc)
            return None

    @cached_property
    def curvature(self) -> CurvatureCertificate:
        return certify_curvature(self.chain, self.metric, full_check=self.full_curvature_check)

    @property
    def nonneg_curved(self) -> bool:
        return self.curvature.non_negative

    @cached_property
    def spectral(self) -> Optional[SpectralProfile]:
        if self.n < 2:
            return None
        try:
            return spectral_profile(self.chain, self.dist)
        except NotReversibleError:
            return None

    @cached_property
    def diam_sharp(self) -> Scalar:
        return effective_diameter(self.metric, self.dist)

    @cached_property
    def horizon(self) -> int:
        if self.horizon_override is not None:
            return self.horizon_override
        return default_horizon(self.metric, self.pmin)

    @cached_property
    def mixing(self) -> MixingProfile:
        return mixing_profile(
            self.chain, self.horizon, dist=self.dist, metric=self.metric, bit_budget=self.bit_budget
        )

    def mixing_times(self) -> MixingProfile:
        """Mixing profile, raising :class:`TruncationError` if a mixing time is missing."""
        profile = self.mixing
        if profile.truncated:
            raise TruncationError(
                f"{self.chain_id}: mixing threshold not reached within horizon {self.horizon}"
            )
        return profile

    @property
    def window(self) -> int:
        """Upper end of the t-range searched for the main estimate."""
        return max(1, min(self.horizon, WINDOW_FACTOR * self.mixing_times().t_mix_sharp))

    def hypotheses(self) -> Dict[str, Optional[bool]]:
        return {
            "lazy": self.lazy,
            "reversible": self.reversible,
            "transitive": self.transitive,
            "nonneg_curved": self.nonneg_curved,
        }

    def require(self, **flags: bool) -> None:
        """Raise :class:`HypothesisSkip` unless every named hypothesis holds."""
        hypotheses = self.hypotheses()
        unmet = [name for name, wanted in flags.items() if wanted and not hypotheses.get(name)]
        if unmet:
            raise HypothesisSkip(f"hypotheses not met: {', '.join(unmet)}", hypotheses)

    def require_conductance(self) -> None:
        if self.n < 2:
            raise HypothesisSkip("a single state has no admissible conductance set", self.hypotheses())
        if self.n > self.enumeration_limit:
            raise TooLargeError(self.n, self.enumeration_limit, "conductance enumeration")

    def phi(self, t: int = 1) -> ConductanceValue:
        if t not in self._phi:
            self.require_conductance()
            matrix = self.power(t)
            pi = self.dist.pi if matrix.dtype == object else float_array(self.dist.pi)
            self._phi[t] = conductance_of_matrix(
                matrix, pi, t=t, enumeration_limit=self.enumeration_limit, threads=self.threads
            )
        return self._phi[t]

    def power(self, t: int) -> np.ndarray:
        """P^t, cached per t."""
        if t not in self._powers:
            self._powers[t] = power_matrix(self.chain, t, bit_budget=self.bit_budget)
        return self._powers[t]

    def statistics(self, t: int) -> StepStatistics:
        """TV and displacement statistics at time t, computed incrementally."""
        if self._stream is None:
            self._stream = iter_statistics(self.chain, self.dist, self.metric, bit_budget=self.bit_budget)
        while len(self._steps) <= t:
            self._steps.append(next(self._stream))
        return self._steps[t]

    def new_powers(self) -> TransitionPowers:
        return TransitionPowers(self.chain, bit_budget=self.bit_budget)

    @cached_property
    def kernel(self) -> CouplingKernel:
        return coupling_kernel(self.chain, self.metric)

    def profile(self, *, with_sweep: bool = True) -> "ChainProfile":
        return ChainProfile.from_context(self, with_sweep=with_sweep)


class ChainProfile:
    """Summary quantities reported by ``analyze``."""

    def __init__(self, payload: Dict[str, Any]) -> None:
        self.payload = payload

    @classmethod
    def from_context(cls, ctx: ChainContext, *, with_sweep: bool = True) -> "ChainProfile":
        chain = ctx.chain
        phi: Optional[ConductanceValue] = None
        phi_note = ""
        if ctx.n >= 2:
            try:
                phi = ctx.phi(1)
            except TooLargeError as exc:
                logger.warning("%s: %s", ctx.chain_id, exc)
                if with_sweep:
                    phi = sweep_conductance(chain, 1, dist=ctx.dist, bit_budget=ctx.bit_budget)
                    phi_note = "sweep upper bound"
        mixing = ctx.mixing
        spectral = ctx.spectral
        payload = {
            "n": chain.n,
            "mode": chain.mode,
            "labels": list(chain.labels) if chain.labels else None,
            "meta": dict(chain.meta),
            "pi": list(ctx.dist.pi),
            "p_min": ctx.pmin,
            "diam": ctx.metric.diam,
            "diam_sharp": ctx.diam_sharp,
            "lazy": ctx.lazy,
            "reversible": ctx.reversible,
            "transitive": ctx.transitive,
            "curvature": ctx.curvature.to_dict(),
            "phi": phi.to_dict() if phi else None,
            "phi_note": phi_note,
            "t_mix": mixing.t_mix,
            "t_mix_sharp": mixing.t_mix_sharp,
            "horizon": mixing.horizon,
            "truncated": mixing.truncated,
            "switched_at": mixing.switched_at,
            "t_rel": spectral.t_rel if spectral else None,
            "spectral": spectral.to_dict() if spectral else None,
        }
        return cls(payload)

    def to_dict(self) -> Dict[str, Any]:
        return to_jsonable(self.payload)
