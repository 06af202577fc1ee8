"""
Corpus definitions: named chains with expected structural tags, loaded from YAML.

Updates: v0.1.0 - 2026-10-16 - YAML corpus registry with expected-tag validation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional

import yaml

from chains.chain import Chain
from generators.families import (
    abelian_cayley,
    biased_segment,
    cycle,
    directed_lazy_cycle,
    double_star,
    hypercube_times_cycle,
    transposition_walk,
)

logger = logging.getLogger(__name__)

FAMILY_REGISTRY: Dict[str, Callable[..., Chain]] = {
    "cycle": cycle,
    "hypercube_times_cycle": hypercube_times_cycle,
    "abelian_cayley": abelian_cayley,
    "transposition_walk": transposition_walk,
    "biased_segment": biased_segment,
    "directed_lazy_cycle": directed_lazy_cycle,
    "double_star": double_star,
}

CURVATURE_EXPECTATIONS = ("yes", "no", "unknown")


def _tri_state(value: Any) -> str:
    # PyYAML reads bare yes/no as booleans.
    if value is True:
        return "yes"
    if value is False:
        return "no"
    if value is None:
        return "unknown"
    text = str(value).strip().lower()
    if text not in CURVATURE_EXPECTATIONS:
        raise ValueError(f"nonneg_curved must be one of {CURVATURE_EXPECTATIONS}, got {value!r}")
    return text


def _optional_bool(value: Any, name: str) -> Optional[bool]:
    if value is None or isinstance(value, bool):
        return value
    raise ValueError(f"expected tag {name!r} must be true, false or null, got {value!r}")


@dataclass(frozen=True)
class ExpectedTags:
    """Ground truth for a corpus chain; None means not asserted."""

    lazy: Optional[bool] = None
    transitive: Optional[bool] = None
    reversible: Optional[bool] = None
    nonneg_curved: str = "unknown"

    @classmethod
    def from_mapping(cls, payload: Optional[Mapping[str, Any]]) -> "ExpectedTags":
        payload = payload or {}
        return cls(
            lazy=_optional_bool(payload.get("lazy"), "lazy"),
            transitive=_optional_bool(payload.get("transitive"), "transitive"),
            reversible=_optional_bool(payload.get("reversible"), "reversible"),
            nonneg_curved=_tri_state(payload.get("nonneg_curved")),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lazy": self.lazy,
            "transitive": self.transitive,
            "reversible": self.reversible,
            "nonneg_curved": self.nonneg_curved,
        }


@dataclass(frozen=True)
class ChainSpec:
    chain_id: str
    family: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    expected: ExpectedTags = field(default_factory=ExpectedTags)
    enabled: bool = True

    def build(self) -> Chain:
        if self.family not in FAMILY_REGISTRY:
            raise KeyError(f"Chain family '{self.family}' is not registered.")
        return FAMILY_REGISTRY[self.family](**self.parameters)


def structural_mismatches(expected: ExpectedTags, observed: Mapping[str, Optional[bool]]) -> List[str]:
    """Names of asserted structural tags that disagree with the observed values."""
    mismatches = []
    for name in ("lazy", "reversible", "transitive"):
        want = getattr(expected, name)
        have = observed.get(name)
        if want is not None and have is not None and want != have:
            mismatches.append(f"{name}: expected {want}, observed {have}")
    return mismatches


class CorpusManager:
    """Load and hold corpus chain specifications."""

    def __init__(self, config_path: Optional[Path] = None, specs: Optional[Iterable[ChainSpec]] = None):
        self.config_path = config_path
        self._specs: Dict[str, ChainSpec] = {}
        for spec in specs or ():
            self._specs[spec.chain_id] = spec

    @classmethod
    def empty(cls) -> "CorpusManager":
        return cls()

    def refresh(self) -> None:
        """Reload the corpus from disk."""
        if self.config_path is None:
            raise ValueError("Corpus manager has no config path to load from.")
        if not self.config_path.exists():
            raise FileNotFoundError(f"Corpus file not found: {self.config_path}")

        with self.config_path.open("r", encoding="utf-8") as handle:
            payload = yaml.safe_load(handle) or {}

        chains = payload.get("chains", {})
        if not isinstance(chains, dict):
            raise ValueError("Corpus configuration must provide a mapping under 'chains'.")

        self._specs.clear()
        for key, data in chains.items():
            if not isinstance(data, dict):
                logger.warning("Skipping invalid corpus entry for %s; expected mapping.", key)
                continue
            family = data.get("family")
            if family not in FAMILY_REGISTRY:
                raise KeyError(f"Corpus entry '{key}' names unknown family {family!r}.")
            self._specs[str(key)] = ChainSpec(
                chain_id=str(key),
                family=family,
                parameters=dict(data.get("parameters") or {}),
                expected=ExpectedTags.from_mapping(data.get("expected")),
                enabled=bool(data.get("enabled", True)),
            )
        logger.info("Loaded %s corpus chains from %s", len(self._specs), self.config_path)

    def available(self) -> List[str]:
        return sorted(self._specs)

    def get_spec(self, chain_id: str) -> ChainSpec:
        if chain_id not in self._specs:
            raise KeyError(f"Chain '{chain_id}' not loaded from the corpus.")
        return self._specs[chain_id]

    def active_specs(self) -> List[ChainSpec]:
        """Enabled specs sorted by chain id."""
        return [self._specs[key] for key in sorted(self._specs) if self._specs[key].enabled]
