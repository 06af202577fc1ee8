"""
Chain generators and the verification corpus.

Updates: v0.1.0 - 2026-10-16 - Cycle, Cayley, transposition, segment, directed-cycle and double-star families.
"""

from generators.corpus import FAMILY_REGISTRY, ChainSpec, CorpusManager, ExpectedTags, structural_mismatches
from generators.families import (
    abelian_cayley,
    biased_segment,
    cycle,
    directed_lazy_cycle,
    double_star,
    hypercube_times_cycle,
    transposition_walk,
)

__all__ = [
    "FAMILY_REGISTRY",
    "ChainSpec",
    "CorpusManager",
    "ExpectedTags",
    "abelian_cayley",
    "biased_segment",
    "cycle",
    "directed_lazy_cycle",
    "double_star",
    "hypercube_times_cycle",
    "structural_mismatches",
    "transposition_walk",
]
