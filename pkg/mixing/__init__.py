"""
Total-variation mixing, displacement and symmetry of finite chains.

Updates: v0.1.0 - 2026-10-16 - Mixing profiles, displacement curves, transitivity search.
"""

from mixing.profiles import (
    MIXING_THRESHOLD,
    DisplacementCurve,
    MixingProfile,
    build_trace,
    default_horizon,
    displacement_curve,
    effective_diameter,
    iter_statistics,
    mixing_profile,
    tv_distance,
)
from mixing.symmetry import is_transitive, search_transitive

__all__ = [
    "MIXING_THRESHOLD",
    "DisplacementCurve",
    "MixingProfile",
    "build_trace",
    "default_horizon",
    "displacement_curve",
    "effective_diameter",
    "is_transitive",
    "iter_statistics",
    "mixing_profile",
    "search_transitive",
    "tv_distance",
]
