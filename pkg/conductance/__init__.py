"""
Conductance, spectra and conductance-driven functional inequalities.

Updates: v0.1.0 - 2026-10-16 - Exhaustive/sweep conductance, spectral profile, L1 Cheeger and concentration checks.
"""

from conductance.cheeger import (
    DEFAULT_ENUMERATION_LIMIT,
    ConductanceValue,
    conductance,
    conductance_of_matrix,
    subset_ratio,
    sweep_conductance,
)
from conductance.functional import centre, check_concentration, check_l1_cheeger
from conductance.spectral import SpectralProfile, spectral_profile

__all__ = [
    "DEFAULT_ENUMERATION_LIMIT",
    "ConductanceValue",
    "SpectralProfile",
    "centre",
    "check_concentration",
    "check_l1_cheeger",
    "conductance",
    "conductance_of_matrix",
    "spectral_profile",
    "subset_ratio",
    "sweep_conductance",
]
