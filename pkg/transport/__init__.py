"""
Optimal transport under directed metrics.

Updates: v0.1.0 - 2026-10-16 - Transportation simplex, W1 with dual certificates, curvature, coupling kernel.
"""

from transport.curvature import (
    CurvatureCertificate,
    CurvatureVerdict,
    CurvatureWitness,
    certify_curvature,
    full_pair_check,
)
from transport.kernel import CouplingKernel, coupling_kernel
from transport.simplex import TransportationSimplex, TransportSolution
from transport.wasserstein import (
    Coupling,
    DualCertificate,
    TransportResult,
    good_optimal_coupling,
    good_set,
    good_set_mass,
    w1,
)

__all__ = [
    "Coupling",
    "CouplingKernel",
    "CurvatureCertificate",
    "CurvatureVerdict",
    "CurvatureWitness",
    "DualCertificate",
    "TransportResult",
    "TransportSolution",
    "TransportationSimplex",
    "certify_curvature",
    "coupling_kernel",
    "full_pair_check",
    "good_optimal_coupling",
    "good_set",
    "good_set_mass",
    "w1",
]
