"""
Finite Markov chain primitives.

Updates: v0.1.0 - 2026-10-16 - Chain, DirectedMetric, StationaryDist, TransitionPowers and JSON I/O.
"""

from chains.chain import (
    EXACT,
    FLOAT,
    Chain,
    DirectedMetric,
    StationaryDist,
    build_chain,
    directed_metric,
    is_lazy,
    is_reversible,
    lazify,
    matrix_power_row,
    p_min,
    stationary,
)
from chains.io import dumps_chain, load_chain, loads_chain, save_chain
from chains.powers import TransitionPowers

__all__ = [
    "EXACT",
    "FLOAT",
    "Chain",
    "DirectedMetric",
    "StationaryDist",
    "TransitionPowers",
    "build_chain",
    "directed_metric",
    "dumps_chain",
    "is_lazy",
    "is_reversible",
    "lazify",
    "load_chain",
    "loads_chain",
    "matrix_power_row",
    "p_min",
    "save_chain",
    "stationary",
]
