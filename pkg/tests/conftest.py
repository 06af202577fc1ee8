"""Shared pytest configuration: environment defaults and small reference chains."""

from __future__ import annotations

import os
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

os.environ.setdefault("CURVMIX_LOG_LEVEL", "WARNING")
os.environ.setdefault("CURVMIX_MODE", "exact")
os.environ.setdefault("CURVMIX_SEED", "0")
os.environ.setdefault("CURVMIX_THREADS", "1")
os.environ.setdefault("CURVMIX_MC_TRIALS", "2000")
os.environ.setdefault("CURVMIX_PROPERTY_DRAWS", "20")

from chains.chain import Chain, build_chain  # noqa: E402
from generators.families import biased_segment, cycle, directed_lazy_cycle, hypercube_times_cycle  # noqa: E402

FIXTURE_DIR = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixture_dir() -> Path:
    return FIXTURE_DIR


@pytest.fixture
def lazy_cycle4() -> Chain:
    """Lazy simple random walk on the 4-cycle: Phi = 1/4, lambda_2 = 1/2, t_mix = 1."""
    return cycle(4)


@pytest.fixture
def z2_z4() -> Chain:
    """Lazy walk on Z_2 x Z_4: P_min = 1/6, lambda_2 = 2/3, Phi = 1/6."""
    return hypercube_times_cycle(1, 4)


@pytest.fixture
def segment3() -> Chain:
    """Biased lazy segment on three states with p = 3/4."""
    return biased_segment(3, Fraction(3, 4))


@pytest.fixture
def directed3() -> Chain:
    return directed_lazy_cycle(3)


@pytest.fixture
def two_state() -> Chain:
    return build_chain([["1/2", "1/2"], ["1/2", "1/2"]])
