"""Tests for exhaustive conductance, the sweep bound and spectral profiles."""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest

from chains.chain import build_chain, stationary
from conductance.cheeger import conductance, conductance_of_matrix, power_matrix, sweep_conductance
from conductance.spectral import spectral_profile
from errors import InvariantViolation, NoAdmissibleSetError, NotReversibleError, TooLargeError
from generators.families import biased_segment, cycle, hypercube_times_cycle, transposition_walk

F = Fraction


def _brute_force_phi(matrix: np.ndarray, pi: np.ndarray) -> Fraction:
    n = len(pi)
    best = None
    for size in range(1, n):
        for inside in itertools.combinations(range(n), size):
            mass = sum((pi[x] for x in inside), F(0))
            if 2 * mass > 1:
                continue
            outside = [y for y in range(n) if y not in inside]
            flow = sum((pi[x] * matrix[x, y] for x in inside for y in outside), F(0))
            ratio = flow / mass
            best = ratio if best is None else min(best, ratio)
    return best


def _random_chain(rng: np.random.Generator, n: int):
    rows = []
    for x in range(n):
        weights = rng.integers(0, 4, size=n)
        weights[x] += 1
        weights[(x + 1) % n] += 1
        total = int(weights.sum())
        rows.append([F(int(w), total) for w in weights])
    return build_chain(rows)


def test_lazy_cycle_conductance(lazy_cycle4) -> None:
    value = conductance(lazy_cycle4)
    assert value.phi == F(1, 4)
    assert value.argmin_set == 3
    assert value.members() == [0, 1]
    assert not value.upper_bound
    assert value.to_dict()["phi"]["value"] == "1/4"


def test_conductance_of_powers(lazy_cycle4) -> None:
    assert conductance(lazy_cycle4, 2).phi == F(3, 8)
    matrix = power_matrix(lazy_cycle4, 3)
    pi = stationary(lazy_cycle4).pi
    assert conductance_of_matrix(matrix, pi, t=3).phi == _brute_force_phi(matrix, pi)


def test_reference_chain_values(z2_z4) -> None:
    assert conductance(z2_z4).phi == F(1, 6)
    non_lazy = cycle(5, lazy=False)
    value = conductance(non_lazy)
    assert value.phi == F(1, 2)
    assert value.argmin_set == 3


def test_conductance_matches_brute_force() -> None:
    rng = np.random.default_rng(7)
    for _ in range(40):
        n = int(rng.integers(2, 8))
        chain = _random_chain(rng, n)
        pi = stationary(chain).pi
        assert conductance(chain).phi == _brute_force_phi(chain.P, pi)


@pytest.mark.parametrize("n", [8, 9, 10, 11, 12])
def test_conductance_matches_brute_force_up_to_twelve_states(n) -> None:
    rng = np.random.default_rng(100 + n)
    for _ in range(2):
        chain = _random_chain(rng, n)
        pi = stationary(chain).pi
        value = conductance(chain)
        assert value.phi == _brute_force_phi(chain.P, pi)
        assert 2 * sum((pi[x] for x in value.members()), F(0)) <= 1


def test_threads_and_blocks_agree() -> None:
    chain = cycle(18)
    single = conductance(chain, threads=1)
    pooled = conductance(chain, threads=3)
    assert single.phi == pooled.phi == F(1, 18)
    assert single.argmin_set == pooled.argmin_set == (1 << 9) - 1


def test_float_mode_conductance(lazy_cycle4) -> None:
    value = conductance(lazy_cycle4.as_float())
    assert value.phi == pytest.approx(0.25)
    assert value.argmin_set == 3


def test_conductance_limits() -> None:
    with pytest.raises(TooLargeError):
        conductance(cycle(5), enumeration_limit=4)
    with pytest.raises(NoAdmissibleSetError):
        conductance(build_chain([[1]]))


def test_sweep_is_an_upper_bound(z2_z4) -> None:
    exact = conductance(z2_z4)
    sweep = sweep_conductance(z2_z4)
    assert sweep.upper_bound
    assert sweep.phi >= exact.phi


def test_spectral_profiles(lazy_cycle4, z2_z4) -> None:
    profile = spectral_profile(lazy_cycle4)
    assert profile.eigenvalues[0] == pytest.approx(1.0, abs=1e-12)
    assert profile.lambda2 == pytest.approx(0.5, abs=1e-12)
    assert profile.t_rel == pytest.approx(2.0, abs=1e-9)
    assert profile.eigenvalues[-1] == pytest.approx(0.0, abs=1e-12)

    assert spectral_profile(z2_z4).t_rel == pytest.approx(3.0, abs=1e-9)


def test_spectral_profile_errors(directed3) -> None:
    with pytest.raises(NotReversibleError):
        spectral_profile(directed3)
    with pytest.raises(ValueError):
        spectral_profile(build_chain([[1]]))


def test_lazy_spectra_lie_in_unit_interval(segment3) -> None:
    for chain in (cycle(7), hypercube_times_cycle(2, 4), transposition_walk(3), biased_segment(6), segment3):
        values = spectral_profile(chain).eigenvalues
        assert values[0] == pytest.approx(1.0, abs=1e-9)
        assert all(-1e-9 <= value <= 1 + 1e-9 for value in values)
        assert list(values) == sorted(values, reverse=True)


def test_non_lazy_spectrum_reaches_minus_one() -> None:
    values = spectral_profile(cycle(4, lazy=False)).eigenvalues
    assert values[-1] == pytest.approx(-1.0, abs=1e-9)


def test_spectrum_violations_are_reported(monkeypatch, lazy_cycle4) -> None:
    import conductance.spectral as spectral_module

    monkeypatch.setattr(spectral_module, "eigh", lambda matrix, eigvals_only: np.array([-0.1, 0.0, 0.5, 0.9]))
    with pytest.raises(InvariantViolation, match="leading eigenvalue"):
        spectral_profile(lazy_cycle4)

    monkeypatch.setattr(spectral_module, "eigh", lambda matrix, eigvals_only: np.array([-0.2, 0.0, 0.5, 1.0]))
    with pytest.raises(InvariantViolation, match="negative eigenvalue"):
        spectral_profile(lazy_cycle4)

    monkeypatch.setattr(spectral_module, "eigh", lambda matrix, eigvals_only: np.array([-1.5, 0.0, 0.5, 1.0]))
    with pytest.raises(InvariantViolation, match="exceeds 1"):
        spectral_profile(lazy_cycle4)
