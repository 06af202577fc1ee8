"""Tests for TV profiles, mixing times, displacement curves and transitivity."""

from __future__ import annotations

from fractions import Fraction

import pytest

from chains.chain import build_chain, directed_metric, p_min, stationary
from errors import InvariantViolation, TooLargeError
from generators.families import biased_segment, cycle, double_star
from mixing.profiles import (
    build_trace,
    default_horizon,
    displacement_curve,
    effective_diameter,
    mixing_profile,
    tv_distance,
)
from mixing.symmetry import TRANSITIVE_TAG, is_transitive, search_transitive

F = Fraction


def test_tv_distance_exact_and_float() -> None:
    assert tv_distance([1, 0], [0, 1]) == 1
    assert tv_distance([F(1, 2), F(1, 2)], [F(1, 4), F(3, 4)]) == F(1, 4)
    assert tv_distance([0.5, 0.5], [0.25, 0.75]) == pytest.approx(0.25)
    with pytest.raises(ValueError):
        tv_distance([1], [F(1, 2), F(1, 2)])


def test_lazy_cycle_mixing_profile(lazy_cycle4) -> None:
    profile = mixing_profile(lazy_cycle4)
    assert profile.tv_curve == (F(3, 4), F(1, 4))
    assert profile.avg_tv_curve == (F(3, 4), F(1, 4))
    assert profile.t_mix == 1
    assert profile.t_mix_sharp == 1
    assert not profile.truncated
    assert profile.rows_constant
    assert profile.switched_at is None
    assert profile.horizon == 512
    assert profile.to_dict()["threshold"]["value"] == "1/4"


def test_reference_mixing_time(z2_z4) -> None:
    profile = mixing_profile(z2_z4)
    assert profile.t_mix == 3
    assert profile.t_mix_sharp <= profile.t_mix
    assert all(later <= earlier for earlier, later in zip(profile.tv_curve, profile.tv_curve[1:]))


def test_horizon_truncates_profile(z2_z4) -> None:
    profile = mixing_profile(z2_z4, 1)
    assert profile.truncated
    assert profile.t_mix is None
    assert len(profile.tv_curve) == 2
    with pytest.raises(ValueError):
        mixing_profile(z2_z4, 0)


def test_rows_differ_on_segment(segment3) -> None:
    profile = mixing_profile(segment3)
    assert not profile.rows_constant
    assert profile.tv_curve[0] == F(12, 13)


def test_default_horizon(lazy_cycle4) -> None:
    metric = directed_metric(lazy_cycle4)
    assert default_horizon(metric, p_min(lazy_cycle4)) == 512
    assert default_horizon(metric, 0.25) == 512


def test_displacement_curve_and_effective_diameter(lazy_cycle4) -> None:
    metric = directed_metric(lazy_cycle4)
    curve = displacement_curve(lazy_cycle4, metric, 2)
    assert curve.values == (0, F(1, 2), F(3, 4))
    assert curve.diam == 2
    assert curve.diam_sharp == 1
    assert effective_diameter(metric, stationary(lazy_cycle4)) == 1
    with pytest.raises(ValueError):
        displacement_curve(lazy_cycle4, metric, -1)


def test_trace_frame_columns(lazy_cycle4) -> None:
    profile = mixing_profile(lazy_cycle4)
    curve = displacement_curve(lazy_cycle4, directed_metric(lazy_cycle4), len(profile.tv_curve) - 1)
    frame = build_trace(profile, curve, {1: F(1, 4)})
    assert list(frame.columns) == [
        "t",
        "d_tv",
        "d_tv_sharp",
        "displacement",
        "phi_pt",
        "d_tv_exact",
        "d_tv_sharp_exact",
        "displacement_exact",
    ]
    assert frame.loc[1, "d_tv"] == "0.250000000000"
    assert frame.loc[1, "d_tv_exact"] == "1/4"
    assert frame.loc[1, "displacement_exact"] == "1/2"
    assert frame.loc[0, "phi_pt"] == ""


def test_float_profile_matches_exact(lazy_cycle4) -> None:
    profile = mixing_profile(lazy_cycle4.as_float())
    assert profile.t_mix == 1
    assert profile.tv_curve[1] == pytest.approx(0.25)


def test_transitivity_search(lazy_cycle4, z2_z4, segment3, directed3) -> None:
    assert is_transitive(lazy_cycle4)
    assert search_transitive(z2_z4)
    assert is_transitive(directed3)
    assert not is_transitive(segment3)
    assert not is_transitive(double_star(2))


def test_transitivity_limits() -> None:
    # Tagged chains above the search limit are trusted without a search.
    assert is_transitive(cycle(16))
    with pytest.raises(TooLargeError):
        is_transitive(biased_segment(13))


def test_tagged_chain_without_symmetry_is_an_invariant_violation(segment3) -> None:
    chain = build_chain(segment3.P, meta={"tags": [TRANSITIVE_TAG]})
    with pytest.raises(InvariantViolation):
        is_transitive(chain)
