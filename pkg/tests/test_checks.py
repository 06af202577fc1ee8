"""Tests for the per-chain evaluation context and the inequality checks."""

from __future__ import annotations

import math
from fractions import Fraction

import pytest

from errors import HypothesisSkip, TooLargeError, TruncationError
from generators.families import biased_segment, cycle, double_star, hypercube_times_cycle
from verifier import checks
from verifier.context import ChainContext
from verifier.report import InequalityReport, Status
from verifier.suite import SuiteConfig

F = Fraction

FAST = SuiteConfig(mc_trials=2000, property_draws=20)


@pytest.fixture
def cycle_ctx(lazy_cycle4) -> ChainContext:
    return ChainContext(lazy_cycle4, "cycle-4-lazy")


def _single(records):
    assert len(records) == 1
    return records[0]


def test_context_quantities(cycle_ctx) -> None:
    assert cycle_ctx.hypotheses() == {
        "lazy": True,
        "reversible": True,
        "transitive": True,
        "nonneg_curved": True,
    }
    assert cycle_ctx.pmin == F(1, 4)
    assert cycle_ctx.diam_sharp == 1
    assert cycle_ctx.horizon == 512
    assert cycle_ctx.window == 4
    assert cycle_ctx.phi(1).phi == F(1, 4)
    assert cycle_ctx.phi(2).phi == F(3, 8)
    assert cycle_ctx.statistics(2).displacement == F(3, 4)
    assert cycle_ctx.spectral.t_rel == pytest.approx(2.0)


def test_context_profile_payload(cycle_ctx) -> None:
    payload = cycle_ctx.profile().to_dict()
    assert payload["n"] == 4
    assert payload["t_mix"] == 1
    assert payload["p_min"] == {"value": "1/4", "decimal": "0.250000000000"}
    assert payload["phi"]["argmin_set"] == [0, 1]
    assert payload["curvature"]["verdict"] == "non-negative"
    assert payload["phi_note"] == ""


def test_context_large_chain_uses_sweep() -> None:
    ctx = ChainContext(cycle(8), "cycle-8-lazy", enumeration_limit=6)
    payload = ctx.profile().to_dict()
    assert payload["phi"]["upper_bound"] is True
    assert payload["phi_note"] == "sweep upper bound"
    with pytest.raises(TooLargeError):
        ctx.require_conductance()


def test_context_require_and_truncation(z2_z4) -> None:
    ctx = ChainContext(double_star(2), "double-star-2")
    with pytest.raises(HypothesisSkip) as excinfo:
        ctx.require(lazy=True, nonneg_curved=True)
    assert excinfo.value.hypotheses["nonneg_curved"] is False
    assert "nonneg_curved" in excinfo.value.reason

    short = ChainContext(z2_z4, "z2xz4", horizon=1)
    with pytest.raises(TruncationError):
        short.mixing_times()


def test_bound_formulas() -> None:
    assert checks.tv_decay_rhs_squared(2, 0, F(1, 4)) == 160
    assert checks.diameter_bound(2, F(1, 4)) == 2560
    assert checks.effective_diameter_bound(1, F(1, 4)) == 2560
    assert checks.conductance_bound(F(1, 4), F(1, 4)) == 2560
    # With displacement 1/2 the main-estimate term equals the conductance bound.
    assert checks.main_estimate_term(F(1, 4), F(1, 2), F(1, 4)) == 2560
    assert checks.expansion_rhs_squared(F(1, 4), 1) == 1444
    assert checks.buser_bound(F(1, 4), F(1, 4)) == F(1, 3)


def test_mixing_time_checks(cycle_ctx) -> None:
    diameter, effective = checks.check_diam_bound(cycle_ctx, FAST)
    assert (diameter.lhs, diameter.rhs) == (1, 2560)
    assert (effective.lhs, effective.rhs) == (1, 2560)

    bound = _single(checks.check_conductance_bound(cycle_ctx, FAST))
    assert bound.status is Status.PASS
    assert bound.rhs == 2560
    assert bound.parameters["argmin_set"] == [0, 1]

    main = _single(checks.check_main_estimate(cycle_ctx, FAST))
    assert main.passed
    assert main.rhs <= 2560
    assert main.parameters["t1_conductance_bound"] == 2560
    assert main.parameters["window"] == 4


def test_expansion_and_lower_bounds(cycle_ctx) -> None:
    expansion, lazified, direct = checks.check_expansion_bound(cycle_ctx, FAST)
    assert expansion.lhs == F(1, 4)
    assert expansion.rhs == pytest.approx(38.0)
    assert expansion.mode == "exact"
    assert lazified.rhs == 2624
    assert direct.rhs == 20992
    assert all(record.passed for record in (expansion, lazified, direct))

    lower = _single(checks.check_diam_lower(cycle_ctx, FAST))
    assert (lower.lhs, lower.rhs) == (-15, 1)


def test_escape_and_cutoff(cycle_ctx) -> None:
    escape = _single(checks.check_escape(cycle_ctx, FAST))
    assert escape.passed
    assert escape.parameters["grid_start"] == 2

    records = {record.statement: record for record in checks.check_cutoff_ratios(cycle_ctx, FAST)}
    assert set(records) == {
        "cutoff_buser_link",
        "cutoff_relaxation_link",
        "cutoff_mixing_equality",
        "cutoff_conductance_link",
    }
    assert all(record.passed for record in records.values())
    assert records["cutoff_relaxation_link"].lhs == pytest.approx(math.log(2))
    assert records["cutoff_mixing_equality"].parameters["rows_constant"] is True

    buser = _single(checks.check_buser(cycle_ctx, FAST))
    assert buser.mode == "float"
    assert buser.lhs == pytest.approx(1 / 3)


def test_cutoff_needs_transitive_chain(segment3) -> None:
    ctx = ChainContext(segment3, "segment-3")
    with pytest.raises(HypothesisSkip):
        checks.check_cutoff_ratios(ctx, FAST)


def test_cutoff_skips_below_probability_level() -> None:
    ctx = ChainContext(cycle(4), "cycle-4-lazy")
    with pytest.raises(HypothesisSkip):
        checks.check_cutoff_ratios(ctx, SuiteConfig(cutoff_p=F(1, 2)))


def test_decay_and_coupling_checks(cycle_ctx) -> None:
    decay = _single(checks.check_tv_decay(cycle_ctx, FAST))
    assert decay.passed
    assert decay.parameters["tail_certified_at"] is not None

    spectral = _single(checks.check_power_conductance_spectral(cycle_ctx, FAST))
    assert spectral.passed

    good = _single(checks.check_good_coupling(cycle_ctx, FAST))
    assert good.lhs == F(1, 4)
    assert good.passed
    assert good.parameters["pairs"] == 12

    assert _single(checks.check_coupling_supermartingale(cycle_ctx, FAST)).passed
    assert _single(checks.check_coupling_domination(cycle_ctx, FAST)).passed

    hitting = _single(checks.check_hitting_time(cycle_ctx, FAST))
    assert hitting.passed
    assert hitting.parameters["z0"] == 2


def test_property_checks(cycle_ctx) -> None:
    l1 = _single(checks.check_l1_property(cycle_ctx, FAST))
    assert l1.passed
    assert l1.parameters["draws"] == 20

    tails = checks.check_concentration_property(cycle_ctx, FAST)
    assert [record.statement for record in tails] == [
        "concentration_lower",
        "concentration_lower_lazy",
        "concentration_upper",
        "concentration_upper_lazy",
    ]
    assert all(record.passed for record in tails)


def test_negatively_curved_chain_skips() -> None:
    ctx = ChainContext(double_star(2), "double-star-2")
    for check in (checks.check_tv_decay, checks.check_diam_bound, checks.check_coupling_supermartingale):
        with pytest.raises(HypothesisSkip):
            check(ctx, FAST)


def test_coupling_checks_limited_by_size() -> None:
    ctx = ChainContext(biased_segment(13), "segment-13")
    with pytest.raises(TooLargeError):
        checks.check_coupling_domination(ctx, FAST)


def test_float_mode_checks(lazy_cycle4) -> None:
    ctx = ChainContext(lazy_cycle4.as_float(), "cycle-4-float")
    bound = _single(checks.check_conductance_bound(ctx, FAST))
    assert bound.mode == "float"
    assert bound.rhs == pytest.approx(2560.0)
    assert bound.passed


def test_tightest_prefers_failures() -> None:
    loose = InequalityReport.evaluate("s", "c", 1, 10)
    tight = InequalityReport.evaluate("s", "c", 9, 10)
    failing = InequalityReport.evaluate("s", "c", 11, 10)
    assert checks.tightest([loose, tight]) is tight
    assert checks.tightest([loose, failing, tight]) is failing


def test_chain_rng_streams() -> None:
    first = checks.chain_rng(0, "cycle-4-lazy", 1).random(3)
    again = checks.chain_rng(0, "cycle-4-lazy", 1).random(3)
    other = checks.chain_rng(0, "cycle-4-lazy", 2).random(3)
    assert list(first) == list(again)
    assert list(first) != list(other)


@pytest.mark.parametrize(
    "d,expected_start,expected_ratio",
    [
        (1, 3, 57 / 54 * 41 / math.sqrt(3 / 6)),
        # E[d(X_0, X_5)] = 3 * (1 - 0.8^5) / 2 + 0.67232 and t_mix# = 6 with P_min = 1/10.
        (3, 5, 1.6808 * 41 / math.sqrt(6 / 10)),
    ],
)
def test_escape_sharpness_on_hypercube_products(d, expected_start, expected_ratio) -> None:
    ctx = ChainContext(hypercube_times_cycle(d, 4), f"hypercube-{d}x4")
    escape = _single(checks.check_escape(ctx, FAST))
    assert escape.passed
    assert escape.parameters["grid_start"] == expected_start
    ratio = escape.parameters["sharpness_ratio"]
    assert 1 / 100 <= ratio <= 100
    assert ratio == pytest.approx(expected_ratio, rel=1e-6)
