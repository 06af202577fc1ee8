"""
Inequality checks evaluated on one chain.

Each check takes a :class:`verifier.context.ChainContext` and the suite
settings and returns InequalityReport records. Unmet hypotheses raise
HypothesisSkip; conductance-dependent checks raise TooLargeError above the
enumeration limit; checks that need a mixing time raise TruncationError when
the horizon was hit first.

Checks over a range of t report the tightest instance (largest lhs/rhs) and
stop early once the rest of the range is certified by monotonicity.
"""

from __future__ import annotations

import logging
import math
import zlib
from fractions import Fraction
from typing import TYPE_CHECKING, Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from chains.arithmetic import Scalar, less_equal, to_float
from chains.chain import lazify, p_min
from conductance.functional import centre, check_concentration, check_l1_cheeger
from errors import HypothesisSkip, InvariantViolation, TooLargeError, TruncationError
from transport.wasserstein import good_set_mass
from utils.helpers import is_exact
from verifier.context import ChainContext
from verifier.report import InequalityReport, Status
from verifier.supermartingale import CoupledDistanceProcess, simulate_supermartingale

if TYPE_CHECKING:
    from verifier.suite import SuiteConfig

logger = logging.getLogger(__name__)

COUPLING_LIMIT = 12
DOMINATION_STEPS = 32
HITTING_GRID = (4, 16, 64, 256)
PROPERTY_SALT = 1
HITTING_SALT = 2
TV_DECAY_CONSTANT = 10
DIAMETER_CONSTANT = 160
EFFECTIVE_DIAMETER_CONSTANT = 640
MAIN_CONSTANT = 160
CONDUCTANCE_CONSTANT = 40
EXPANSION_CONSTANT = 19
LAZY_DIAMETER_CONSTANT = 41
NONLAZY_DIAMETER_CONSTANT = 328
ESCAPE_CONSTANT = 41
BUSER_CONSTANT = 12
DIAMETER_LOWER_CONSTANT = 4


def chain_rng(seed: int, chain_id: str, salt: int) -> np.random.Generator:
    """Independent stream per (seed, chain, purpose)."""
    return np.random.default_rng([seed, zlib.crc32(chain_id.encode("utf-8")), salt])


def _half(exact: bool) -> Scalar:
    return Fraction(1, 2) if exact else 0.5


def _ratio(lhs: Any, rhs: Any) -> float:
    lhs_f, rhs_f = to_float(lhs), to_float(rhs)
    if rhs_f == 0:
        return math.inf if lhs_f > 0 else 0.0
    return lhs_f / rhs_f


def tightest(reports: Sequence[InequalityReport]) -> InequalityReport:
    """Failing records first, then the largest lhs/rhs."""
    return min(reports, key=lambda record: (bool(record.passed), -_ratio(record.lhs, record.rhs)))


# Bound formulas shared by the checks and by recomputation in tests.

def tv_decay_rhs_squared(distance: int, t: int, pmin: Scalar) -> Scalar:
    return distance * distance * TV_DECAY_CONSTANT / ((t + 1) * pmin)


def diameter_bound(diam: int, pmin: Scalar) -> Scalar:
    return DIAMETER_CONSTANT * diam * diam / pmin


def effective_diameter_bound(diam_sharp: Scalar, pmin: Scalar) -> Scalar:
    return EFFECTIVE_DIAMETER_CONSTANT * diam_sharp * diam_sharp / pmin


def main_estimate_term(pmin: Scalar, displacement: Scalar, phi: Scalar) -> Scalar:
    return MAIN_CONSTANT / pmin * (displacement / phi) ** 2


def conductance_bound(pmin: Scalar, phi: Scalar) -> Scalar:
    return CONDUCTANCE_CONSTANT / (pmin * phi * phi)


def expansion_rhs_squared(pmin: Scalar, diam_sharp: Scalar) -> Scalar:
    return EXPANSION_CONSTANT ** 2 / (pmin * diam_sharp)


def escape_lhs_squared(t_mix_sharp: int, pmin: Scalar) -> Scalar:
    return t_mix_sharp * pmin / ESCAPE_CONSTANT ** 2


def buser_bound(pmin: Scalar, phi: Scalar) -> Scalar:
    return pmin / (BUSER_CONSTANT * phi * phi)


def check_tv_decay(ctx: ChainContext, config: "SuiteConfig") -> List[InequalityReport]:
    """||P^t(x,.) - P^t(y,.)|| <= d(x, y) sqrt(10 / ((t + 1) P_min)) over all pairs and t <= horizon."""
    ctx.require(lazy=True, nonneg_curved=True)
    chain, metric, pmin, horizon = ctx.chain, ctx.metric, ctx.pmin, ctx.horizon
    pairs = [(x, y) for x in range(chain.n) for y in range(chain.n) if x != y]
    if not pairs:
        raise HypothesisSkip("a single state has no pairs", ctx.hypotheses())

    powers = ctx.new_powers()
    worst: Optional[Tuple[Any, int, int, int, Scalar, Scalar]] = None
    certified_at: Optional[int] = None
    t = 0
    while True:
        tv = powers.pairwise_tv()
        spread: Scalar = 0
        for x, y in pairs:
            distance = int(metric.d[x, y])
            lhs = tv[x, y]
            rhs_squared = tv_decay_rhs_squared(distance, t, pmin)
            ratio = lhs * lhs / rhs_squared
            if worst is None or ratio > worst[0]:
                worst = (ratio, t, x, y, lhs, rhs_squared)
            spread = max(spread, lhs * lhs / (distance * distance))
        # Pairwise TV is non-increasing in t, so the rest of the range is dominated.
        if spread * (horizon + 1) * pmin <= TV_DECAY_CONSTANT:
            certified_at = t
            break
        if t >= horizon:
            break
        powers.advance()
        t += 1

    _, t_worst, x, y, lhs, rhs_squared = worst
    return [
        InequalityReport.evaluate(
            "tv_decay",
            ctx.chain_id,
            lhs,
            None,
            rhs_squared=rhs_squared,
            hypotheses=ctx.hypotheses(),
            parameters={
                "t": t_worst,
                "x": x,
                "y": y,
                "distance": int(metric.d[x, y]),
                "p_min": pmin,
                "horizon": horizon,
                "checked_until": t,
                "tail_certified_at": certified_at,
                "switched_at": powers.switched_at,
            },
        )
    ]


def check_diam_bound(ctx: ChainContext, config: "SuiteConfig") -> List[InequalityReport]:
    """t_mix <= 160 diam^2 / P_min and t_mix# <= 640 (diam#)^2 / P_min."""
    ctx.require(lazy=True, nonneg_curved=True)
    profile = ctx.mixing_times()
    hypotheses = ctx.hypotheses()
    return [
        InequalityReport.evaluate(
            "diameter_bound",
            ctx.chain_id,
            profile.t_mix,
            diameter_bound(ctx.metric.diam, ctx.pmin),
            hypotheses=hypotheses,
            parameters={"diam": ctx.metric.diam, "p_min": ctx.pmin},
        ),
        InequalityReport.evaluate(
            "effective_diameter_bound",
            ctx.chain_id,
            profile.t_mix_sharp,
            effective_diameter_bound(ctx.diam_sharp, ctx.pmin),
            hypotheses=hypotheses,
            parameters={"diam_sharp": ctx.diam_sharp, "p_min": ctx.pmin},
        ),
    ]


def check_main_estimate(ctx: ChainContext, config: "SuiteConfig") -> List[InequalityReport]:
    """t_mix# <= (160 / P_min) min_t (E[d(X_0, X_t)] / Phi(P^t))^2 over t = 1..window.

    The t = 1 term with E[d(X_0, X_1)] <= 1/2 must reproduce 40 / (P_min Phi^2).
    """
    ctx.require(lazy=True, nonneg_curved=True)
    ctx.require_conductance()
    profile = ctx.mixing_times()
    window = ctx.window
    pmin = ctx.pmin

    best: Optional[Tuple[Scalar, int]] = None
    for t in range(1, window + 1):
        term = main_estimate_term(pmin, ctx.statistics(t).displacement, ctx.phi(t).phi)
        if best is None or term < best[0]:
            best = (term, t)

    first = ctx.statistics(1).displacement
    half = _half(is_exact(first))
    phi1 = ctx.phi(1).phi
    if not less_equal(first, half):
        raise InvariantViolation(f"lazy one-step displacement {first} exceeds 1/2")
    specialised = main_estimate_term(pmin, half, phi1)
    direct = conductance_bound(pmin, phi1)
    agree = specialised == direct if is_exact(specialised) and is_exact(direct) else math.isclose(
        to_float(specialised), to_float(direct), rel_tol=1e-12
    )
    if not agree:
        raise InvariantViolation(f"t=1 main-estimate term {specialised} differs from {direct}")

    term, t_star = best
    return [
        InequalityReport.evaluate(
            "main_estimate",
            ctx.chain_id,
            profile.t_mix_sharp,
            term,
            hypotheses=ctx.hypotheses(),
            parameters={
                "t": t_star,
                "window": window,
                "displacement": ctx.statistics(t_star).displacement,
                "phi": ctx.phi(t_star).phi,
                "argmin_set": ctx.phi(t_star).members(),
                "p_min": pmin,
                "t1_term": main_estimate_term(pmin, first, phi1),
                "t1_conductance_bound": direct,
            },
        )
    ]


def check_conductance_bound(ctx: ChainContext, config: "SuiteConfig") -> List[InequalityReport]:
    """t_mix# <= 40 / (P_min Phi^2)."""
    ctx.require(lazy=True, nonneg_curved=True)
    ctx.require_conductance()
    profile = ctx.mixing_times()
    phi = ctx.phi(1)
    return [
        InequalityReport.evaluate(
            "conductance_bound",
            ctx.chain_id,
            profile.t_mix_sharp,
            conductance_bound(ctx.pmin, phi.phi),
            hypotheses=ctx.hypotheses(),
            parameters={"phi": phi.phi, "argmin_set": phi.members(), "p_min": ctx.pmin},
        )
    ]


def check_expansion_bound(ctx: ChainContext, config: "SuiteConfig") -> List[InequalityReport]:
    """Phi <= 19 / sqrt(P_min diam#), plus the diameter bounds it is derived from."""
    ctx.require(nonneg_curved=True)
    ctx.require_conductance()
    phi = ctx.phi(1).phi
    pmin, diam_sharp = ctx.pmin, ctx.diam_sharp
    hypotheses = ctx.hypotheses()
    if ctx.lazy:
        lazy_phi, lazy_pmin = phi, pmin
    else:
        # Off-diagonal flows halve under lazification.
        lazy_phi, lazy_pmin = phi * _half(is_exact(phi)), p_min(lazify(ctx.chain))
    return [
        InequalityReport.evaluate(
            "expansion_bound",
            ctx.chain_id,
            phi,
            None,
            rhs_squared=expansion_rhs_squared(pmin, diam_sharp),
            hypotheses=hypotheses,
            parameters={"p_min": pmin, "diam_sharp": diam_sharp},
        ),
        InequalityReport.evaluate(
            "expansion_lazified_diameter",
            ctx.chain_id,
            diam_sharp,
            LAZY_DIAMETER_CONSTANT / (lazy_phi * lazy_phi * lazy_pmin),
            hypotheses=hypotheses,
            parameters={"phi": lazy_phi, "p_min": lazy_pmin, "lazified": not ctx.lazy},
        ),
        InequalityReport.evaluate(
            "expansion_diameter",
            ctx.chain_id,
            diam_sharp,
            NONLAZY_DIAMETER_CONSTANT / (phi * phi * pmin),
            hypotheses=hypotheses,
            parameters={"phi": phi, "p_min": pmin},
        ),
    ]


def check_diam_lower(ctx: ChainContext, config: "SuiteConfig") -> List[InequalityReport]:
    """diam# - 4 / Phi <= t_mix#, for any lazy chain."""
    ctx.require(lazy=True)
    ctx.require_conductance()
    profile = ctx.mixing_times()
    phi = ctx.phi(1).phi
    return [
        InequalityReport.evaluate(
            "diameter_lower_bound",
            ctx.chain_id,
            ctx.diam_sharp - DIAMETER_LOWER_CONSTANT / phi,
            profile.t_mix_sharp,
            hypotheses=ctx.hypotheses(),
            parameters={"diam_sharp": ctx.diam_sharp, "phi": phi},
        )
    ]


def check_escape(ctx: ChainContext, config: "SuiteConfig") -> List[InequalityReport]:
    """sqrt(t_mix# P_min) / 41 <= E[d(X_0, X_t)] for every integer t in [t_rel, horizon].

    E[d(X_0, X_t)] >= diam# - diam * d_tv#(t) and d_tv# is non-increasing, so
    the scan stops once that lower bound clears the left side.
    """
    ctx.require(lazy=True, reversible=True, nonneg_curved=True)
    spectral = ctx.spectral
    if spectral is None:
        raise HypothesisSkip("no spectral profile", ctx.hypotheses())
    profile = ctx.mixing_times()
    lhs_squared = escape_lhs_squared(profile.t_mix_sharp, ctx.pmin)
    start = max(1, math.ceil(spectral.t_rel - spectral.tolerance))
    horizon = max(ctx.horizon, start)
    diam, diam_sharp = ctx.metric.diam, ctx.diam_sharp

    worst: Optional[Tuple[Scalar, int]] = None
    certified_at: Optional[int] = None
    t = start
    while t <= horizon:
        step = ctx.statistics(t)
        if worst is None or step.displacement < worst[0]:
            worst = (step.displacement, t)
        floor = diam_sharp - diam * step.d_tv_sharp
        if to_float(floor) >= 0 and less_equal(lhs_squared, floor * floor):
            certified_at = t
            break
        t += 1

    displacement, t_worst = worst
    first = ctx.statistics(start).displacement
    lhs_value = math.sqrt(to_float(lhs_squared))
    sharpness = to_float(first) / lhs_value if lhs_value > 0 else None
    return [
        InequalityReport.evaluate(
            "escape",
            ctx.chain_id,
            None,
            displacement,
            lhs_squared=lhs_squared,
            rhs_squared=displacement * displacement,
            hypotheses=ctx.hypotheses(),
            parameters={
                "t": t_worst,
                "t_rel": spectral.t_rel,
                "grid_start": start,
                "checked_until": min(t, horizon),
                "tail_certified_at": certified_at,
                "t_mix_sharp": profile.t_mix_sharp,
                "p_min": ctx.pmin,
                "sharpness_ratio": sharpness,
            },
        )
    ]


def check_cutoff_ratios(ctx: ChainContext, config: "SuiteConfig") -> List[InequalityReport]:
    """P_min/(12 Phi^2) <= t_rel, (t_rel - 1) ln 2 <= t_mix = t_mix# <= 40/(P_min Phi^2)."""
    ctx.require(lazy=True, reversible=True, transitive=True, nonneg_curved=True)
    if not less_equal(config.cutoff_p, ctx.pmin):
        raise HypothesisSkip(f"P_min {ctx.pmin} below cutoff level {config.cutoff_p}", ctx.hypotheses())
    ctx.require_conductance()
    spectral = ctx.spectral
    profile = ctx.mixing_times()
    phi = ctx.phi(1).phi
    pmin, t_rel = ctx.pmin, spectral.t_rel
    hypotheses = ctx.hypotheses()
    phi_sq = to_float(phi) ** 2
    ratios = {
        "p": config.cutoff_p,
        "t_rel_phi2": t_rel * phi_sq,
        "t_mix_phi2": profile.t_mix * phi_sq,
        "t_mix_over_t_rel": profile.t_mix / t_rel,
    }

    equality = InequalityReport.evaluate(
        "cutoff_mixing_equality",
        ctx.chain_id,
        profile.t_mix,
        profile.t_mix_sharp,
        hypotheses=hypotheses,
        parameters=dict(ratios, rows_constant=profile.rows_constant),
    )
    if not profile.rows_constant:
        equality.passed = False
        equality.status = Status.FAIL
        equality.detail = "per-row TV distances differ on a transitive chain"

    return [
        InequalityReport.evaluate(
            "cutoff_buser_link",
            ctx.chain_id,
            buser_bound(pmin, phi),
            t_rel,
            hypotheses=hypotheses,
            parameters=dict(ratios, phi=phi, p_min=pmin),
            force_float=True,
        ),
        InequalityReport.evaluate(
            "cutoff_relaxation_link",
            ctx.chain_id,
            (t_rel - 1) * math.log(2),
            profile.t_mix,
            hypotheses=hypotheses,
            parameters=dict(ratios, t_rel=t_rel),
            force_float=True,
        ),
        equality,
        InequalityReport.evaluate(
            "cutoff_conductance_link",
            ctx.chain_id,
            profile.t_mix,
            conductance_bound(pmin, phi),
            hypotheses=hypotheses,
            parameters=dict(ratios, phi=phi, p_min=pmin),
        ),
    ]


def check_buser(ctx: ChainContext, config: "SuiteConfig") -> List[InequalityReport]:
    """t_rel >= P_min / (12 Phi^2); a failure is a corpus error."""
    ctx.require(reversible=True, nonneg_curved=True)
    ctx.require_conductance()
    spectral = ctx.spectral
    phi = ctx.phi(1).phi
    report = InequalityReport.evaluate(
        "buser",
        ctx.chain_id,
        buser_bound(ctx.pmin, phi),
        spectral.t_rel,
        hypotheses=ctx.hypotheses(),
        parameters={"phi": phi, "p_min": ctx.pmin, "t_rel": spectral.t_rel},
        force_float=True,
    )
    if not report.passed:
        report.status = Status.ERROR
        report.detail = "Buser inequality fails: corpus error"
    return [report]


def check_power_conductance_spectral(ctx: ChainContext, config: "SuiteConfig") -> List[InequalityReport]:
    """(1 - lambda_2^t) / 2 <= Phi(P^t) for t = 1..window on lazy reversible chains."""
    ctx.require(lazy=True, reversible=True)
    ctx.require_conductance()
    lambda2 = ctx.spectral.lambda2
    try:
        window = ctx.window
    except TruncationError:
        window = 1
    records = [
        InequalityReport.evaluate(
            "power_conductance_spectral",
            ctx.chain_id,
            (1 - lambda2 ** t) / 2,
            ctx.phi(t).phi,
            hypotheses=ctx.hypotheses(),
            parameters={"t": t, "lambda2": lambda2, "window": window},
            force_float=True,
        )
        for t in range(1, window + 1)
    ]
    return [tightest(records)]


def check_good_coupling(ctx: ChainContext, config: "SuiteConfig") -> List[InequalityReport]:
    """Good optimal couplings put mass >= P_min on the good set, for every ordered pair."""
    ctx.require(lazy=True)
    if ctx.n < 2:
        raise HypothesisSkip("a single state has no pairs", ctx.hypotheses())
    hypotheses = ctx.hypotheses()
    try:
        kernel = ctx.kernel
    except InvariantViolation as exc:
        record = InequalityReport.errored("good_coupling", ctx.chain_id, str(exc), hypotheses)
        record.status = Status.FAIL
        return [record]

    worst: Optional[Tuple[Scalar, int, int]] = None
    for x in range(ctx.n):
        for y in range(ctx.n):
            if x == y:
                continue
            mass = good_set_mass(kernel.coupling(x, y), ctx.metric, x, y)
            if worst is None or mass < worst[0]:
                worst = (mass, x, y)
    mass, x, y = worst
    return [
        InequalityReport.evaluate(
            "good_coupling",
            ctx.chain_id,
            ctx.pmin,
            mass,
            hypotheses=hypotheses,
            parameters={"x": x, "y": y, "pairs": ctx.n * (ctx.n - 1)},
        )
    ]


def check_coupling_supermartingale(ctx: ChainContext, config: "SuiteConfig") -> List[InequalityReport]:
    """sum K((x,y),(u,v)) d(u,v) <= d(x,y) for every pair x != y."""
    ctx.require(lazy=True, nonneg_curved=True)
    if ctx.n < 2:
        raise HypothesisSkip("a single state has no pairs", ctx.hypotheses())
    kernel = ctx.kernel
    records = []
    for x in range(ctx.n):
        for y in range(ctx.n):
            if x != y:
                records.append(
                    InequalityReport.evaluate(
                        "coupling_supermartingale",
                        ctx.chain_id,
                        kernel.expected_distance(ctx.metric, x, y),
                        int(ctx.metric.d[x, y]),
                        hypotheses=ctx.hypotheses(),
                        parameters={"x": x, "y": y},
                    )
                )
    return [tightest(records)]


def check_coupling_domination(ctx: ChainContext, config: "SuiteConfig") -> List[InequalityReport]:
    """||P^t(x,.) - P^t(y,.)|| <= P(X_t != Y_t) under the coupling kernel, evaluated exactly."""
    ctx.require(lazy=True, nonneg_curved=True)
    if ctx.n < 2:
        raise HypothesisSkip("a single state has no pairs", ctx.hypotheses())
    if ctx.n > COUPLING_LIMIT:
        raise TooLargeError(ctx.n, COUPLING_LIMIT, "pair-chain evaluation")
    try:
        steps = min(ctx.window, DOMINATION_STEPS)
    except TruncationError:
        steps = DOMINATION_STEPS
    kernel = ctx.kernel
    powers = ctx.new_powers()
    tv_by_t = [powers.pairwise_tv()]
    for _ in range(steps):
        powers.advance()
        tv_by_t.append(powers.pairwise_tv())

    records = []
    for x in range(ctx.n):
        for y in range(ctx.n):
            if x == y:
                continue
            separation = kernel.separation_curve(x, y, steps)
            pair_records = [
                InequalityReport.evaluate(
                    "coupling_domination",
                    ctx.chain_id,
                    tv_by_t[t][x, y],
                    separation[t],
                    hypotheses=ctx.hypotheses(),
                    parameters={"x": x, "y": y, "t": t, "steps": steps},
                )
                for t in range(steps + 1)
            ]
            records.append(tightest(pair_records))
    return [tightest(records)]


def check_hitting_time(ctx: ChainContext, config: "SuiteConfig") -> List[InequalityReport]:
    """Monte Carlo tail of the coupled distance process against z0 sqrt(10 / (P_min t))."""
    ctx.require(lazy=True, nonneg_curved=True)
    if ctx.n < 2:
        raise HypothesisSkip("a single state has no pairs", ctx.hypotheses())
    if ctx.n > COUPLING_LIMIT:
        raise TooLargeError(ctx.n, COUPLING_LIMIT, "coupled simulation")
    d = ctx.metric.d
    flat = int(np.argmax(d))
    x, y = divmod(flat, ctx.n)
    process = CoupledDistanceProcess(kernel=ctx.kernel, metric=ctx.metric, x=x, y=y, p=ctx.pmin)
    report, _ = simulate_supermartingale(
        process,
        grid=HITTING_GRID,
        trials=config.mc_trials,
        rng=chain_rng(config.seed, ctx.chain_id, HITTING_SALT),
        seed=config.seed,
        chain_id=ctx.chain_id,
        hypotheses=ctx.hypotheses(),
    )
    report.parameters.update({"x": x, "y": y})
    return [report]


def _window_or_one(ctx: ChainContext) -> int:
    try:
        return ctx.window
    except TruncationError:
        return 1


def _random_function(ctx: ChainContext, rng: np.random.Generator, draw: int) -> List[Scalar]:
    """Even draws: distance from a random anchor (1-Lipschitz). Odd draws: random integers."""
    if draw % 2 == 0:
        anchor = int(rng.integers(0, ctx.n))
        values = [int(ctx.metric.d[anchor, x]) for x in range(ctx.n)]
    else:
        values = [int(v) for v in rng.integers(-8, 9, size=ctx.n)]
    if ctx.chain.exact:
        return [Fraction(v) for v in values]
    return [float(v) for v in values]


def check_l1_property(ctx: ChainContext, config: "SuiteConfig") -> List[InequalityReport]:
    """L1 Cheeger inequality for P^t on seeded random centred functions, t in 1..window."""
    ctx.require_conductance()
    rng = chain_rng(config.seed, ctx.chain_id, PROPERTY_SALT)
    window = _window_or_one(ctx)
    records = []
    for draw in range(config.property_draws):
        t = int(rng.integers(1, window + 1))
        f = centre(ctx.chain, _random_function(ctx, rng, draw), ctx.dist)
        record = check_l1_cheeger(
            ctx.chain, t, list(f), dist=ctx.dist, phi=ctx.phi(t), matrix=ctx.power(t), chain_id=ctx.chain_id
        )
        record.hypotheses = ctx.hypotheses()
        record.parameters["draw"] = draw
        record.parameters["f"] = list(f)
        records.append(record)
    best = tightest(records)
    best.parameters["draws"] = len(records)
    return [best]


def check_concentration_property(ctx: ChainContext, config: "SuiteConfig") -> List[InequalityReport]:
    """Both concentration tails on seeded random functions and levels."""
    ctx.require_conductance()
    rng = chain_rng(config.seed, ctx.chain_id, PROPERTY_SALT + 100)
    phi = ctx.phi(1)
    by_statement: Dict[str, List[InequalityReport]] = {}
    for draw in range(config.property_draws):
        f = _random_function(ctx, rng, draw)
        deviation = max(abs(value) for value in centre(ctx.chain, f, ctx.dist))
        if deviation == 0:
            continue
        quarter = int(rng.integers(1, 5))
        level = deviation * Fraction(quarter, 4) if is_exact(deviation) else deviation * quarter / 4
        for record in check_concentration(ctx.chain, f, level, dist=ctx.dist, phi=phi, chain_id=ctx.chain_id):
            record.hypotheses = ctx.hypotheses()
            record.parameters["draw"] = draw
            record.parameters["f"] = list(f)
            by_statement.setdefault(record.statement, []).append(record)
    results = []
    for statement in sorted(by_statement):
        best = tightest(by_statement[statement])
        best.parameters["draws"] = len(by_statement[statement])
        results.append(best)
    return results


CheckFunction = Callable[[ChainContext, "SuiteConfig"], List[InequalityReport]]

CHECKS: Tuple[Tuple[CheckFunction, Tuple[str, ...]], ...] = (
    (check_tv_decay, ("tv_decay",)),
    (check_diam_bound, ("diameter_bound", "effective_diameter_bound")),
    (check_main_estimate, ("main_estimate",)),
    (check_conductance_bound, ("conductance_bound",)),
    (check_expansion_bound, ("expansion_bound", "expansion_lazified_diameter", "expansion_diameter")),
    (check_diam_lower, ("diameter_lower_bound",)),
    (check_escape, ("escape",)),
    (
        check_cutoff_ratios,
        ("cutoff_buser_link", "cutoff_relaxation_link", "cutoff_mixing_equality", "cutoff_conductance_link"),
    ),
    (check_buser, ("buser",)),
    (check_power_conductance_spectral, ("power_conductance_spectral",)),
    (check_good_coupling, ("good_coupling",)),
    (check_coupling_supermartingale, ("coupling_supermartingale",)),
    (check_coupling_domination, ("coupling_domination",)),
    (check_hitting_time, ("hitting_time",)),
    (check_l1_property, ("l1_cheeger",)),
    (
        check_concentration_property,
        ("concentration_lower", "concentration_lower_lazy", "concentration_upper", "concentration_upper_lazy"),
    ),
)
