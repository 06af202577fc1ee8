"""
Suite runner: every check on every corpus chain, plus the reflected-walk
supermartingale run, collected into one deterministic SuiteReport.

Updates: v0.1.0 - 2026-10-16 - Corpus validation, skip/error policy, reflected-walk oracle run.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from chains.chain import EXACT, Chain
from config import Config
from errors import CurvmixError, HypothesisSkip, InvariantViolation, TooLargeError, TruncationError
from generators.corpus import ChainSpec, CorpusManager, ExpectedTags, structural_mismatches
from transport.curvature import CurvatureVerdict
from verifier.checks import CHECKS, CheckFunction, chain_rng
from verifier.context import ChainContext
from verifier.report import InequalityReport, Status, SuiteReport
from verifier.supermartingale import DEFAULT_GRID, REFLECTED_WALK_SALT, ReflectedWalkProcess, simulate_supermartingale

logger = logging.getLogger(__name__)

REFLECTED_WALK_ID = "reflected-walk-m8"


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    mode: str = EXACT
    horizon: Optional[int] = None
    enumeration_limit: int = 24
    threads: int = 1
    bit_budget: int = 4096
    mc_trials: int = 100_000
    property_draws: int = 200
    cutoff_p: Fraction = Fraction(1, 8)

    @classmethod
    def from_config(cls, config: Config, **overrides: Any) -> "SuiteConfig":
        values = {
            "seed": config.get_seed(),
            "mode": config.mode,
            "horizon": config.horizon,
            "enumeration_limit": config.get_enum_limit(),
            "threads": config.get_threads(),
            "bit_budget": config.get_bit_budget(),
            "mc_trials": config.get_mc_trials(),
            "property_draws": config.get_property_draws(),
            "cutoff_p": config.cutoff_p,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


CorpusInput = Union[CorpusManager, Iterable[ChainSpec], Iterable[Tuple[str, Chain]]]


def _statement_records(
    statements: Sequence[str],
    chain_id: str,
    reason: str,
    hypotheses: Dict[str, Optional[bool]],
    *,
    error: bool,
) -> List[InequalityReport]:
    factory = InequalityReport.errored if error else InequalityReport.skipped
    return [factory(statement, chain_id, reason, hypotheses) for statement in statements]


def _corpus_record(ctx: ChainContext, expected: Optional[ExpectedTags]) -> InequalityReport:
    hypotheses = ctx.hypotheses()
    certificate = ctx.curvature
    problems = structural_mismatches(expected, hypotheses) if expected else []
    if expected and expected.nonneg_curved != "unknown":
        want_nonneg = expected.nonneg_curved == "yes"
        if certificate.verdict is CurvatureVerdict.INDETERMINATE:
            problems.append("curvature: certificate indeterminate")
        elif want_nonneg != certificate.non_negative:
            problems.append(f"nonneg_curved: expected {expected.nonneg_curved}, observed {certificate.verdict.value}")
    record = InequalityReport(
        statement="corpus_tags",
        chain_id=ctx.chain_id,
        hypotheses=hypotheses,
        status=Status.ERROR if problems else Status.PASS,
        mode=ctx.chain.mode,
        passed=not problems,
        parameters={
            "expected": expected.to_dict() if expected else None,
            "curvature": certificate.to_dict(),
            "n": ctx.n,
        },
        detail="; ".join(problems),
    )
    if problems:
        logger.error("%s: corpus tag mismatch (%s)", ctx.chain_id, record.detail)
    return record


def evaluate_chain(
    chain_id: str,
    chain: Chain,
    config: SuiteConfig,
    *,
    expected: Optional[ExpectedTags] = None,
    checks: Sequence[Tuple[CheckFunction, Tuple[str, ...]]] = CHECKS,
) -> List[InequalityReport]:
    """Run every check on one chain; never raises for per-check problems."""
    if config.mode != EXACT:
        chain = chain.as_float()
    ctx = ChainContext(
        chain,
        chain_id,
        horizon=config.horizon,
        enumeration_limit=config.enumeration_limit,
        threads=config.threads,
        bit_budget=config.bit_budget,
    )
    logger.info("Verifying %s (n=%s, mode=%s)", chain_id, chain.n, chain.mode)
    try:
        records = [_corpus_record(ctx, expected)]
    except Exception as exc:  # noqa: BLE001 - hypothesis evaluation failure is a corpus error
        logger.exception("%s: hypothesis evaluation failed", chain_id)
        return [InequalityReport.errored("corpus_tags", chain_id, f"{type(exc).__name__}: {exc}")]
    hypotheses = ctx.hypotheses()

    for check, statements in checks:
        try:
            records.extend(check(ctx, config))
        except HypothesisSkip as exc:
            records.extend(_statement_records(statements, chain_id, exc.reason, exc.hypotheses or hypotheses, error=False))
        except TooLargeError as exc:
            logger.warning("%s: skipping %s (%s)", chain_id, ", ".join(statements), exc)
            records.extend(_statement_records(statements, chain_id, str(exc), hypotheses, error=False))
        except (TruncationError, InvariantViolation) as exc:
            logger.error("%s: %s failed: %s", chain_id, check.__name__, exc)
            records.extend(
                _statement_records(statements, chain_id, f"{type(exc).__name__}: {exc}", hypotheses, error=True)
            )
        except Exception as exc:  # noqa: BLE001 - unexpected failures become error records
            logger.exception("%s: %s raised", chain_id, check.__name__)
            records.extend(
                _statement_records(statements, chain_id, f"{type(exc).__name__}: {exc}", hypotheses, error=True)
            )
    return records


def reflected_walk_record(config: SuiteConfig) -> InequalityReport:
    """Built-in lazy reflected walk on {0..8} from z0 = 4, with its exact tail oracle."""
    report, _ = simulate_supermartingale(
        ReflectedWalkProcess(m=8, z0=4),
        grid=DEFAULT_GRID,
        trials=config.mc_trials,
        rng=chain_rng(config.seed, REFLECTED_WALK_ID, REFLECTED_WALK_SALT),
        seed=config.seed,
        chain_id=REFLECTED_WALK_ID,
    )
    return report


def _entries(corpus: CorpusInput) -> List[Tuple[str, Any, Optional[ExpectedTags]]]:
    if isinstance(corpus, CorpusManager):
        corpus = corpus.active_specs()
    entries = []
    for item in corpus:
        if isinstance(item, ChainSpec):
            entries.append((item.chain_id, item, item.expected))
        else:
            chain_id, chain = item
            entries.append((chain_id, chain, None))
    return entries


def run_suite(corpus: CorpusInput, config: Optional[SuiteConfig] = None) -> SuiteReport:
    """Apply every check to every chain; an empty corpus gives an empty report."""
    config = config or SuiteConfig()
    report = SuiteReport(seed=config.seed, config=config.to_dict())
    entries = _entries(corpus)
    for chain_id, source, expected in entries:
        if isinstance(source, ChainSpec):
            try:
                chain = source.build()
            except (CurvmixError, ValueError, KeyError, TypeError) as exc:
                logger.error("%s: corpus entry failed to build: %s", chain_id, exc)
                report.extend([InequalityReport.errored("corpus_tags", chain_id, f"{type(exc).__name__}: {exc}")])
                continue
        else:
            chain = source
        report.extend(evaluate_chain(chain_id, chain, config, expected=expected))
    if entries:
        report.extend([reflected_walk_record(config)])
    counts = report.counts()
    logger.info(
        "Suite finished: %s pass, %s fail, %s skip, %s error",
        counts["pass"],
        counts["fail"],
        counts["skip"],
        counts["error"],
    )
    return report
