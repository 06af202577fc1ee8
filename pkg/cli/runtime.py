"""
Run configuration and output helpers shared by the command modules.

Updates: v0.1.0 - 2026-10-16 - RunConfig validated from Config plus CLI flags.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

import click
from rich.console import Console
from rich.markup import escape

from config import MAX_ENUMERATION_LIMIT, MODES, Config
from verifier.suite import SuiteConfig

SEED_LIMIT = 1 << 64


@dataclass(slots=True)
class RunConfig:
    mode: str = "exact"
    horizon: Optional[int] = None
    enum_limit: int = MAX_ENUMERATION_LIMIT
    seed: int = 0
    threads: int = 1
    bit_budget: int = 4096
    mc_trials: int = 100_000
    property_draws: int = 200
    cutoff_p: Fraction = Fraction(1, 8)
    corpus_path: Optional[Path] = None

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {', '.join(MODES)}, got {self.mode!r}")
        if self.horizon is not None and self.horizon < 1:
            raise ValueError(f"horizon must be at least 1, got {self.horizon}")
        if not 1 <= self.enum_limit <= MAX_ENUMERATION_LIMIT:
            raise ValueError(f"enumeration limit must lie in [1, {MAX_ENUMERATION_LIMIT}], got {self.enum_limit}")
        if not 0 <= self.seed < SEED_LIMIT:
            raise ValueError(f"seed must lie in [0, 2^64), got {self.seed}")
        if self.threads < 1:
            raise ValueError(f"threads must be at least 1, got {self.threads}")

    @classmethod
    def from_config(
        cls,
        config: Config,
        *,
        mode: Optional[str] = None,
        horizon: Optional[int] = None,
        enum_limit: Optional[int] = None,
        seed: Optional[int] = None,
        threads: Optional[int] = None,
    ) -> "RunConfig":
        """Flags override the resolved configuration; unset flags keep it."""
        return cls(
            mode=mode if mode is not None else config.mode,
            horizon=horizon if horizon is not None else config.horizon,
            enum_limit=enum_limit if enum_limit is not None else config.get_enum_limit(),
            seed=seed if seed is not None else config.get_seed(),
            threads=threads if threads is not None else config.get_threads(),
            bit_budget=config.get_bit_budget(),
            mc_trials=config.get_mc_trials(),
            property_draws=config.get_property_draws(),
            cutoff_p=config.cutoff_p,
            corpus_path=config.get_corpus_path(),
        )

    def with_seed(self, seed: Optional[int]) -> "RunConfig":
        return self if seed is None else replace(self, seed=seed)

    def suite_config(self) -> SuiteConfig:
        return SuiteConfig(
            seed=self.seed,
            mode=self.mode,
            horizon=self.horizon,
            enumeration_limit=self.enum_limit,
            threads=self.threads,
            bit_budget=self.bit_budget,
            mc_trials=self.mc_trials,
            property_draws=self.property_draws,
            cutoff_p=self.cutoff_p,
        )


def dumps_payload(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def write_output(text: str, out: Optional[Path]) -> None:
    """Write machine output to ``out`` or, without a path, to stdout."""
    if out is None:
        click.echo(text, nl=False)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")


def fail(ctx: click.Context, console: Console, exc: BaseException) -> None:
    """Report an input error and exit with status 2."""
    console.print(f"[red]❌ {type(exc).__name__}: {escape(str(exc))}[/red]")
    ctx.exit(2)
