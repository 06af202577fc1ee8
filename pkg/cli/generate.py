"""
Chain generator CLI commands for curvmix.

Provides the ``generate`` group with one subcommand per chain family. Each
writes the chain JSON format to stdout or to ``--out``.

Updates:
    v0.1.0 - 2026-10-16 - Cycle, hypercube x cycle, Abelian Cayley, transposition,
    biased segment, directed cycle and double-star subcommands.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Callable, List, Optional, Sequence

import click
from rich.console import Console

from chains.chain import Chain
from chains.io import dumps_chain
from cli.runtime import fail, write_output
from errors import CurvmixError
from generators.families import (
    abelian_cayley,
    biased_segment,
    cycle,
    directed_lazy_cycle,
    double_star,
    hypercube_times_cycle,
    transposition_walk,
)
from utils.helpers import parse_fraction

logger = logging.getLogger(__name__)

_out_option = click.option(
    "--out",
    "-o",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write the chain JSON here instead of stdout",
)
_lazy_option = click.option(
    "--lazy/--no-lazy",
    default=True,
    show_default=True,
    help="Apply the lazy transform (I + P) / 2",
)


def _parse_moduli(value: str) -> List[int]:
    """Parse "8" or "2,4" into a list of cyclic factor orders."""
    try:
        moduli = [int(part) for part in value.split(",") if part.strip()]
    except ValueError as exc:
        raise click.BadParameter(f"'{value}' is not a comma-separated list of integers") from exc
    if not moduli or any(m < 1 for m in moduli):
        raise click.BadParameter(f"'{value}' must list positive integers")
    return moduli


def register(cli_group: click.Group, *, console: Console) -> None:
    """Register the ``generate`` command group on the root Click group."""

    def _emit(ctx: click.Context, factory: Callable[[str], Chain], out: Optional[Path]) -> None:
        run_config = ctx.obj["run_config"]
        try:
            chain = factory(run_config.mode)
        except (CurvmixError, ValueError) as exc:
            fail(ctx, console, exc)
            return
        write_output(dumps_chain(chain), out)
        logger.info("Generated %s chain with %s states", chain.meta.get("family"), chain.n)
        if out is not None:
            console.print(f"[green]✅ Wrote {chain.n}-state chain to {out}[/green]")

    @cli_group.group(name="generate")
    def generate() -> None:
        """Generate a chain from one of the built-in families."""

    @generate.command(name="cycle")
    @click.option("--n", "n", type=int, required=True, help="Number of states (>= 3)")
    @_lazy_option
    @_out_option
    @click.pass_context
    def generate_cycle(ctx: click.Context, n: int, lazy: bool, out: Optional[Path]) -> None:
        """Simple random walk on the n-cycle."""
        _emit(ctx, lambda mode: cycle(n, lazy, mode=mode), out)

    @generate.command(name="hypercube-times-cycle")
    @click.option("--d", "d", type=int, required=True, help="Hypercube dimension")
    @click.option("--n", "n", type=int, required=True, help="Cycle length (>= 3)")
    @_lazy_option
    @_out_option
    @click.pass_context
    def generate_hypercube(ctx: click.Context, d: int, n: int, lazy: bool, out: Optional[Path]) -> None:
        """Walk on the Cayley graph of Z_2^d x Z_n."""
        _emit(ctx, lambda mode: hypercube_times_cycle(d, n, lazy, mode=mode), out)

    @generate.command(name="abelian-cayley")
    @click.option("--group", "group", required=True, help="Cyclic factor orders, e.g. 8 or 2,4")
    @click.option("--generator", "generators", multiple=True, help="Increment such as 1,0 (repeatable)")
    @click.option("--degree", type=int, help="Number of random increments (default ceil(log2 |G|))")
    @click.option("--seed", type=int, help="Seed for random increments (default: run seed)")
    @_lazy_option
    @_out_option
    @click.pass_context
    def generate_abelian(
        ctx: click.Context,
        group: str,
        generators: Sequence[str],
        degree: Optional[int],
        seed: Optional[int],
        lazy: bool,
        out: Optional[Path],
    ) -> None:
        """Random walk on a finite Abelian group."""
        moduli = _parse_moduli(group)
        chosen_seed = seed if seed is not None else ctx.obj["run_config"].seed
        _emit(
            ctx,
            lambda mode: abelian_cayley(
                moduli, list(generators) or None, lazy, degree=degree, seed=chosen_seed, mode=mode
            ),
            out,
        )

    @generate.command(name="transposition-walk")
    @click.option("--m", "m", type=int, required=True, help="Permutation size (3 or 4)")
    @_lazy_option
    @_out_option
    @click.pass_context
    def generate_transposition(ctx: click.Context, m: int, lazy: bool, out: Optional[Path]) -> None:
        """Random transposition walk on S_m."""
        _emit(ctx, lambda mode: transposition_walk(m, lazy, mode=mode), out)

    @generate.command(name="biased-segment")
    @click.option("--n", "n", type=int, required=True, help="Number of states (>= 2)")
    @click.option("--up", "up", default="3/4", show_default=True, help="Upward probability p in (0, 1)")
    @_out_option
    @click.pass_context
    def generate_segment(ctx: click.Context, n: int, up: str, out: Optional[Path]) -> None:
        """Lazy biased birth-death chain on {0..n-1}."""
        try:
            up_prob = parse_fraction(up)
        except (ValueError, ZeroDivisionError) as exc:
            raise click.BadParameter(str(exc), param_hint="--up") from exc
        _emit(ctx, lambda mode: biased_segment(n, up_prob, mode=mode), out)

    @generate.command(name="directed-lazy-cycle")
    @click.option("--n", "n", type=int, required=True, help="Number of states (>= 3)")
    @_out_option
    @click.pass_context
    def generate_directed(ctx: click.Context, n: int, out: Optional[Path]) -> None:
        """P(x, x) = P(x, x+1) = 1/2."""
        _emit(ctx, lambda mode: directed_lazy_cycle(n, mode=mode), out)

    @generate.command(name="double-star")
    @click.option("--k", "k", type=int, default=2, show_default=True, help="Leaves per hub")
    @_lazy_option
    @_out_option
    @click.pass_context
    def generate_double_star(ctx: click.Context, k: int, lazy: bool, out: Optional[Path]) -> None:
        """Two adjacent hubs with k leaves each; negatively curved for k >= 2."""
        _emit(ctx, lambda mode: double_star(k, lazy, mode=mode), out)
