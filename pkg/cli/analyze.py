"""
Chain analysis CLI command for curvmix.

Provides the ``analyze`` command: reads a chain file, prints the chain
profile as JSON and optionally writes the per-t trace as CSV.

Updates:
    v0.1.0 - 2026-10-16 - Profile JSON, Rich summary and pandas CSV trace.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, Optional

import click
from rich.console import Console
from rich.table import Table

from chains.arithmetic import Scalar
from chains.io import load_chain
from cli.runtime import dumps_payload, fail, write_output
from errors import CurvmixError
from mixing.profiles import build_trace, displacement_curve
from utils.helpers import format_value
from verifier.context import ChainContext, ChainProfile

logger = logging.getLogger(__name__)


def _trace_conductance(context: ChainContext, last_t: int) -> Optional[Dict[int, Scalar]]:
    """Phi(P^t) for t = 1..last_t when exhaustive enumeration is within reach."""
    if context.n < 2 or context.n > context.enumeration_limit:
        return None
    return {t: context.phi(t).phi for t in range(1, last_t + 1)}


def _render_profile(console: Console, chain_id: str, profile: ChainProfile) -> None:
    payload = profile.payload
    table = Table(title=f"Chain Profile: {chain_id}", show_lines=False, expand=False)
    table.add_column("Quantity", style="cyan", no_wrap=True)
    table.add_column("Value", style="white")

    phi = payload["phi"]
    curvature = payload["curvature"]
    rows = [
        ("States", str(payload["n"])),
        ("Mode", payload["mode"]),
        ("P_min", format_value(payload["p_min"])),
        ("diam", str(payload["diam"])),
        ("diam#", format_value(payload["diam_sharp"])),
        ("Lazy", "✅" if payload["lazy"] else "—"),
        ("Reversible", "✅" if payload["reversible"] else "—"),
        ("Transitive", {True: "✅", False: "—", None: "unknown"}[payload["transitive"]]),
        ("Curvature", curvature["verdict"]),
        ("Phi(P)", "n/a" if phi is None else f"{phi['phi']['value']} ({payload['phi_note'] or 'exact search'})"),
        ("t_mix", str(payload["t_mix"])),
        ("t_mix#", str(payload["t_mix_sharp"])),
        ("t_rel", "n/a" if payload["t_rel"] is None else format_value(payload["t_rel"])),
    ]
    for name, value in rows:
        table.add_row(name, value)
    console.print(table)


def register(cli_group: click.Group, *, console: Console) -> None:
    """Register the ``analyze`` command on the root Click group."""

    @cli_group.command(name="analyze")
    @click.argument("chain_file", type=click.Path(dir_okay=False, path_type=Path))
    @click.option(
        "--out",
        "-o",
        type=click.Path(dir_okay=False, path_type=Path),
        help="Write the profile JSON here instead of stdout",
    )
    @click.option(
        "--trace",
        type=click.Path(dir_okay=False, path_type=Path),
        help="Write the per-t trace (TV, displacement, Phi(P^t)) as CSV",
    )
    @click.pass_context
    def analyze(ctx: click.Context, chain_file: Path, out: Optional[Path], trace: Optional[Path]) -> None:
        """Profile a chain file: pi, P_min, diameters, Phi, curvature, mixing and relaxation times."""
        run_config = ctx.obj["run_config"]
        try:
            chain = load_chain(chain_file)
            if run_config.mode == "float":
                chain = chain.as_float()
            context = ChainContext(
                chain,
                chain_file.stem,
                horizon=run_config.horizon,
                enumeration_limit=run_config.enum_limit,
                threads=run_config.threads,
                bit_budget=run_config.bit_budget,
            )
            profile = context.profile()
            write_output(dumps_payload(profile.to_dict()), out)

            if trace is not None:
                mixing = context.mixing
                last_t = len(mixing.tv_curve) - 1
                curve = displacement_curve(
                    chain, context.metric, last_t, dist=context.dist, bit_budget=run_config.bit_budget
                )
                frame = build_trace(mixing, curve, _trace_conductance(context, last_t))
                trace.parent.mkdir(parents=True, exist_ok=True)
                frame.to_csv(trace, index=False)
                logger.info("Wrote %s trace rows to %s", len(frame), trace)
        except (CurvmixError, OSError) as exc:
            fail(ctx, console, exc)
            return

        _render_profile(console, chain_file.stem, profile)
        if trace is not None:
            console.print(f"[green]✅ Trace written to {trace}[/green]")
