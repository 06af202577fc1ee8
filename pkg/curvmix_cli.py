#!/usr/bin/env python3
"""
curvmix command-line interface
Generate finite Markov chains, profile them, and verify the curvature/mixing inequality suite

Updates: v0.1.0 - 2026-10-16 - generate, analyze and verify commands with global run flags.
"""

import logging
import sys
from pathlib import Path
from typing import Optional

import click
from dotenv import load_dotenv
from rich.console import Console

# Add current directory to path for imports
sys.path.append(str(Path(__file__).parent))

from config import MODES, Config
from utils.logger import setup_logging

from cli import analyze as analyze_commands
from cli import generate as generate_commands
from cli import verify as verify_commands
from cli.runtime import RunConfig

# Load environment variables
load_dotenv()

# stdout carries JSON output; human-facing output goes to stderr.
console = Console(stderr=True)
config = Config()
logger = logging.getLogger(__name__)

setup_logging(log_level=config.log_level)


@click.group()
@click.option("--mode", type=click.Choice(MODES), help="Arithmetic mode (default from CURVMIX_MODE)")
@click.option("--horizon", type=int, help="Override the time horizon for mixing and decay checks")
@click.option("--enum-limit", "enum_limit", type=int, help="Exhaustive conductance search limit (<= 24)")
@click.option("--seed", type=int, help="Master seed for generators and Monte Carlo checks")
@click.option("--threads", type=int, help="Worker thread cap (default from CURVMIX_THREADS)")
@click.pass_context
def cli(
    ctx: click.Context,
    mode: Optional[str],
    horizon: Optional[int],
    enum_limit: Optional[int],
    seed: Optional[int],
    threads: Optional[int],
) -> None:
    """curvmix - curvature, conductance and mixing of finite Markov chains"""
    ctx.ensure_object(dict)
    try:
        run_config = RunConfig.from_config(
            config, mode=mode, horizon=horizon, enum_limit=enum_limit, seed=seed, threads=threads
        )
    except ValueError as exc:
        raise click.UsageError(str(exc), ctx=ctx) from exc
    ctx.obj["config"] = config
    ctx.obj["run_config"] = run_config
    logger.debug("Run configuration: %s", run_config)


generate_commands.register(cli, console=console)
analyze_commands.register(cli, console=console)
verify_commands.register(cli, console=console, config=config)


if __name__ == "__main__":
    cli()
