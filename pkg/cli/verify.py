"""
Verification CLI command for curvmix.

Provides the ``verify`` command that runs the inequality suite on a corpus
and exits 0 only when no check failed and no corpus error occurred.

Updates:
    v0.1.0 - 2026-10-16 - Corpus selection, Rich summary table, JSON report.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from pathlib import Path
from typing import Dict, Optional

import click
import yaml
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from chains.io import load_chain
from cli.runtime import dumps_payload, fail, write_output
from config import Config
from errors import CurvmixError
from generators.corpus import CorpusManager
from verifier.report import Status, SuiteReport
from verifier.suite import CorpusInput, run_suite

logger = logging.getLogger(__name__)

_STATUS_STYLES = {
    Status.PASS: "green",
    Status.FAIL: "red",
    Status.SKIP: "yellow",
    Status.ERROR: "red",
}


def select_corpus(selection: str, config: Config, default_path: Optional[Path] = None) -> CorpusInput:
    """Resolve ``default``, ``none``, a corpus YAML path or a single chain JSON path."""
    if selection == "none":
        return CorpusManager.empty()
    if selection == "default":
        manager = CorpusManager(default_path or config.get_corpus_path())
        manager.refresh()
        return manager
    path = Path(selection)
    if path.suffix.lower() == ".json":
        return [(path.stem, load_chain(path))]
    manager = CorpusManager(path)
    manager.refresh()
    return manager


def _render_summary(console: Console, report: SuiteReport) -> None:
    per_chain: Dict[str, Dict[Status, int]] = defaultdict(lambda: defaultdict(int))
    for record in report.reports:
        per_chain[record.chain_id][record.status] += 1

    table = Table(title="Verification Summary", show_lines=False, expand=False)
    table.add_column("Chain", style="cyan", no_wrap=True)
    for status in Status:
        table.add_column(status.value, style=_STATUS_STYLES[status], justify="right")
    for chain_id in sorted(per_chain):
        table.add_row(chain_id, *(str(per_chain[chain_id][status]) for status in Status))
    counts = report.counts()
    table.add_row("total", *(str(counts[status.value]) for status in Status), style="bold")
    console.print(table)

    for record in report.sorted_reports():
        if record.status in (Status.FAIL, Status.ERROR):
            reason = escape(record.detail or record.status.value)
            console.print(f"[red]❌ {record.chain_id} / {record.statement}: {reason}[/red]")


def register(cli_group: click.Group, *, console: Console, config: Config) -> None:
    """Register the ``verify`` command on the root Click group."""

    @cli_group.command(name="verify")
    @click.option(
        "--corpus",
        "corpus",
        default="default",
        show_default=True,
        help="'default', 'none', a corpus YAML file or a chain JSON file",
    )
    @click.option("--seed", type=int, help="Override the master seed")
    @click.option(
        "--out",
        "-o",
        type=click.Path(dir_okay=False, path_type=Path),
        help="Write the report JSON here instead of stdout",
    )
    @click.pass_context
    def verify(ctx: click.Context, corpus: str, seed: Optional[int], out: Optional[Path]) -> None:
        """Run every inequality check on the selected corpus."""
        try:
            run_config = ctx.obj["run_config"].with_seed(seed)
        except ValueError as exc:
            raise click.BadParameter(str(exc), param_hint="--seed") from exc

        try:
            selected = select_corpus(corpus, config, run_config.corpus_path)
        except (CurvmixError, OSError, ValueError, KeyError, yaml.YAMLError) as exc:
            fail(ctx, console, exc)
            return

        report = run_suite(selected, run_config.suite_config())
        try:
            write_output(dumps_payload(report.to_dict()), out)
        except OSError as exc:
            fail(ctx, console, exc)
            return

        _render_summary(console, report)
        if report.clean:
            console.print(f"[green]✅ {report.counts()['total']} records, no failures[/green]")
        ctx.exit(report.exit_code)
