"""
CLI integration tests for the generate, analyze and verify commands.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from tempfile import TemporaryDirectory
from unittest import TestCase

from click.testing import CliRunner

import curvmix_cli
from chains.io import load_chain


FIXTURE_DIR = Path(__file__).parent / "fixtures"


class TestGenerateCommands(TestCase):
    """Chain generation through the ``generate`` group."""

    def setUp(self) -> None:
        self.runner = CliRunner()

    def test_cycle_writes_chain_json(self) -> None:
        result = self.runner.invoke(curvmix_cli.cli, ["generate", "cycle", "--n", "4"])
        self.assertEqual(result.exit_code, 0, msg=result.output)
        payload = json.loads(result.output)
        self.assertEqual(payload["n"], 4)
        self.assertEqual(payload["mode"], "exact")
        self.assertEqual(payload["rows"][0], ["1/2", "1/4", "0", "1/4"])
        self.assertIn("transitive_by_construction", payload["meta"]["tags"])

    def test_float_mode_flag(self) -> None:
        result = self.runner.invoke(curvmix_cli.cli, ["--mode", "float", "generate", "cycle", "--n", "3", "--no-lazy"])
        self.assertEqual(result.exit_code, 0, msg=result.output)
        payload = json.loads(result.output)
        self.assertEqual(payload["mode"], "float")
        self.assertEqual(payload["rows"][0], [0.0, 0.5, 0.5])

    def test_invalid_size_exits_with_two(self) -> None:
        result = self.runner.invoke(curvmix_cli.cli, ["generate", "cycle", "--n", "2"])
        self.assertEqual(result.exit_code, 2)
        self.assertIn("SizeError", result.output)

    def test_abelian_cayley_is_reproducible(self) -> None:
        args = ["generate", "abelian-cayley", "--group", "8", "--degree", "3", "--seed", "7"]
        first = self.runner.invoke(curvmix_cli.cli, args)
        second = self.runner.invoke(curvmix_cli.cli, args)
        self.assertEqual(first.exit_code, 0, msg=first.output)
        self.assertEqual(first.output, second.output)

        # Without --seed the run seed is used.
        seeded = self.runner.invoke(
            curvmix_cli.cli, ["--seed", "7", "generate", "abelian-cayley", "--group", "8", "--degree", "3"]
        )
        self.assertEqual(seeded.output, first.output)

    def test_abelian_cayley_rejects_bad_input(self) -> None:
        result = self.runner.invoke(curvmix_cli.cli, ["generate", "abelian-cayley", "--group", "x"])
        self.assertEqual(result.exit_code, 2)
        result = self.runner.invoke(
            curvmix_cli.cli, ["generate", "abelian-cayley", "--group", "2,2", "--generator", "1,0"]
        )
        self.assertEqual(result.exit_code, 2)
        self.assertIn("NotGeneratingError", result.output)

    def test_other_families_and_out_file(self) -> None:
        with TemporaryDirectory() as tmp:
            target = Path(tmp) / "nested" / "star.json"
            result = self.runner.invoke(
                curvmix_cli.cli, ["generate", "double-star", "--k", "2", "--out", str(target)]
            )
            self.assertEqual(result.exit_code, 0, msg=result.output)
            self.assertEqual(load_chain(target).n, 6)

        for args, states in (
            (["generate", "hypercube-times-cycle", "--d", "1", "--n", "4"], 8),
            (["generate", "transposition-walk", "--m", "3"], 6),
            (["generate", "biased-segment", "--n", "3", "--up", "3/4"], 3),
            (["generate", "directed-lazy-cycle", "--n", "5"], 5),
        ):
            result = self.runner.invoke(curvmix_cli.cli, args)
            self.assertEqual(result.exit_code, 0, msg=result.output)
            self.assertEqual(json.loads(result.output)["n"], states)

    def test_biased_segment_rejects_bad_probability(self) -> None:
        result = self.runner.invoke(curvmix_cli.cli, ["generate", "biased-segment", "--n", "3", "--up", "1/0"])
        self.assertEqual(result.exit_code, 2)
        result = self.runner.invoke(curvmix_cli.cli, ["generate", "biased-segment", "--n", "3", "--up", "1"])
        self.assertEqual(result.exit_code, 2)

    def test_invalid_run_configuration(self) -> None:
        for flags in (["--enum-limit", "30"], ["--horizon", "0"], ["--threads", "0"], ["--seed", "-1"]):
            result = self.runner.invoke(curvmix_cli.cli, flags + ["generate", "cycle", "--n", "4"])
            self.assertEqual(result.exit_code, 2, msg=f"{flags}: {result.output}")


class TestAnalyzeCommand(TestCase):
    """Chain profiles through ``analyze``."""

    def setUp(self) -> None:
        self.runner = CliRunner()

    def test_profile_and_trace(self) -> None:
        with TemporaryDirectory() as tmp:
            out = Path(tmp) / "profile.json"
            trace = Path(tmp) / "trace.csv"
            result = self.runner.invoke(
                curvmix_cli.cli,
                ["analyze", str(FIXTURE_DIR / "lazy_cycle4.json"), "--out", str(out), "--trace", str(trace)],
            )
            self.assertEqual(result.exit_code, 0, msg=result.output)
            self.assertIn("Chain Profile: lazy_cycle4", result.output)

            payload = json.loads(out.read_text(encoding="utf-8"))
            self.assertEqual(payload["t_mix"], 1)
            self.assertEqual(payload["t_mix_sharp"], 1)
            self.assertEqual(payload["phi"]["phi"]["value"], "1/4")
            self.assertEqual(payload["diam_sharp"]["value"], "1")
            self.assertTrue(payload["transitive"])
            self.assertAlmostEqual(payload["t_rel"]["value"], 2.0)

            with trace.open("r", encoding="utf-8", newline="") as handle:
                rows = list(csv.DictReader(handle))
            self.assertEqual(len(rows), 2)
            self.assertEqual(rows[1]["d_tv_exact"], "1/4")
            self.assertEqual(rows[1]["phi_pt"], "0.250000000000")

    def test_bad_chain_files_exit_with_two(self) -> None:
        for name in ("malformed.json", "reducible.json", "missing.json"):
            result = self.runner.invoke(curvmix_cli.cli, ["analyze", str(FIXTURE_DIR / name)])
            self.assertEqual(result.exit_code, 2, msg=f"{name}: {result.output}")
        result = self.runner.invoke(curvmix_cli.cli, ["analyze", str(FIXTURE_DIR / "reducible.json")])
        self.assertIn("ReducibleError", result.output)

    def test_undecodable_and_mistyped_fields_exit_with_two(self) -> None:
        base = json.loads((FIXTURE_DIR / "lazy_cycle4.json").read_text(encoding="utf-8"))
        with TemporaryDirectory() as tmp:
            binary = Path(tmp) / "binary.json"
            binary.write_bytes(b"\xff\xfe{\"n\": 2}")
            bad_labels = Path(tmp) / "labels.json"
            bad_labels.write_text(json.dumps({**base, "labels": 7}), encoding="utf-8")
            short_labels = Path(tmp) / "short_labels.json"
            short_labels.write_text(json.dumps({**base, "labels": ["a", "b"]}), encoding="utf-8")
            bad_meta = Path(tmp) / "meta.json"
            bad_meta.write_text(json.dumps({**base, "meta": 7}), encoding="utf-8")

            for path in (binary, bad_labels, short_labels, bad_meta):
                result = self.runner.invoke(curvmix_cli.cli, ["analyze", str(path)])
                self.assertEqual(result.exit_code, 2, msg=f"{path.name}: {result.output}")
                self.assertIn("ChainParseError", result.output)
                self.assertNotIsInstance(result.exception, (TypeError, UnicodeDecodeError))


class TestVerifyCommand(TestCase):
    """Suite runs through ``verify``."""

    def setUp(self) -> None:
        self.runner = CliRunner()

    def test_empty_corpus_is_clean(self) -> None:
        with TemporaryDirectory() as tmp:
            out = Path(tmp) / "report.json"
            result = self.runner.invoke(curvmix_cli.cli, ["verify", "--corpus", "none", "--out", str(out)])
            self.assertEqual(result.exit_code, 0, msg=result.output)
            report = json.loads(out.read_text(encoding="utf-8"))
            self.assertEqual(report["summary"]["total"], 0)
            self.assertEqual(report["reports"], [])

    def test_single_chain_file(self) -> None:
        with TemporaryDirectory() as tmp:
            out = Path(tmp) / "report.json"
            result = self.runner.invoke(
                curvmix_cli.cli,
                ["verify", "--corpus", str(FIXTURE_DIR / "lazy_cycle4.json"), "--seed", "3", "--out", str(out)],
            )
            report = json.loads(out.read_text(encoding="utf-8"))
            self.assertEqual(report["seed"], 3)
            cycle_records = [record for record in report["reports"] if record["chain_id"] == "lazy_cycle4"]
            self.assertTrue(cycle_records)
            self.assertTrue(all(record["status"] == "pass" for record in cycle_records))
            summary = report["summary"]
            expected_exit = 0 if summary["fail"] == 0 and summary["error"] == 0 else 1
            self.assertEqual(result.exit_code, expected_exit)
            self.assertIn("Verification Summary", result.output)

    def test_corpus_yaml_with_broken_entry(self) -> None:
        with TemporaryDirectory() as tmp:
            corpus = Path(tmp) / "corpus.yaml"
            corpus.write_text(
                "chains:\n  tiny-cycle:\n    family: cycle\n    parameters: {n: 2}\n", encoding="utf-8"
            )
            out = Path(tmp) / "report.json"
            result = self.runner.invoke(curvmix_cli.cli, ["verify", "--corpus", str(corpus), "--out", str(out)])
            self.assertEqual(result.exit_code, 1)
            report = json.loads(out.read_text(encoding="utf-8"))
            statuses = {(r["chain_id"], r["statement"]): r["status"] for r in report["reports"]}
            self.assertEqual(statuses[("tiny-cycle", "corpus_tags")], "error")

    def test_bad_selection_and_seed(self) -> None:
        result = self.runner.invoke(curvmix_cli.cli, ["verify", "--corpus", str(FIXTURE_DIR / "absent.yaml")])
        self.assertEqual(result.exit_code, 2)
        result = self.runner.invoke(curvmix_cli.cli, ["verify", "--corpus", "none", "--seed", "-5"])
        self.assertEqual(result.exit_code, 2)
