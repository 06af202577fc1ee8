"""Tests for Config precedence, converters and clamped getters."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import pytest

import config as config_module
from config import MAX_ENUMERATION_LIMIT, Config


@pytest.fixture
def isolated(monkeypatch, tmp_path):
    """Point config.json at a temporary directory and clear CURVMIX_* variables."""
    for key in Config._CONFIG_KEY_MAPPING:
        monkeypatch.delenv(key, raising=False)
    monkeypatch.delenv("LOG_LEVEL", raising=False)
    monkeypatch.setattr(config_module, "load_dotenv", lambda *args, **kwargs: False)
    monkeypatch.setattr(config_module, "__file__", str(tmp_path / "config.py"))
    return tmp_path


def test_defaults(isolated) -> None:
    cfg = Config()
    assert cfg.mode == "exact"
    assert cfg.horizon is None
    assert cfg.get_enum_limit() == MAX_ENUMERATION_LIMIT
    assert cfg.get_seed() == 0
    assert cfg.get_threads() == 1
    assert cfg.get_bit_budget() == 4096
    assert cfg.get_mc_trials() == 100_000
    assert cfg.get_property_draws() == 200
    assert cfg.cutoff_p == Fraction(1, 8)
    assert cfg.log_level == "INFO"
    assert cfg.get_corpus_path() == isolated / "configs" / "corpus.yaml"


def test_environment_overrides_config_file(isolated, monkeypatch) -> None:
    (isolated / "config.json").write_text(
        json.dumps({"mode": "float", "seed": 5, "threads": 3, "log_level": "debug"}), encoding="utf-8"
    )
    monkeypatch.setenv("CURVMIX_SEED", "11")
    cfg = Config()
    assert cfg.mode == "float"
    assert cfg.seed == 11
    assert cfg.threads == 3
    assert cfg.log_level == "DEBUG"


def test_invalid_values_fall_back(isolated, monkeypatch) -> None:
    monkeypatch.setenv("CURVMIX_MODE", "decimal")
    monkeypatch.setenv("CURVMIX_HORIZON", "-4")
    monkeypatch.setenv("CURVMIX_ENUM_LIMIT", "99")
    monkeypatch.setenv("CURVMIX_THREADS", "0")
    monkeypatch.setenv("CURVMIX_SEED", "-1")
    monkeypatch.setenv("CURVMIX_CUTOFF_P", "3/2")
    monkeypatch.setenv("CURVMIX_MC_TRIALS", "not-a-number")
    cfg = Config()
    assert cfg.mode == "exact"
    assert cfg.horizon is None
    assert cfg.get_enum_limit() == MAX_ENUMERATION_LIMIT
    assert cfg.get_threads() == 1
    assert cfg.get_seed() == (1 << 64) - 1
    assert cfg.cutoff_p == Fraction(1, 8)
    assert cfg.get_mc_trials() == 100_000


def test_malformed_config_file_is_ignored(isolated) -> None:
    (isolated / "config.json").write_text("[1, 2", encoding="utf-8")
    assert Config().mode == "exact"
    (isolated / "config.json").write_text("[1, 2]", encoding="utf-8")
    assert Config().seed == 0


def test_converters() -> None:
    assert Config._to_int("5", 1) == 5
    assert Config._to_int("", 2) == 2
    assert Config._to_int(None, 3) == 3
    assert Config._to_fraction("1/4", Fraction(1, 8)) == Fraction(1, 4)
    assert Config._to_fraction("0.5", Fraction(1, 8)) == Fraction(1, 2)
    assert Config._to_fraction("1/0", Fraction(1, 8)) == Fraction(1, 8)
    assert Config._to_fraction("0", Fraction(1, 8)) == Fraction(1, 8)


def test_absolute_corpus_path(isolated, monkeypatch) -> None:
    target = isolated / "elsewhere.yaml"
    monkeypatch.setenv("CURVMIX_CORPUS_PATH", str(target))
    assert Config().get_corpus_path() == Path(target)
