"""
Configuration management for curvmix.

Updates: v0.1.0 - 2026-10-16 - Settings for arithmetic mode, horizon, enumeration limit and seeds.
Updates: v0.1.1 - 2026-10-16 - Added thread cap and Monte Carlo trial count.
"""

from __future__ import annotations

import json
import logging
import os
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

MAX_ENUMERATION_LIMIT = 24
MODES = ("exact", "float")


class Config:
    """Load configuration with Env → .env → config.json → defaults precedence."""

    _CONFIG_KEY_MAPPING: Dict[str, tuple[str, ...]] = {
        "CURVMIX_MODE": ("CURVMIX_MODE", "mode"),
        "CURVMIX_HORIZON": ("CURVMIX_HORIZON", "horizon"),
        "CURVMIX_ENUM_LIMIT": ("CURVMIX_ENUM_LIMIT", "enum_limit"),
        "CURVMIX_SEED": ("CURVMIX_SEED", "seed"),
        "CURVMIX_THREADS": ("CURVMIX_THREADS", "threads"),
        "CURVMIX_BIT_BUDGET": ("CURVMIX_BIT_BUDGET", "bit_budget"),
        "CURVMIX_LOG_LEVEL": ("CURVMIX_LOG_LEVEL", "LOG_LEVEL", "log_level"),
        "CURVMIX_CORPUS_PATH": ("CURVMIX_CORPUS_PATH", "corpus_path"),
        "CURVMIX_MC_TRIALS": ("CURVMIX_MC_TRIALS", "mc_trials"),
        "CURVMIX_PROPERTY_DRAWS": ("CURVMIX_PROPERTY_DRAWS", "property_draws"),
        "CURVMIX_CUTOFF_P": ("CURVMIX_CUTOFF_P", "cutoff_p"),
    }

    _DEFAULTS: Dict[str, Any] = {
        "CURVMIX_MODE": "exact",
        "CURVMIX_HORIZON": None,
        "CURVMIX_ENUM_LIMIT": MAX_ENUMERATION_LIMIT,
        "CURVMIX_SEED": 0,
        "CURVMIX_THREADS": 1,
        "CURVMIX_BIT_BUDGET": 4096,
        "CURVMIX_LOG_LEVEL": "INFO",
        "CURVMIX_CORPUS_PATH": "configs/corpus.yaml",
        "CURVMIX_MC_TRIALS": 100_000,
        "CURVMIX_PROPERTY_DRAWS": 200,
        "CURVMIX_CUTOFF_P": "1/8",
    }

    def __init__(self) -> None:
        load_dotenv()
        self.config_file: Path = Path(__file__).parent / "config.json"
        self._config_data: Dict[str, Any] = self._load_config_file()

        mode_value = self._get_setting("CURVMIX_MODE")
        horizon_value = self._get_setting("CURVMIX_HORIZON")
        enum_limit_value = self._get_setting("CURVMIX_ENUM_LIMIT")
        seed_value = self._get_setting("CURVMIX_SEED")
        threads_value = self._get_setting("CURVMIX_THREADS")
        bit_budget_value = self._get_setting("CURVMIX_BIT_BUDGET")
        log_level_value = self._get_setting("CURVMIX_LOG_LEVEL")
        corpus_path_value = self._get_setting("CURVMIX_CORPUS_PATH")
        mc_trials_value = self._get_setting("CURVMIX_MC_TRIALS")
        property_draws_value = self._get_setting("CURVMIX_PROPERTY_DRAWS")
        cutoff_p_value = self._get_setting("CURVMIX_CUTOFF_P")

        mode = str(mode_value or self._DEFAULTS["CURVMIX_MODE"]).strip().lower()
        if mode not in MODES:
            logger.warning("Unknown CURVMIX_MODE %r; falling back to exact.", mode_value)
            mode = "exact"
        self.mode: str = mode
        horizon = self._to_int(horizon_value, 0)
        self.horizon: Optional[int] = horizon if horizon > 0 else None
        self.enum_limit: int = self._to_int(enum_limit_value, self._DEFAULTS["CURVMIX_ENUM_LIMIT"])
        self.seed: int = self._to_int(seed_value, self._DEFAULTS["CURVMIX_SEED"])
        self.threads: int = self._to_int(threads_value, self._DEFAULTS["CURVMIX_THREADS"])
        self.bit_budget: int = self._to_int(bit_budget_value, self._DEFAULTS["CURVMIX_BIT_BUDGET"])
        self.log_level: str = str(log_level_value or self._DEFAULTS["CURVMIX_LOG_LEVEL"]).upper()
        self.corpus_path: Path = Path(str(corpus_path_value or self._DEFAULTS["CURVMIX_CORPUS_PATH"]))
        self.mc_trials: int = self._to_int(mc_trials_value, self._DEFAULTS["CURVMIX_MC_TRIALS"])
        self.property_draws: int = self._to_int(property_draws_value, self._DEFAULTS["CURVMIX_PROPERTY_DRAWS"])
        self.cutoff_p: Fraction = self._to_fraction(cutoff_p_value, Fraction(1, 8))

    def _load_config_file(self) -> Dict[str, Any]:
        """Load configuration values from config.json if available."""
        if not self.config_file.exists():
            return {}
        try:
            with self.config_file.open("r", encoding="utf-8") as handle:
                data = json.load(handle)
                if isinstance(data, dict):
                    return data
                logger.warning("config.json must contain a JSON object; ignoring content.")
        except (json.JSONDecodeError, OSError) as exc:
            logger.warning("Failed to read config.json: %s", exc)
        return {}

    def _get_setting(self, env_key: str) -> Any:
        """Resolve a configuration value using the configured precedence."""
        env_value = os.getenv(env_key)
        if env_value not in (None, ""):
            return env_value

        keys_to_check = self._CONFIG_KEY_MAPPING.get(env_key, (env_key,))
        for key in keys_to_check:
            config_value = self._config_data.get(key)
            if config_value not in (None, ""):
                return config_value

        return self._DEFAULTS.get(env_key)

    @staticmethod
    def _to_int(value: Any, default: int) -> int:
        """Convert a configuration value to integer with fallback."""
        try:
            if value is None or value == "":
                return default
            return int(value)
        except (TypeError, ValueError):
            return default

    @staticmethod
    def _to_fraction(value: Any, default: Fraction) -> Fraction:
        """Convert "p/q", decimal strings or numbers to a Fraction with fallback."""
        try:
            if value is None or value == "":
                return default
            parsed = Fraction(str(value).strip())
        except (TypeError, ValueError, ZeroDivisionError):
            return default
        if not 0 < parsed <= 1:
            return default
        return parsed

    def get_enum_limit(self) -> int:
        """Return the enumeration limit clamped to the supported range."""
        return max(1, min(MAX_ENUMERATION_LIMIT, self.enum_limit))

    def get_threads(self) -> int:
        """Return the worker thread cap."""
        return max(1, self.threads)

    def get_bit_budget(self) -> int:
        """Return the exact-arithmetic denominator bit budget."""
        return max(64, self.bit_budget)

    def get_seed(self) -> int:
        """Return the master seed reduced to 64 bits."""
        return self.seed % (1 << 64)

    def get_mc_trials(self) -> int:
        """Return the Monte Carlo trial count."""
        return max(100, self.mc_trials)

    def get_property_draws(self) -> int:
        """Return the number of random test functions drawn per chain."""
        return max(1, self.property_draws)

    def get_corpus_path(self) -> Path:
        """Return the default corpus definition path, resolved against the package root."""
        if self.corpus_path.is_absolute():
            return self.corpus_path
        return Path(__file__).parent / self.corpus_path
