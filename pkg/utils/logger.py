"""
Logging configuration for curvmix.

Updates: v0.1.0 - 2026-10-16 - Console output moved to stderr; stdout carries machine output.
"""

from __future__ import annotations

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DEFAULT_LOG_DIR = Path(__file__).parent.parent / "logs"

# Third-party loggers that are noisy at DEBUG.
_QUIET_LOGGERS = ("numexpr", "networkx")


def _replace_unencodable(message: str, encoding: Optional[str]) -> str:
    codec = encoding or "utf-8"
    return message.encode(codec, errors="replace").decode(codec, errors="replace")


class EncodingSafeStreamHandler(logging.StreamHandler):
    """Stream handler that degrades symbols like ✅ to '?' on narrow consoles."""

    def emit(self, record: logging.LogRecord) -> None:  # type: ignore[override]
        if self.stream is None:
            return
        try:
            message = self.format(record)
            try:
                self.stream.write(message + self.terminator)
            except UnicodeEncodeError:
                encoding = getattr(self.stream, "encoding", None)
                self.stream.write(_replace_unencodable(message, encoding) + self.terminator)
            self.flush()
        except Exception:
            self.handleError(record)


def resolve_level(log_level: object) -> int:
    """Map a level name to its number; unknown names give INFO."""
    name = log_level.upper() if isinstance(log_level, str) else "INFO"
    level = logging.getLevelName(name)
    return level if isinstance(level, int) else logging.INFO


def setup_logging(log_level: str = "INFO",
                  log_file: str = "curvmix.log",
                  max_bytes: int = 10 * 1024 * 1024,
                  backup_count: int = 5,
                  log_dir: Optional[Path] = None) -> logging.Logger:
    """Install the rotating file handler and the stderr console handler on the root logger."""

    level = resolve_level(log_level)
    target_dir = Path(log_dir) if log_dir is not None else DEFAULT_LOG_DIR
    target_dir.mkdir(parents=True, exist_ok=True)

    root = logging.getLogger()
    root.setLevel(level)
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(LOG_FORMAT)

    file_handler = RotatingFileHandler(
        target_dir / log_file,
        maxBytes=max_bytes,
        backupCount=backup_count,
        encoding="utf-8",
    )
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(formatter)

    # stdout is reserved for chain and profile JSON.
    console_handler = EncodingSafeStreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)

    root.addHandler(file_handler)
    root.addHandler(console_handler)

    # numpy RuntimeWarnings from float fallbacks end up in the log file.
    logging.captureWarnings(True)
    for name in _QUIET_LOGGERS:
        logging.getLogger(name).setLevel(logging.WARNING)
    return root
