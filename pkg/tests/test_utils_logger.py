"""Tests for the logging helpers."""

from __future__ import annotations

import io
import logging
import sys
from logging.handlers import RotatingFileHandler

import pytest

from utils.logger import EncodingSafeStreamHandler, resolve_level, setup_logging


class _Latin1Stream(io.StringIO):
    """Console stand-in that rejects characters outside latin-1."""

    encoding = "latin-1"

    def write(self, s: str) -> int:  # type: ignore[override]
        s.encode(self.encoding)
        return super().write(s)


@pytest.fixture
def restore_root_logger():
    root = logging.getLogger()
    handlers = list(root.handlers)
    level = root.level
    yield root
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()
    for handler in handlers:
        root.addHandler(handler)
    root.setLevel(level)


def test_resolve_level() -> None:
    assert resolve_level("debug") == logging.DEBUG
    assert resolve_level("WARNING") == logging.WARNING
    assert resolve_level("verbose") == logging.INFO
    assert resolve_level(None) == logging.INFO


def test_setup_logging_installs_file_and_stderr_handlers(tmp_path, restore_root_logger) -> None:
    root = setup_logging(log_level="debug", log_file="run.log", max_bytes=4096, backup_count=1, log_dir=tmp_path)
    assert root is restore_root_logger
    assert root.level == logging.DEBUG

    file_handlers = [h for h in root.handlers if isinstance(h, RotatingFileHandler)]
    console_handlers = [h for h in root.handlers if isinstance(h, EncodingSafeStreamHandler)]
    assert len(file_handlers) == 1
    assert len(console_handlers) == 1
    assert console_handlers[0].stream is sys.stderr

    logging.getLogger("curvmix.tests").info("float fallback at t=%s", 7)
    file_handlers[0].flush()
    assert "float fallback at t=7" in (tmp_path / "run.log").read_text(encoding="utf-8")


def test_setup_logging_replaces_handlers_and_falls_back(tmp_path, restore_root_logger) -> None:
    setup_logging(log_level="info", log_dir=tmp_path)
    root = setup_logging(log_level="not-a-level", log_dir=tmp_path)
    assert len(root.handlers) == 2
    assert root.level == logging.INFO
    assert logging.getLogger("networkx").level == logging.WARNING


def test_handler_degrades_unencodable_symbols() -> None:
    stream = _Latin1Stream()
    handler = EncodingSafeStreamHandler(stream)
    handler.setFormatter(logging.Formatter("%(message)s"))
    record = logging.LogRecord("curvmix", logging.INFO, __file__, 0, "✅ cycle-4-lazy: 21 pass", None, None)

    handler.emit(record)

    assert stream.getvalue() == "? cycle-4-lazy: 21 pass\n"


def test_handler_routes_write_failures_to_handle_error(monkeypatch) -> None:
    class _Broken(io.StringIO):
        def write(self, s: str) -> int:  # type: ignore[override]
            raise OSError("closed console")

    handler = EncodingSafeStreamHandler(_Broken())
    seen = []
    monkeypatch.setattr(handler, "handleError", seen.append)
    record = logging.LogRecord("curvmix", logging.INFO, __file__, 0, "message", None, None)

    handler.emit(record)

    assert seen == [record]
