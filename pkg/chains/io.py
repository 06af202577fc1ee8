"""
JSON chain files: {"n": int, "mode": "exact"|"float", "rows": [[...], ...]}.

Exact entries are "p/q" strings, float entries are JSON numbers. Optional
"labels" and "meta" keys round-trip unchanged.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Union

from chains.chain import EXACT, FLOAT, Chain, build_chain
from errors import ChainParseError
from utils.helpers import format_rational, to_jsonable


def chain_to_dict(chain: Chain) -> Dict[str, Any]:
    if chain.exact:
        rows = [[format_rational(value) for value in row] for row in chain.P]
    else:
        rows = [[float(value) for value in row] for row in chain.P]
    payload: Dict[str, Any] = {"n": chain.n, "mode": chain.mode, "rows": rows}
    if chain.labels is not None:
        payload["labels"] = list(chain.labels)
    if chain.meta:
        payload["meta"] = to_jsonable(chain.meta)
    return payload


def dumps_chain(chain: Chain) -> str:
    """Deterministic JSON text for a chain."""
    return json.dumps(chain_to_dict(chain), indent=2, sort_keys=True) + "\n"


def chain_from_dict(payload: Any) -> Chain:
    if not isinstance(payload, dict):
        raise ChainParseError("chain file must contain a JSON object")
    missing = [key for key in ("n", "mode", "rows") if key not in payload]
    if missing:
        raise ChainParseError(f"chain file is missing keys: {', '.join(missing)}")

    mode = payload["mode"]
    if mode not in (EXACT, FLOAT):
        raise ChainParseError(f"mode must be 'exact' or 'float', got {mode!r}")
    n = payload["n"]
    rows = payload["rows"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ChainParseError(f"n must be a positive integer, got {n!r}")
    if not isinstance(rows, list) or len(rows) != n or any(
        not isinstance(row, list) or len(row) != n for row in rows
    ):
        raise ChainParseError(f"rows must be a dense {n}x{n} list of lists")

    for row in rows:
        for entry in row:
            if mode == EXACT and not isinstance(entry, (str, int)):
                raise ChainParseError(f"exact entries must be 'p/q' strings, got {entry!r}")
            if mode == FLOAT and (isinstance(entry, bool) or not isinstance(entry, (int, float))):
                raise ChainParseError(f"float entries must be numbers, got {entry!r}")

    labels = payload.get("labels")
    if labels is not None and (
        not isinstance(labels, list) or len(labels) != n or not all(isinstance(label, str) for label in labels)
    ):
        raise ChainParseError(f"labels must be a list of {n} strings")
    meta = payload.get("meta")
    if meta is not None and not isinstance(meta, dict):
        raise ChainParseError("meta must be a JSON object")

    return build_chain(rows, mode=mode, labels=labels, meta=meta)


def loads_chain(text: str) -> Chain:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ChainParseError(f"malformed JSON: {exc}") from exc
    return chain_from_dict(payload)


def load_chain(path: Union[str, Path]) -> Chain:
    """Read and validate a chain file."""
    source = Path(path)
    try:
        text = source.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ChainParseError(f"{source} is not valid UTF-8: {exc}") from exc
    except OSError as exc:
        raise ChainParseError(f"cannot read {source}: {exc}") from exc
    return loads_chain(text)


def save_chain(chain: Chain, path: Union[str, Path]) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(dumps_chain(chain), encoding="utf-8")
    return target
