"""Canonical JSON: sorted keys, two-space indent, trailing newline, no floats."""

from __future__ import annotations

import json
from pathlib import Path


def _reject_floats(obj, path="$"):
    if isinstance(obj, float):
        raise ValueError(f"float value at {path}")
    if isinstance(obj, dict):
        for k, v in obj.items():
            _reject_floats(v, f"{path}.{k}")
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _reject_floats(v, f"{path}[{i}]")


def dumps(obj) -> str:
    _reject_floats(obj)
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def write(obj, path: str | Path) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def _no_float(s):
    raise ValueError(f"float literal {s!r} not allowed")


def loads(text: str):
    try:
        return json.loads(text, parse_float=_no_float)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON: {exc}") from None


def read(path: str | Path):
    return loads(Path(path).read_text(encoding="utf-8"))
