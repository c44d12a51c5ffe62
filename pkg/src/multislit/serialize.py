"""Deterministic table serialization: CSV, JSON and complex-matrix codecs.

Floats are rendered with 17 significant digits (round-trip exact for IEEE
doubles) in both formats, rows end with a bare line feed, and JSON keys
keep insertion order, so identical inputs always produce identical bytes.
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError

FLOAT_DIGITS = 17


def format_float(value: float) -> str:
    """Fixed 17-significant-digit rendering, e.g. 0.25 -> '0.25'."""
    return format(float(value), ".17g")


def write_csv(path, columns, rows) -> None:
    """Write a comma-separated table: header row, '.' decimals, LF endings."""
    lines = [",".join(columns)]
    width = len(columns)
    for row in rows:
        if len(row) != width:
            raise ValidationError(f"row of width {len(row)} under {width} columns")
        lines.append(",".join(_cell(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _cell(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format_float(value)


def dumps_json(obj) -> str:
    """Serialize dict/list/scalar trees with 17-significant-digit floats."""
    parts: list[str] = []
    _emit(obj, parts)
    return "".join(parts)


def _emit(obj, parts: list[str]) -> None:
    if obj is None:
        parts.append("null")
    elif isinstance(obj, (bool, np.bool_)):
        parts.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        parts.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        f = float(obj)
        if f != f or f in (float("inf"), float("-inf")):
            raise ValidationError(f"cannot serialize non-finite float {f!r}")
        parts.append(format_float(f))
    elif isinstance(obj, str):
        parts.append(_quote(obj))
    elif isinstance(obj, dict):
        parts.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if not isinstance(key, str):
                raise ValidationError(f"JSON keys must be strings, got {key!r}")
            if i:
                parts.append(", ")
            parts.append(_quote(key))
            parts.append(": ")
            _emit(value, parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        parts.append("[")
        for i, value in enumerate(obj):
            if i:
                parts.append(", ")
            _emit(value, parts)
        parts.append("]")
    else:
        raise ValidationError(f"cannot serialize {type(obj).__name__}")


_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def _quote(text: str) -> str:
    out = ['"']
    for ch in text:
        if ch in _ESCAPES:
            out.append(_ESCAPES[ch])
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def write_json(path, meta: dict, columns, rows) -> None:
    """Write {"meta": {..., "columns": [...]}, "rows": [[...], ...]}."""
    payload = dict(meta)
    payload["columns"] = list(columns)
    doc = {"meta": payload, "rows": [list(r) for r in rows]}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_json(doc) + "\n")


def matrix_to_pairs(matrix) -> list[list[float]]:
    """Flatten a complex matrix row-major into [re, im] pairs."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2:
        raise ValidationError(f"expected a 2-d matrix, got ndim = {m.ndim}")
    return [[float(v.real), float(v.imag)] for v in m.reshape(-1)]


def matrix_from_pairs(pairs, n: int) -> np.ndarray:
    """Rebuild an n x n complex matrix from row-major [re, im] pairs."""
    flat = list(pairs)
    if len(flat) != n * n:
        raise ValidationError(f"expected {n * n} pairs for an {n} x {n} matrix, got {len(flat)}")
    values = [complex(re, im) for re, im in flat]
    return np.array(values, dtype=complex).reshape(n, n)
