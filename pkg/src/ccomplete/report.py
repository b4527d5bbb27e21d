"""Deterministic report text: fixed key order, floats at 17 significant digits."""
from __future__ import annotations

import json
import math

import numpy as np


def _float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _float(float(obj))
    if isinstance(obj, complex):
        return _encode([obj.real, obj.imag], indent, level)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_encode(str(k), indent, 0)}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj):
            return "[" + ", ".join(_encode(v, indent, 0) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "to_dict"):
        return _encode(obj.to_dict(), indent, level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def emit_report(result, fmt: str = "json") -> str:
    """Serialize a result (dict or object with ``to_dict``) as JSON-syntax or plain text."""
    data = result.to_dict() if hasattr(result, "to_dict") else result
    if fmt == "json":
        return _encode(data, 2, 0) + "\n"
    if fmt == "text":
        return "".join(_text_lines(data, ""))
    raise ValueError(f"unknown format {fmt!r}")


def _text_lines(data, prefix):
    if isinstance(data, dict):
        for k, v in data.items():
            yield from _text_lines(v, f"{prefix}{k}." if isinstance(v, dict) else f"{prefix}{k}")
    else:
        yield f"{prefix.rstrip('.')}: {_encode(data, 0, 0).replace(chr(10), ' ')}\n"
