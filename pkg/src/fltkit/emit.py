"""Deterministic serialisation of reports.

JSON: sorted keys, exact integers and rationals as decimal strings, floats
rounded to 12 significant digits, complex numbers as ``{"re", "im"}``.
"""
from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import asdict, is_dataclass
from fractions import Fraction

SIG_DIGITS = 12


def _float(x: float):
    if x != x or x in (float("inf"), float("-inf")):
        return str(x)
    v = float(f"{x:.{SIG_DIGITS}g}")
    return 0.0 if v == 0 else v


def to_plain(obj):
    """Recursively convert a report into JSON-safe primitives."""
    if hasattr(obj, "as_dict"):
        return to_plain(obj.as_dict())
    if is_dataclass(obj) and not isinstance(obj, type):
        return to_plain(asdict(obj))
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, float):
        return _float(obj)
    if isinstance(obj, complex):
        return {"re": _float(obj.real), "im": _float(obj.imag)}
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj, key=str) if isinstance(obj, (set, frozenset)) else obj
        return [to_plain(v) for v in items]
    if hasattr(obj, "item"):  # numpy scalars
        return to_plain(obj.item())
    return str(obj)


def emit_json(report) -> str:
    return json.dumps(to_plain(report), sort_keys=True, ensure_ascii=False) + "\n"


def _flatten(prefix: str, obj, out: list):
    if isinstance(obj, dict):
        for k in sorted(obj):
            _flatten(f"{prefix}.{k}" if prefix else k, obj[k], out)
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, obj))


def emit_csv(report, header: list[str] | None = None) -> str:
    """Tables (lists of rows with a header) pass through; anything else is flattened to key,value."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header is not None:
        w.writerow(header)
        for row in report:
            w.writerow([_cell(v) for v in row])
        return buf.getvalue()
    rows: list = []
    _flatten("", to_plain(report), rows)
    w.writerow(["key", "value"])
    for k, v in rows:
        w.writerow([k, _cell(v)])
    return buf.getvalue()


def _cell(v):
    if isinstance(v, float):
        return f"{v:.{SIG_DIGITS}g}"
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    return str(v)


def emit_text(report) -> str:
    rows: list = []
    _flatten("", to_plain(report), rows)
    return "".join(f"{k}: {_cell(v)}\n" for k, v in rows)


def emit(report, fmt: str, header: list[str] | None = None) -> bytes:
    if fmt == "json":
        text = emit_json(report if header is None else [dict(zip(header, row)) for row in report])
    elif fmt == "csv":
        text = emit_csv(report, header)
    elif fmt == "text":
        text = emit_csv(report, header) if header is not None else emit_text(report)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return text.encode("utf-8")
