"""Report serialization: canonical JSON (17-significant-digit floats,
stable key order) and the lossy CSV projection.

Identical inputs must produce byte-identical output, so floats are
rendered with an explicit format instead of repr and dictionaries keep
insertion order.
"""

from __future__ import annotations

import io
import json
import math
from typing import Iterable

from qortho.orthogonality import VerificationReport

__all__ = [
    "REPORT_SCHEMA",
    "CSV_HEADER",
    "report_to_record",
    "render_json",
    "render_csv",
    "summarize",
]

CSV_HEADER = "identity_id,i,j,lhs,rhs,residual,terms_used,tail_estimate,status"

_RECORD_SCHEMA = {
    "type": "object",
    "required": [
        "identity_id",
        "i",
        "j",
        "lhs",
        "rhs",
        "residual",
        "terms_used",
        "tail_estimate",
        "passed",
        "tolerance",
        "status",
        "params",
    ],
    "properties": {
        "identity_id": {"type": "string"},
        "i": {"type": "integer"},
        "j": {"type": "integer"},
        "lhs": {"$ref": "#/definitions/extended_float"},
        "rhs": {"$ref": "#/definitions/extended_float"},
        "residual": {"$ref": "#/definitions/extended_float"},
        "terms_used": {"type": "integer"},
        "tail_estimate": {"$ref": "#/definitions/extended_float"},
        "passed": {"type": "boolean"},
        "tolerance": {"$ref": "#/definitions/extended_float"},
        "status": {"type": "string", "enum": ["pass", "fail", "inconclusive"]},
        "note": {"type": "string"},
        "params": {
            "type": "object",
            "required": ["q", "a", "b"],
            "properties": {
                "q": {"type": "number"},
                "a": {"type": "number"},
                "b": {"type": "number"},
            },
        },
    },
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "definitions": {
        # non-finite floats have no JSON representation; they serialize
        # to the strings below
        "extended_float": {
            "anyOf": [
                {"type": "number"},
                {"type": "string", "enum": ["inf", "-inf", "nan"]},
            ]
        }
    },
    "required": ["schema_version", "config", "records", "summary"],
    "properties": {
        "schema_version": {"type": "string", "enum": ["1"]},
        "generated_at": {"type": "string"},
        "config": {"type": "object"},
        "records": {"type": "array", "items": _RECORD_SCHEMA},
        "summary": {
            "type": "object",
            "required": ["passed", "failed", "inconclusive"],
            "properties": {
                "passed": {"type": "integer"},
                "failed": {"type": "integer"},
                "inconclusive": {"type": "integer"},
            },
        },
    },
}


def report_to_record(r: VerificationReport) -> dict:
    """Flatten a report into the schema's record shape."""
    rec = {
        "identity_id": r.identity_id,
        "i": int(r.indices[0]),
        "j": int(r.indices[1]),
        "lhs": float(r.lhs),
        "rhs": float(r.rhs),
        "residual": float(r.residual),
        "terms_used": int(r.terms_used),
        "tail_estimate": float(r.tail_estimate),
        "passed": bool(r.passed),
        "tolerance": float(r.tolerance),
        "status": r.status,
        "params": {"q": float(r.params.q), "a": float(r.params.a), "b": float(r.params.b)},
    }
    if r.note:
        rec["note"] = r.note
    return rec


def summarize(records: Iterable[dict]) -> dict:
    counts = {"passed": 0, "failed": 0, "inconclusive": 0}
    for rec in records:
        if rec["status"] == "pass":
            counts["passed"] += 1
        elif rec["status"] == "fail":
            counts["failed"] += 1
        else:
            counts["inconclusive"] += 1
    return counts


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def _render_value(obj, out: io.StringIO, indent: int) -> None:
    pad = "  " * indent
    if obj is None:
        out.write("null")
    elif obj is True:
        out.write("true")
    elif obj is False:
        out.write("false")
    elif isinstance(obj, str):
        out.write(json.dumps(obj))
    elif isinstance(obj, int):
        out.write(str(obj))
    elif isinstance(obj, float):
        out.write(_fmt_float(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.write("{}")
            return
        out.write("{\n")
        items = list(obj.items())
        for k, v in items[:-1]:
            out.write(f'{pad}  {json.dumps(str(k))}: ')
            _render_value(v, out, indent + 1)
            out.write(",\n")
        k, v = items[-1]
        out.write(f'{pad}  {json.dumps(str(k))}: ')
        _render_value(v, out, indent + 1)
        out.write(f"\n{pad}}}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.write("[]")
            return
        out.write("[\n")
        for v in obj[:-1]:
            out.write(f"{pad}  ")
            _render_value(v, out, indent + 1)
            out.write(",\n")
        out.write(f"{pad}  ")
        _render_value(obj[-1], out, indent + 1)
        out.write(f"\n{pad}]")
    else:
        raise TypeError(f"cannot serialize {type(obj)!r}")


def render_json(payload: dict) -> str:
    out = io.StringIO()
    _render_value(payload, out, 0)
    out.write("\n")
    return out.getvalue()


def _fmt_csv_float(x: float) -> str:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def render_csv(records: Iterable[dict]) -> str:
    """Lossy CSV projection: no config echo, notes, or parameters."""
    lines = [CSV_HEADER]
    for rec in records:
        lines.append(
            ",".join(
                [
                    rec["identity_id"],
                    str(rec["i"]),
                    str(rec["j"]),
                    _fmt_csv_float(rec["lhs"]),
                    _fmt_csv_float(rec["rhs"]),
                    _fmt_csv_float(rec["residual"]),
                    str(rec["terms_used"]),
                    _fmt_csv_float(rec["tail_estimate"]),
                    rec["status"],
                ]
            )
        )
    return "\n".join(lines) + "\n"


def render_table_csv(rows: Iterable[dict]) -> str:
    lines = ["family,n,m_or_x,value,method"]
    for row in rows:
        lines.append(
            ",".join(
                [
                    row["family"],
                    str(row["n"]),
                    _fmt_csv_float(row["m_or_x"]) if isinstance(row["m_or_x"], float) else str(row["m_or_x"]),
                    _fmt_csv_float(row["value"]),
                    row["method"],
                ]
            )
        )
    return "\n".join(lines) + "\n"
