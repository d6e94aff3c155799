"""Small shared formatting helpers for report serialization.

CSV output is meant to be diffed: full double precision, no locale,
'\\n' newlines, one header line.  Volatile values (wall time) belong in
the text rendering only, never in CSV.
"""

from __future__ import annotations


def format_cell(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def csv_text(columns, rows) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(format_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def kv_text(pairs) -> str:
    width = max((len(str(k)) for k, _ in pairs), default=0)
    return "\n".join("%-*s  %s" % (width, k, format_cell(v)) for k, v in pairs) + "\n"
