"""Rendering tables as CSV, JSON or Markdown with byte-stable formatting."""

from __future__ import annotations

import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Any

FORMATS = ("csv", "json", "markdown")


@dataclass(frozen=True)
class ReportSpec:
    format: str = "csv"
    precision: int = 2
    destination: str | os.PathLike | None = None

    def __post_init__(self) -> None:
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {', '.join(FORMATS)}, got {self.format!r}")
        if isinstance(self.precision, bool) or not isinstance(self.precision, int):
            raise ValueError("precision must be an integer")
        if not 0 <= self.precision <= 10:
            raise ValueError(f"precision must be in [0, 10], got {self.precision}")


def fixed(value: float, places: int) -> Decimal:
    """Round half-up to ``places`` decimals, starting from the shortest repr.

    >>> fixed(7265.125, 2)
    Decimal('7265.13')
    """
    return Decimal(repr(float(value))).quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP)


@dataclass
class Table:
    """Column names, typed rows and a free-form summary.

    Cells hold ``int``, ``str`` or already-rounded ``Decimal`` values so every
    format shows the same data. ``summary`` ends up as trailing ``#`` lines
    in CSV, a bullet list in Markdown and a ``summary`` object in JSON.
    """

    columns: list[str]
    rows: list[list[Any]]
    meta: dict[str, Any] = field(default_factory=dict)
    summary: dict[str, Any] = field(default_factory=dict)


def _text(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (list, tuple)):
        return " ".join(_text(v) for v in value)
    return str(value)


def _jsonable(value: Any) -> Any:
    if isinstance(value, Decimal):
        return int(value) if value == value.to_integral_value() and value.as_tuple().exponent >= 0 else float(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def render_csv(table: Table) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_text(v) for v in row])
    for key, value in table.summary.items():
        buf.write(f"# {key}: {_text(value)}".rstrip() + "\n")
    return buf.getvalue()


def render_json(table: Table) -> str:
    doc = {
        "meta": _jsonable(table.meta),
        "rows": [dict(zip(table.columns, _jsonable(row))) for row in table.rows],
    }
    if table.summary:
        doc["summary"] = _jsonable(table.summary)
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, Decimal)) and not isinstance(value, bool)


def render_markdown(table: Table) -> str:
    cells = [[_text(v).replace("|", "\\|") for v in row] for row in table.rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells] + [3]) for i, c in enumerate(table.columns)]
    numeric = [
        bool(table.rows) and all(_is_number(row[i]) for row in table.rows)
        for i in range(len(table.columns))
    ]

    def line(values):
        out = []
        for v, w, num in zip(values, widths, numeric):
            out.append(v.rjust(w) if num else v.ljust(w))
        return "| " + " | ".join(out) + " |"

    lines = [line(table.columns)]
    lines.append("|" + "|".join(("-" * (w + 1) + ":") if num else ("-" * (w + 2)) for w, num in zip(widths, numeric)) + "|")
    lines.extend(line(r) for r in cells)
    if table.summary:
        lines.append("")
        lines.extend(f"- **{k}**: {_text(v)}".rstrip() for k, v in table.summary.items())
    return "\n".join(lines) + "\n"


def render(table: Table, fmt: str) -> str:
    if fmt == "csv":
        return render_csv(table)
    if fmt == "json":
        return render_json(table)
    if fmt == "markdown":
        return render_markdown(table)
    raise ValueError(f"unknown format {fmt!r}")


def write_output(text: str, destination=None) -> None:
    """Write to stdout, or atomically replace ``destination``."""
    if destination is None or str(destination) == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    dest = Path(destination)
    fd, tmp = tempfile.mkstemp(prefix=f".{dest.name}.", dir=dest.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, dest)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
