"""Versioned CSV/JSON emission and re-parsing for CLI outputs."""
from __future__ import annotations

import csv
import io
import json
import math
from typing import Iterable, Sequence

from .errors import ConfigError

SCHEMA = "nearfield-bounds schema v1"
HEADER_LINE = f"# {SCHEMA}"
SIG_DIGITS = 9


def format_value(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.{SIG_DIGITS}g}"
    if value is None:
        return ""
    try:
        return f"{float(value):.{SIG_DIGITS}g}"
    except (TypeError, ValueError):
        return str(value)


def _round(value):
    # floats go through the same text form as CSV so both outputs agree
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        return float(format_value(value)) if math.isfinite(value) else format_value(value)
    if isinstance(value, dict):
        return {str(k): _round(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round(v) for v in value]
    try:
        return _round(float(value))
    except (TypeError, ValueError):
        return str(value)


def render_csv(columns: Sequence[str], rows: Iterable[Sequence], comments: Sequence[str] = ()) -> str:
    """CSV text: schema line, optional ``# key=value`` comments, header, rows."""
    buf = io.StringIO()
    buf.write(HEADER_LINE + "\n")
    for c in comments:
        buf.write(f"# {c}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        if len(row) != len(columns):
            raise ValueError(f"row has {len(row)} fields, header has {len(columns)}")
        w.writerow([format_value(v) for v in row])
    return buf.getvalue()


def render_json(payload: dict) -> str:
    doc = {"schema": SCHEMA}
    doc.update(_round(payload))
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _cell(text: str):
    if text == "":
        return None
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def parse_csv(text: str) -> tuple[list[str], list[dict], list[str]]:
    """Inverse of :func:`render_csv`: ``(columns, rows, comments)``.

    Raises ``ConfigError`` if the schema line is missing or a row is ragged.
    """
    lines = text.split("\n")
    if not lines or lines[0] != HEADER_LINE:
        raise ConfigError("missing schema header line")
    comments = []
    i = 1
    while i < len(lines) and lines[i].startswith("#"):
        comments.append(lines[i][1:].strip())
        i += 1
    reader = csv.reader(line for line in lines[i:] if line)
    try:
        columns = next(reader)
    except StopIteration:
        raise ConfigError("missing CSV header row") from None
    rows = []
    for rec in reader:
        if len(rec) != len(columns):
            raise ConfigError(f"ragged CSV row: {rec}")
        rows.append({c: _cell(v) for c, v in zip(columns, rec)})
    return columns, rows, comments


def parse_json(text: str) -> dict:
    doc = json.loads(text)
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise ConfigError("JSON document lacks the expected schema tag")
    return doc


def write_text(path: str | None, text: str, stream=None):
    """Write to ``path`` (UTF-8, LF) or to ``stream`` when path is None or '-'."""
    if path is None or path == "-":
        stream.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
