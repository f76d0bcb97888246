"""Deterministic CSV and gnuplot data output."""
import csv
import io
from pathlib import Path
from typing import Iterable, Mapping, Optional

from coset_qkd.errors import ValidationError

CSV = "csv"
GNUPLOT = "gnuplot-data"
FORMATS = (CSV, GNUPLOT)


def format_value(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".17g")
    if value is None:
        return ""
    return str(value)


def _as_row(item) -> Mapping[str, object]:
    return item.to_row() if hasattr(item, "to_row") else item


def emit(dataset: Iterable, fmt: str = CSV, path: Optional[str] = None) -> str:
    """Render rows (mappings, or objects with ``to_row()``) and optionally write them.

    Column order follows the first row's keys.
    """
    if fmt not in FORMATS:
        raise ValidationError(f"format must be one of {', '.join(FORMATS)}, got {fmt!r}")
    rows = [_as_row(item) for item in dataset]
    if not rows:
        raise ValidationError("nothing to emit: dataset is empty")
    columns = list(rows[0].keys())
    for row in rows[1:]:
        if list(row.keys()) != columns:
            raise ValidationError(f"row columns {list(row.keys())} differ from {columns}")

    buf = io.StringIO()
    if fmt == CSV:
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(row[c]) for c in columns])
    else:
        buf.write("# " + " ".join(columns) + "\n")
        for row in rows:
            buf.write(" ".join(format_value(row[c]) or "nan" for c in columns) + "\n")
    text = buf.getvalue()
    if path:
        Path(path).write_text(text)
    return text
