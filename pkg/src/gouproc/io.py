"""CSV input/output for series and tables.

Floats are written with ``repr``, the shortest string that round-trips
to the same double, so write -> read is lossless.
"""

from __future__ import annotations

import csv
import io as _io
import os

import numpy as np

__all__ = ["read_series", "write_series", "write_table", "format_table"]


def read_series(path: str, column=None) -> np.ndarray:
    """Read one numeric column from a CSV file.

    Accepts a bare column of numbers, or a delimited file with an
    optional header row.  ``column`` selects by name (header required)
    or integer position.  Without ``column`` the file must contain
    exactly one numeric column; several candidates (a t,v path file,
    say) raise rather than silently pick one.
    """
    with open(path, "r", newline="") as fh:
        text = fh.read()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError(f"{path}: empty file")
    try:
        dialect = csv.Sniffer().sniff(lines[0], delimiters=",;\t ")
    except csv.Error:
        dialect = csv.excel
    rows = list(csv.reader(lines, dialect))

    header = None
    first = rows[0]
    if not _all_numeric(first):
        header = [c.strip() for c in first]
        rows = rows[1:]
        if not rows:
            raise ValueError(f"{path}: header but no data rows")

    if isinstance(column, str):
        if header is None or column not in header:
            raise ValueError(f"{path}: no column named {column!r}")
        idx = header.index(column)
    elif isinstance(column, int):
        idx = column
    else:
        idx = _sole_numeric_index(rows[0], header, path)

    try:
        return np.array([float(r[idx]) for r in rows])
    except (IndexError, ValueError) as exc:
        raise ValueError(f"{path}: column {column!r} is not fully numeric") from exc


def _all_numeric(row) -> bool:
    try:
        for cell in row:
            float(cell)
    except ValueError:
        return False
    return len(row) > 0


def _sole_numeric_index(row, header, path: str) -> int:
    numeric = []
    for i, cell in enumerate(row):
        try:
            float(cell)
            numeric.append(i)
        except ValueError:
            continue
    if not numeric:
        raise ValueError(f"{path}: no numeric column found")
    if len(numeric) > 1:
        names = (
            ", ".join(repr(header[i]) for i in numeric)
            if header
            else ", ".join(str(i) for i in numeric)
        )
        raise ValueError(
            f"{path}: several numeric columns ({names}); pass column= to pick one"
        )
    return numeric[0]


def _fmt(x) -> str:
    return repr(float(x)) if isinstance(x, (float, np.floating)) else str(x)


def write_series(path_or_handle, values, header: str = "value") -> None:
    """Write one column of floats with a header row."""
    _write_rows(path_or_handle, [header], [[v] for v in values])


def write_table(path_or_handle, columns: dict) -> None:
    """Write named columns of equal length."""
    names = list(columns)
    cols = [list(columns[n]) for n in names]
    if len({len(c) for c in cols}) > 1:
        raise ValueError("columns must have equal length")
    _write_rows(path_or_handle, names, zip(*cols) if cols else [])


def _write_rows(path_or_handle, header, rows) -> None:
    own = isinstance(path_or_handle, (str, os.PathLike))
    fh = open(path_or_handle, "w", newline="") if own else path_or_handle
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(x) for x in row])
    finally:
        if own:
            fh.close()


def format_table(columns: dict) -> str:
    """CSV text for named columns (used by the CLI when no --out)."""
    buf = _io.StringIO()
    write_table(buf, columns)
    return buf.getvalue()
