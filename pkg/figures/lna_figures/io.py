"""CSV loading for the figure scripts.

The scripts plot exported values only; this module parses, validates the
referenced columns, and groups rows into labelled series.  Empty metric
cells (infeasible design points) come back as None so the plots can show
gaps exactly where synthesis failed.
"""

from __future__ import annotations

import csv


class EmptySelection(Exception):
    """The CSV (or a filtered selection of it) contains no rows."""


class MissingColumns(Exception):
    """A recipe references columns the CSV header does not carry."""


def load_rows(path: str) -> list[dict[str, object]]:
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if not reader.fieldnames:
            raise EmptySelection(f"{path}: no header")
        rows = []
        for raw in reader:
            row: dict[str, object] = {}
            for key, text in raw.items():
                if text is None or text == "":
                    row[key] = None
                else:
                    try:
                        row[key] = float(text)
                    except ValueError:
                        row[key] = text
            rows.append(row)
    if not rows:
        raise EmptySelection(f"{path}: no data rows")
    return rows


def require_columns(path: str, columns) -> None:
    with open(path, "r", newline="", encoding="utf-8") as fh:
        header = next(csv.reader(fh), None)
    if not header:
        raise EmptySelection(f"{path}: no header")
    missing = [c for c in columns if c not in header]
    if missing:
        raise MissingColumns(f"{path}: missing columns {missing}")


def series_by(rows, key: str) -> dict[float, list[dict[str, object]]]:
    """Group rows by a column value, preserving row order within groups."""
    groups: dict[float, list[dict[str, object]]] = {}
    for row in rows:
        groups.setdefault(row[key], []).append(row)
    return dict(sorted(groups.items()))
