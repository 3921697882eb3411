"""Shared CSV access for the plotting scripts.

These scripts are pure CSV-to-image transforms over the benchmark CLI's
output files; every number they draw or annotate is read from (or is a
display statistic of) those files.
"""

import csv

import numpy as np


class MissingColumnError(Exception):
    """A required column is absent or the file has no data rows."""


def read_columns(path, required):
    """Read a CSV into {column: float array}, checking required columns.

    Non-numeric cells (including empty ones) become NaN so sparsely sampled
    columns can be filtered by the caller.
    """
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise MissingColumnError(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        missing = [c for c in required if c not in header]
        if missing:
            raise MissingColumnError(f"{path}: missing column(s) {', '.join(missing)}")
        rows = [r for r in reader if r]
    if not rows:
        raise MissingColumnError(f"{path}: no data rows")

    def to_float(tok):
        try:
            return float(tok)
        except ValueError:
            return float("nan")

    cols = {}
    for j, name in enumerate(header):
        cols[name] = np.array([to_float(r[j]) if j < len(r) else float("nan")
                               for r in rows])
    return cols


def output_path(out, raster):
    """Apply the vector-default / raster-fallback extension convention."""
    out = str(out)
    if "." not in out.rsplit("/", 1)[-1]:
        out += ".png" if raster else ".svg"
    return out
