"""Reading and writing plain-text value files.

Input format: one real per line; blank lines and lines starting with '#'
are ignored; a single non-numeric first row is accepted as a CSV-style
header.  Any other unparsable or non-finite row is an error naming the
line.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .errors import DataError

__all__ = ["read_values", "write_values"]


def read_values(path) -> np.ndarray:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    values: list[float] = []
    header_allowed = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        token = line.rstrip(",").strip()
        try:
            v = float(token)
        except ValueError:
            if header_allowed:
                header_allowed = False
                continue
            raise DataError(f"{path}: line {lineno}: not a number: {raw!r}") from None
        header_allowed = False
        if not math.isfinite(v):
            raise DataError(f"{path}: line {lineno}: non-finite value: {raw!r}")
        values.append(v)
    if not values:
        raise DataError(f"{path}: no numeric data found")
    return np.asarray(values, dtype=float)


def write_values(path, values) -> None:
    arr = np.asarray(values, dtype=float).ravel()
    lines = "\n".join(repr(float(v)) for v in arr)
    Path(path).write_text(lines + "\n")
