"""File ingestion and emission.

Series come from delimited text columns, rasters from whitespace-separated
matrix text with an optional ``nodata <value>`` first line. Fit reports go
out as a flat JSON document with a fixed key set, and CDF overlays as a
four-column delimited table. All floats are serialized with 17 significant
digits so a written value re-parses to the identical double.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import List, Union

import numpy as np

from .differencing import Series
from .spatial import Raster
from .stats import EmpiricalDist, TFit, normal_cdf, t_cdf, tail_excess

__all__ = [
    "ColumnSelector",
    "read_series",
    "read_raster",
    "write_report",
    "write_overlay",
    "REPORT_KEYS",
    "OVERLAY_COLUMNS",
    "OVERLAY_MAX_ROWS",
]

#: Exact key set and order of every fit report.
REPORT_KEYS = (
    "n",
    "mean",
    "std",
    "mean_over_std",
    "skewness",
    "excess_kurtosis",
    "nu",
    "location",
    "scale",
    "log_likelihood",
    "pp_correlation",
    "tail_excess_3sigma",
    "diff_method",
    "diff_order",
    "k_window",
    "normal_limit_flag",
)

OVERLAY_COLUMNS = ("x_normalized", "ecdf", "t_cdf_fitted", "normal_cdf")

#: Overlays are thinned to at most this many evenly spaced quantile rows.
OVERLAY_MAX_ROWS = 10_000


@dataclass(frozen=True)
class ColumnSelector:
    """Selects one numeric column of a delimited text file.

    ``column`` is a zero-based index or a header name; naming a column
    implies the first non-blank line is a header. ``skip_header`` drops
    the first non-blank line when selecting by index."""

    path: Union[str, Path]
    column: Union[int, str] = 0
    delimiter: str = ","
    skip_header: bool = False

    def __post_init__(self) -> None:
        if len(self.delimiter) != 1:
            raise ValueError(f"delimiter must be a single character, got {self.delimiter!r}")
        if isinstance(self.column, int) and self.column < 0:
            raise ValueError(f"column index must be non-negative, got {self.column}")


def _parse_cell(cell: str, lineno: int) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise ValueError(f"line {lineno}: cannot parse {cell!r} as a number") from None
    if not math.isfinite(value):
        raise ValueError(f"line {lineno}: non-finite value {cell!r}")
    return value


def read_series(sel: ColumnSelector) -> Series:
    """Read one column into a Series, in file order.

    Blank lines are skipped; any unparseable or non-finite cell aborts
    with its line number, since silently dropped samples would corrupt
    every downstream difference."""
    path = Path(sel.path)
    values: List[float] = []
    col = sel.column
    need_header = isinstance(col, str) or sel.skip_header
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            cells = [c.strip() for c in line.split(sel.delimiter)]
            if need_header:
                need_header = False
                if isinstance(col, str):
                    if col not in cells:
                        raise ValueError(
                            f"column {col!r} not found in header {cells} (line {lineno})"
                        )
                    col = cells.index(col)
                continue
            if col >= len(cells):
                raise ValueError(
                    f"line {lineno}: missing column {col} (row has {len(cells)} cells)"
                )
            values.append(_parse_cell(cells[col], lineno))
    if len(values) < 2:
        raise ValueError(f"fewer than 2 values in {path} (got {len(values)})")
    return Series(values, label=f"{path.name}[{sel.column}]")


def read_raster(path: Union[str, Path]) -> Raster:
    """Read a whitespace-delimited numeric matrix.

    An optional first line ``nodata <value>`` declares the missing-data
    sentinel. All rows must have equal length."""
    path = Path(path)
    nodata = None
    rows: List[List[float]] = []
    width = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            cells = line.split()
            if nodata is None and not rows and cells[0].lower() == "nodata":
                if len(cells) != 2:
                    raise ValueError(f"line {lineno}: nodata line must be 'nodata <value>'")
                nodata = _parse_cell(cells[1], lineno)
                continue
            row = [_parse_cell(c, lineno) for c in cells]
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise ValueError(
                    f"ragged row at line {lineno}: expected {width} columns, got {len(row)}"
                )
            rows.append(row)
    if not rows:
        raise ValueError(f"empty raster file: {path}")
    return Raster(np.asarray(rows, dtype=float), nodata=nodata)


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return json.dumps(value)


def write_report(fit: TFit, dist: EmpiricalDist, path: Union[str, Path]) -> None:
    """Write the fit report as flat JSON with the REPORT_KEYS schema.

    Numbers carry 17 significant digits, so re-parsing the document yields
    values identical to the in-memory ones."""
    spec = fit.diff_spec_used
    doc = {
        "n": dist.n,
        "mean": dist.mean,
        "std": dist.std,
        "mean_over_std": fit.mean_over_std,
        "skewness": dist.skewness,
        "excess_kurtosis": dist.excess_kurtosis,
        "nu": fit.nu,
        "location": fit.location,
        "scale": fit.scale,
        "log_likelihood": fit.log_likelihood,
        "pp_correlation": fit.correlation,
        "tail_excess_3sigma": tail_excess(dist, 3.0),
        "diff_method": spec.method if spec is not None else "none",
        "diff_order": spec.order if spec is not None else 0,
        "k_window": spec.k_window if spec is not None else 0,
        "normal_limit_flag": fit.normal_limit,
    }
    lines = [f'  "{key}": {_format_value(doc[key])}' for key in REPORT_KEYS]
    text = "{\n" + ",\n".join(lines) + "\n}\n"
    Path(path).write_text(text, encoding="utf-8")


def _thin_indices(n: int) -> np.ndarray:
    if n <= OVERLAY_MAX_ROWS:
        return np.arange(n)
    return np.round(np.linspace(0, n - 1, OVERLAY_MAX_ROWS)).astype(int)


def write_overlay(dist: EmpiricalDist, fit: TFit, path: Union[str, Path]) -> None:
    """Write the CDF overlay table: normalized sample positions with the
    empirical CDF (midpoint positions), fitted t CDF, and standard normal
    CDF, thinned to OVERLAY_MAX_ROWS evenly spaced quantile rows."""
    if dist.std == 0.0:
        raise ValueError("degenerate distribution: zero standard deviation")
    idx = _thin_indices(dist.n)
    x = dist.sorted_samples[idx]
    x_norm = (x - dist.mean) / dist.std
    p_emp = (idx + 0.5) / dist.n
    p_fit = t_cdf(x, fit.nu, fit.location, fit.scale)
    p_norm = normal_cdf(x_norm)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(OVERLAY_COLUMNS) + "\n")
        for row in zip(x_norm, p_emp, p_fit, p_norm):
            fh.write(",".join(format(v, ".17g") for v in row) + "\n")
