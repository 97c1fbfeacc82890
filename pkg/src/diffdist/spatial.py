"""Adjacent-cell differencing of two-dimensional rasters.

Differences along one axis are pooled row-major into a single series so
the standard distribution pipeline applies unchanged. Pairs touching a
nodata cell are skipped rather than zero-filled, so masked regions cannot
inject spurious zero differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .differencing import Series

__all__ = ["Raster", "spatial_diff"]


@dataclass(frozen=True, eq=False)
class Raster:
    """A rows x cols grid of real cells with an optional nodata sentinel.

    Cells equal to ``nodata`` mark missing data; every other cell must be
    finite.
    """

    cells: np.ndarray
    nodata: Optional[float] = None
    rows: int = field(init=False)
    cols: int = field(init=False)

    def __post_init__(self) -> None:
        arr = np.asarray(self.cells, dtype=float)
        if arr.ndim != 2 or arr.size == 0:
            raise ValueError(f"cells must be a non-empty 2-D grid, got shape {arr.shape}")
        if self.nodata is not None:
            nodata = float(self.nodata)
            if not math.isfinite(nodata):
                raise ValueError(f"nodata sentinel must be finite, got {self.nodata}")
            object.__setattr__(self, "nodata", nodata)
            valid = arr != nodata
        else:
            valid = np.ones(arr.shape, dtype=bool)
        if not np.isfinite(arr[valid]).all():
            raise ValueError("raster contains a non-finite cell that is not the nodata sentinel")
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "cells", arr)
        object.__setattr__(self, "rows", int(arr.shape[0]))
        object.__setattr__(self, "cols", int(arr.shape[1]))


def spatial_diff(r: Raster, axis: str) -> Series:
    """Differences between adjacent cells along one axis, pooled row-major.

    ``axis="col"`` differences within each row (cell minus its left
    neighbor), ``axis="row"`` differences within each column (cell minus
    the one above). Any pair touching a nodata cell is skipped."""
    if axis not in ("row", "col"):
        raise ValueError(f"axis must be 'row' or 'col', got {axis!r}")
    cells = r.cells
    if axis == "col":
        if r.cols < 2:
            raise ValueError(f"axis too short: need at least 2 columns, got {r.cols}")
        hi, lo = cells[:, 1:], cells[:, :-1]
    else:
        if r.rows < 2:
            raise ValueError(f"axis too short: need at least 2 rows, got {r.rows}")
        hi, lo = cells[1:, :], cells[:-1, :]
    if r.nodata is not None:
        keep = (hi != r.nodata) & (lo != r.nodata)
    else:
        keep = np.ones(hi.shape, dtype=bool)
    out = (hi - lo)[keep]
    if out.size == 0:
        raise ValueError("all pairs skipped: no adjacent cell pair is free of nodata")
    return Series(out, label=f"{axis}-diff")
