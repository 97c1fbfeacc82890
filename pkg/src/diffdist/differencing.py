"""Series data model and finite-difference operators.

Three first-order difference definitions are provided:

* ``diff_plain``: change between consecutive samples.
* ``diff_ratio``: change divided by the trailing mean of the nearest
  ``k`` samples, which renders the output dimensionless.
* ``diff_log``: change of the natural logarithm, the continuously
  compounded relative change (requires strictly positive samples).

Higher orders are produced by ``diff_n``: the chosen first-order operator
is applied once and the result is then plain-differenced ``order - 1``
further times.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .validation import as_float_array, check_finite

__all__ = ["Series", "DiffSpec", "diff_plain", "diff_ratio", "diff_log", "diff_n"]

_METHODS = ("plain", "ratio", "log")

#: Absolute tolerance below which a trailing window mean is treated as zero.
WINDOW_MEAN_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Series:
    """A one-dimensional ordered sequence of finite real samples.

    Parameters
    ----------
    values : sequence of float
        The samples, in order. NaN and infinity are rejected.
    dt : float, optional
        Uniform sampling step; must be strictly positive when given.
    label : str
        Free-text description, carried through transformations.
    """

    values: np.ndarray
    dt: Optional[float] = None
    label: str = ""

    def __post_init__(self) -> None:
        arr = check_finite(as_float_array(self.values, "series values"), "series values")
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)
        if self.dt is not None:
            dt = float(self.dt)
            if not np.isfinite(dt) or dt <= 0.0:
                raise ValueError(f"dt must be strictly positive, got {self.dt}")
            object.__setattr__(self, "dt", dt)

    def __len__(self) -> int:
        return int(self.values.size)

    def with_values(self, values: np.ndarray, label_suffix: str = "") -> "Series":
        """Return a new series with the same dt and a suffixed label."""
        label = f"{self.label} {label_suffix}".strip() if label_suffix else self.label
        return Series(values, dt=self.dt, label=label)


@dataclass(frozen=True)
class DiffSpec:
    """Selects a difference method, its order, and the ratio window size.

    ``method`` is one of ``"plain"``, ``"ratio"``, ``"log"``. ``order`` is
    the number of differencing passes (the chosen method once, then plain
    differencing for the remainder). ``k_window`` is the trailing window
    length used only by the ratio method.
    """

    method: str
    order: int = 1
    k_window: int = 5

    def __post_init__(self) -> None:
        if self.method not in _METHODS:
            raise ValueError(f"method must be one of {_METHODS}, got {self.method!r}")
        if int(self.order) != self.order or self.order < 1:
            raise ValueError(f"order must be a positive integer, got {self.order}")
        if int(self.k_window) != self.k_window or self.k_window < 1:
            raise ValueError(f"k_window must be a positive integer, got {self.k_window}")
        object.__setattr__(self, "order", int(self.order))
        object.__setattr__(self, "k_window", int(self.k_window))


def _as_series(s: Union[Series, Sequence[float]]) -> Series:
    return s if isinstance(s, Series) else Series(s)


def diff_plain(s: Union[Series, Sequence[float]]) -> Series:
    """First-order difference: out[i] = s[i+1] - s[i].

    The output is one sample shorter than the input; ``dt`` and ``label``
    are propagated, with the label suffixed to mark differencing.
    """
    s = _as_series(s)
    if len(s) < 2:
        raise ValueError("series too short: need at least 2 samples to difference")
    return s.with_values(np.diff(s.values), "diff")


def diff_ratio(s: Union[Series, Sequence[float]], k: int = 5) -> Series:
    """Ratio difference: the change divided by the trailing k-sample mean.

    Element at input position ``i`` (for ``i >= max(1, k - 1)``) equals
    ``(s[i] - s[i-1]) / mean(s[i-k+1 .. i])``. Earlier positions are
    dropped, so the output length is ``len(s) - max(1, k - 1)``. The output
    is dimensionless and invariant under uniform positive scaling of the
    input.
    """
    s = _as_series(s)
    k = int(k)
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if len(s) < max(2, k):
        raise ValueError(
            f"series too short: need at least max(2, k) = {max(2, k)} samples, got {len(s)}"
        )
    x = s.values
    n = x.size
    start = max(1, k - 1)
    csum = np.concatenate(([0.0], np.cumsum(x)))
    # trailing mean over x[i-k+1 .. i] for every full window i >= k-1
    means = (csum[k:] - csum[:-k]) / k
    if k == 1:
        means = means[1:]  # align window ending at i with difference at i >= 1
    bad = np.flatnonzero(np.abs(means) <= WINDOW_MEAN_TOL)
    if bad.size:
        idx = int(bad[0]) + start
        raise ValueError(f"degenerate window mean at index {idx}")
    out = (x[start:] - x[start - 1 : -1]) / means
    return s.with_values(out, "ratio-diff")


def diff_log(s: Union[Series, Sequence[float]]) -> Series:
    """Log difference: out[i] = ln(s[i+1]) - ln(s[i]).

    All samples must be strictly positive. The output is invariant under
    uniform positive scaling of the input.
    """
    s = _as_series(s)
    if len(s) < 2:
        raise ValueError("series too short: need at least 2 samples to difference")
    x = s.values
    nonpos = np.flatnonzero(x <= 0.0)
    if nonpos.size:
        idx = int(nonpos[0])
        raise ValueError(
            f"log difference requires positive samples, found {x[idx]} at index {idx}"
        )
    return s.with_values(np.diff(np.log(x)), "log-diff")


def diff_n(s: Union[Series, Sequence[float]], spec: DiffSpec) -> Series:
    """Apply a first-order operator once, then plain-difference repeatedly.

    The ratio and log methods are defined as first-order transforms; higher
    orders difference the transformed series with the plain operator. Total
    passes equal ``spec.order``.
    """
    s = _as_series(s)
    if spec.method == "plain":
        out = diff_plain(s)
    elif spec.method == "ratio":
        out = diff_ratio(s, spec.k_window)
    else:
        out = diff_log(s)
    for _ in range(spec.order - 1):
        out = diff_plain(out)
    return out
