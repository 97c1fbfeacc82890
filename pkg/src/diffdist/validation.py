"""Input validation helpers shared across the package."""

from __future__ import annotations

from typing import Any

import numpy as np

__all__ = ["as_float_array", "check_finite", "check_positive_scalar"]


def as_float_array(values: Any, name: str = "values") -> np.ndarray:
    """Coerce ``values`` to a one-dimensional float64 array.

    Raises ``ValueError`` if the input is not one-dimensional or cannot be
    interpreted as real numbers.
    """
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    return arr


def check_finite(arr: np.ndarray, name: str = "values") -> np.ndarray:
    """Reject arrays containing NaN or infinity."""
    if not np.isfinite(arr).all():
        bad = int(np.flatnonzero(~np.isfinite(arr))[0])
        raise ValueError(f"{name} contains a non-finite entry at index {bad}")
    return arr


def check_positive_scalar(value: float, name: str) -> float:
    """Require a finite, strictly positive scalar."""
    value = float(value)
    if not np.isfinite(value) or value <= 0.0:
        raise ValueError(f"{name} must be a positive finite number, got {value}")
    return value
