"""diffdist: difference-distribution toolkit.

Compute first and higher-order differences of time series and rasters,
characterize the resulting distributions, and fit a location-scale
Student t by maximum likelihood, with built-in chaotic-system generators
for fully self-contained experiments.
"""

from .chaos import CANONICAL_PARAMS, ChaosSpec, default_spec, simulate
from .differencing import DiffSpec, Series, diff_log, diff_n, diff_plain, diff_ratio
from .estimators import Differencer, StudentTFitter
from .io import (
    ColumnSelector,
    read_raster,
    read_series,
    write_overlay,
    write_report,
)
from .spatial import Raster, spatial_diff
from .stats import (
    EmpiricalDist,
    TFit,
    cdf_correlation,
    fit_t_mle,
    normal_cdf,
    normalize,
    summarize,
    t_cdf,
    t_pdf,
    tail_excess,
)

__version__ = "0.1.0"

__all__ = [
    "Series",
    "DiffSpec",
    "diff_plain",
    "diff_ratio",
    "diff_log",
    "diff_n",
    "ChaosSpec",
    "CANONICAL_PARAMS",
    "default_spec",
    "simulate",
    "EmpiricalDist",
    "TFit",
    "summarize",
    "normalize",
    "normal_cdf",
    "t_pdf",
    "t_cdf",
    "fit_t_mle",
    "cdf_correlation",
    "tail_excess",
    "Raster",
    "spatial_diff",
    "ColumnSelector",
    "read_series",
    "read_raster",
    "write_report",
    "write_overlay",
    "Differencer",
    "StudentTFitter",
    "__version__",
]
