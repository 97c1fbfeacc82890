"""Empirical distributions, Student t fitting, and tail diagnostics.

The centerpiece is ``fit_t_mle``, a full maximum-likelihood fit of the
location-scale Student t family. For a fixed degrees-of-freedom ``nu`` the
location and scale are found by the standard reweighting iteration (each
sample weighted by ``(nu + 1) / (nu + z^2)``), and ``nu`` itself by a
golden-section search on the profile log-likelihood. The goodness metric
is a probability-probability correlation: the Pearson correlation between
empirical CDF values at the order statistics and the fitted CDF evaluated
at the same points.

Conventions: population (1/n) variance everywhere; empirical plotting
positions (i - 0.5) / n for fitting and correlation; stored ECDF levels
i / n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import betainc, erfc, gammaln

from .differencing import DiffSpec, Series
from .validation import as_float_array, check_finite

__all__ = [
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
]

#: Search interval for the degrees of freedom and its convergence width.
NU_LO = 0.1
NU_HI = 200.0
NU_TOL = 1e-4

#: Reweighting iteration: relative tolerance (against scale) and cap.
EM_TOL = 1e-10
EM_MAX_ITER = 10_000

#: Histogram bin-count clamp around the Freedman-Diaconis rule.
MIN_BINS = 16
MAX_BINS = 512

_ArrayLike = Union[Series, Sequence[float], np.ndarray]


@dataclass(frozen=True, eq=False)
class EmpiricalDist:
    """Histogram, ECDF, and moments of one sample set.

    ``std`` uses the population (1/n) convention. ``histogram`` is a tuple
    of (bin_left, bin_right, count) triples whose counts sum to ``n``.
    ``ecdf`` is an (n, 2) array of (value, i/n) rows at the order
    statistics.
    """

    sorted_samples: np.ndarray
    n: int
    mean: float
    std: float
    skewness: float
    excess_kurtosis: float
    histogram: Tuple[Tuple[float, float, int], ...]
    ecdf: np.ndarray


@dataclass(frozen=True)
class TFit:
    """Fitted location-scale Student t parameters and goodness metrics.

    ``correlation`` is the probability-probability correlation against the
    sample the fit was computed from. ``normal_limit`` is set when the
    degrees of freedom ran into the top of the search interval, where the
    t family is statistically indistinguishable from a normal.
    """

    nu: float
    location: float
    scale: float
    log_likelihood: float
    correlation: float
    mean_over_std: float
    n: int
    diff_spec_used: Optional[DiffSpec] = None
    normal_limit: bool = False

    def __post_init__(self) -> None:
        if not (self.nu > 0 and self.scale > 0):
            raise ValueError(f"need nu > 0 and scale > 0, got nu={self.nu}, scale={self.scale}")
        if self.correlation > 1.0:
            raise ValueError(f"correlation must not exceed 1, got {self.correlation}")


def _values(s: _ArrayLike, name: str = "samples") -> np.ndarray:
    if isinstance(s, Series):
        return s.values
    return check_finite(as_float_array(s, name), name)


def _fd_bin_count(x: np.ndarray) -> int:
    """Freedman-Diaconis bin count, clamped to [MIN_BINS, MAX_BINS]."""
    n = x.size
    q25, q75 = np.percentile(x, [25.0, 75.0])
    width = 2.0 * (q75 - q25) * n ** (-1.0 / 3.0)
    span = float(x[-1] - x[0])
    if width <= 0.0 or span <= 0.0:
        return MIN_BINS
    return int(np.clip(math.ceil(span / width), MIN_BINS, MAX_BINS))


def summarize(s: _ArrayLike, bins: Optional[int] = None) -> EmpiricalDist:
    """Build the empirical distribution of a sample set.

    ``bins`` overrides the Freedman-Diaconis histogram bin count. Moments
    use the population convention; for a zero-spread sample the shape
    moments are reported as 0.
    """
    x = np.sort(_values(s))
    n = x.size
    if n == 0:
        raise ValueError("empty series")
    if bins is not None and bins < 1:
        raise ValueError(f"bins must be a positive integer, got {bins}")
    mean = float(x.mean())
    centered = x - mean
    var = float(np.mean(centered**2))
    std = math.sqrt(var)
    if std > 0.0:
        skew = float(np.mean(centered**3)) / std**3
        exkurt = float(np.mean(centered**4)) / var**2 - 3.0
    else:
        skew = 0.0
        exkurt = 0.0
    nbins = int(bins) if bins is not None else _fd_bin_count(x)
    counts, edges = np.histogram(x, bins=nbins)
    histogram = tuple(
        (float(edges[i]), float(edges[i + 1]), int(counts[i])) for i in range(len(counts))
    )
    ecdf = np.column_stack((x, np.arange(1, n + 1) / n))
    ecdf.setflags(write=False)
    x.setflags(write=False)
    return EmpiricalDist(
        sorted_samples=x,
        n=n,
        mean=mean,
        std=std,
        skewness=skew,
        excess_kurtosis=exkurt,
        histogram=histogram,
        ecdf=ecdf,
    )


def normalize(s: _ArrayLike) -> Series:
    """Center and scale to mean 0, standard deviation 1 (population).

    A second pass removes floating-point residue so the output moments
    hold to 1e-12. Raises on zero-spread input.
    """
    src = s if isinstance(s, Series) else Series(s)
    x = src.values
    std = float(x.std())
    if std == 0.0:
        raise ValueError("degenerate series: standard deviation is zero")
    y = (x - x.mean()) / std
    y = y - y.mean()
    y_std = float(y.std())
    if y_std > 0.0:
        y = y / y_std
    return src.with_values(y, "normalized")


def normal_cdf(x):
    """Standard normal CDF, accurate to better than 1e-12 absolute."""
    arr = np.asarray(x, dtype=float)
    out = 0.5 * erfc(-arr / math.sqrt(2.0))
    return float(out) if arr.ndim == 0 else out


def _check_t_params(nu: float, scale: float) -> None:
    if not (np.isfinite(nu) and nu > 0.0):
        raise ValueError(f"nu must be a positive finite number, got {nu}")
    if not (np.isfinite(scale) and scale > 0.0):
        raise ValueError(f"scale must be a positive finite number, got {scale}")


def t_pdf(x, nu: float, loc: float = 0.0, scale: float = 1.0):
    """Location-scale Student t density."""
    _check_t_params(nu, scale)
    arr = np.asarray(x, dtype=float)
    z = (arr - loc) / scale
    log_norm = (
        gammaln((nu + 1.0) / 2.0)
        - gammaln(nu / 2.0)
        - 0.5 * math.log(nu * math.pi)
        - math.log(scale)
    )
    out = np.exp(log_norm - (nu + 1.0) / 2.0 * np.log1p(z * z / nu))
    return float(out) if arr.ndim == 0 else out


def t_cdf(x, nu: float, loc: float = 0.0, scale: float = 1.0):
    """Location-scale Student t CDF via the regularized incomplete beta
    function: for z = (x - loc)/scale, the lower tail is
    ``betainc(nu/2, 1/2, nu / (nu + z^2)) / 2``, reflected for z > 0."""
    _check_t_params(nu, scale)
    arr = np.asarray(x, dtype=float)
    z = np.clip((arr - loc) / scale, -1e154, 1e154)
    p = 0.5 * betainc(nu / 2.0, 0.5, nu / (nu + z * z))
    out = np.where(z > 0.0, 1.0 - p, p)
    return float(out) if arr.ndim == 0 else out


def _t_loglik(x: np.ndarray, nu: float, mu: float, sigma: float) -> float:
    z = (x - mu) / sigma
    n = x.size
    return float(
        n
        * (
            gammaln((nu + 1.0) / 2.0)
            - gammaln(nu / 2.0)
            - 0.5 * math.log(nu * math.pi)
            - math.log(sigma)
        )
        - (nu + 1.0) / 2.0 * np.log1p(z * z / nu).sum()
    )


def _em_fixed_nu(
    x: np.ndarray, nu: float, mu: float, sigma: float
) -> Tuple[float, float]:
    """Location/scale stationary point at fixed nu by reweighting.

    Converges when both parameter moves fall below EM_TOL relative to the
    current scale; raises after EM_MAX_ITER iterations rather than return
    a partial result.
    """
    n = x.size
    for _ in range(EM_MAX_ITER):
        d = x - mu
        w = (nu + 1.0) / (nu + (d / sigma) ** 2)
        mu_new = float((w * x).sum() / w.sum())
        d2 = x - mu_new
        sigma_new = math.sqrt(float((w * d2 * d2).sum() / n))
        dmu = abs(mu_new - mu)
        dsig = abs(sigma_new - sigma)
        mu, sigma = mu_new, sigma_new
        if max(dmu, dsig) <= EM_TOL * sigma:
            return mu, sigma
    raise RuntimeError(
        f"location/scale reweighting did not converge within {EM_MAX_ITER} iterations"
    )


def _pp_positions(n: int) -> np.ndarray:
    return (np.arange(1, n + 1) - 0.5) / n


def _pp_correlation(sorted_x: np.ndarray, nu: float, loc: float, scale: float) -> float:
    p_emp = _pp_positions(sorted_x.size)
    p_fit = t_cdf(sorted_x, nu, loc, scale)
    if float(np.std(p_fit)) == 0.0:
        raise ValueError("degenerate fitted CDF values: zero variance")
    corr = float(np.corrcoef(p_emp, p_fit)[0, 1])
    return min(corr, 1.0)


def fit_t_mle(samples: _ArrayLike, diff_spec: Optional[DiffSpec] = None) -> TFit:
    """Maximum-likelihood fit of the location-scale Student t family.

    The profile log-likelihood over ``nu`` in [NU_LO, NU_HI] is maximized
    by golden-section search to interval width NU_TOL, with the location
    and scale re-solved by the reweighting iteration at every probe (warm
    started from the previous probe). A fit that runs into the top of the
    ``nu`` interval is flagged as ``normal_limit``.

    Requires at least 100 samples with nonzero spread; fewer samples leave
    the tail exponent unidentifiable.
    """
    x = _values(samples)
    n = x.size
    if n < 100:
        raise ValueError(f"need at least 100 samples to identify nu, got {n}")
    raw_mean = float(x.mean())
    raw_std = float(x.std())
    if raw_std == 0.0:
        raise ValueError("degenerate series: zero spread (all samples equal)")
    sorted_x = np.sort(x)
    state = {"mu": float(np.median(x)), "sigma": raw_std}

    def profile(nu: float) -> Tuple[float, float, float]:
        mu, sigma = _em_fixed_nu(x, nu, state["mu"], state["sigma"])
        state["mu"], state["sigma"] = mu, sigma
        return _t_loglik(x, nu, mu, sigma), mu, sigma

    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = NU_LO, NU_HI
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc = profile(c)
    fd = profile(d)
    while b - a > NU_TOL:
        if fc[0] > fd[0]:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = profile(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = profile(d)
    nu = 0.5 * (a + b)
    log_likelihood, loc, scale = profile(nu)
    correlation = _pp_correlation(sorted_x, nu, loc, scale)
    return TFit(
        nu=nu,
        location=loc,
        scale=scale,
        log_likelihood=log_likelihood,
        correlation=correlation,
        mean_over_std=raw_mean / raw_std,
        n=n,
        diff_spec_used=diff_spec,
        normal_limit=(NU_HI - nu) <= 1e-2,
    )


def cdf_correlation(d: EmpiricalDist, fit: TFit) -> float:
    """Probability-probability correlation between the empirical CDF at
    the order statistics (positions (i - 0.5)/n) and the fitted t CDF."""
    if d.n < 3:
        raise ValueError(f"need at least 3 samples, got {d.n}")
    return _pp_correlation(d.sorted_samples, fit.nu, fit.location, fit.scale)


def tail_excess(d: EmpiricalDist, k: float) -> float:
    """Two-sided tail mass beyond k standard deviations, relative to the
    normal prediction. Values above 1 indicate fat tails."""
    if not k > 0.0:
        raise ValueError(f"k must be positive, got {k}")
    if d.std == 0.0:
        raise ValueError("degenerate distribution: zero standard deviation")
    frac = float(np.count_nonzero(np.abs(d.sorted_samples - d.mean) > k * d.std)) / d.n
    if frac == 0.0:
        # An empty tail has zero excess even when the normal tail mass
        # underflows to zero (k beyond roughly 38 in double precision).
        return 0.0
    denom = 2.0 * (1.0 - normal_cdf(k))
    if denom == 0.0:
        return math.inf
    return frac / denom
