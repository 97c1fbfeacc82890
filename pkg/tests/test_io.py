import json

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from diffdist import (
    ColumnSelector,
    DiffSpec,
    TFit,
    fit_t_mle,
    normal_cdf,
    read_raster,
    read_series,
    summarize,
    write_overlay,
    write_report,
)
from diffdist.io import OVERLAY_COLUMNS, OVERLAY_MAX_ROWS, REPORT_KEYS


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


# -------------------------------------------------------------- read_series


def test_read_single_column(tmp_path):
    path = _write(tmp_path, "a.txt", "1\n2\n4\n")
    assert_array_equal(read_series(ColumnSelector(path)).values, [1.0, 2.0, 4.0])


def test_read_named_column(tmp_path):
    path = _write(tmp_path, "b.csv", "t,v\n0,5\n1,6\n")
    assert_array_equal(read_series(ColumnSelector(path, column="v")).values, [5.0, 6.0])


def test_read_skip_header_by_index(tmp_path):
    path = _write(tmp_path, "c.csv", "time,value\n0,5\n1,6\n")
    sel = ColumnSelector(path, column=1, skip_header=True)
    assert_array_equal(read_series(sel).values, [5.0, 6.0])


def test_read_blank_lines_skipped(tmp_path):
    path = _write(tmp_path, "d.txt", "\n1\n\n2\n\n\n3\n")
    assert_array_equal(read_series(ColumnSelector(path)).values, [1.0, 2.0, 3.0])


def test_read_parse_error_names_line(tmp_path):
    path = _write(tmp_path, "e.txt", "1\n2\nabc\n")
    with pytest.raises(ValueError, match="line 3"):
        read_series(ColumnSelector(path))


def test_read_non_finite_rejected(tmp_path):
    path = _write(tmp_path, "f.txt", "1\nnan\n3\n")
    with pytest.raises(ValueError, match="line 2.*non-finite"):
        read_series(ColumnSelector(path))


def test_read_missing_column_index(tmp_path):
    path = _write(tmp_path, "g.csv", "1,2\n3\n")
    with pytest.raises(ValueError, match="line 2.*missing column"):
        read_series(ColumnSelector(path, column=1))


def test_read_missing_column_name(tmp_path):
    path = _write(tmp_path, "h.csv", "a,b\n1,2\n")
    with pytest.raises(ValueError, match="not found in header"):
        read_series(ColumnSelector(path, column="z"))


def test_read_too_few_values(tmp_path):
    path = _write(tmp_path, "i.txt", "42\n")
    with pytest.raises(ValueError, match="fewer than 2"):
        read_series(ColumnSelector(path))


def test_read_missing_file(tmp_path):
    with pytest.raises(OSError):
        read_series(ColumnSelector(tmp_path / "nope.csv"))


def test_read_custom_delimiter(tmp_path):
    path = _write(tmp_path, "j.txt", "1;10\n2;20\n")
    sel = ColumnSelector(path, column=1, delimiter=";")
    assert_array_equal(read_series(sel).values, [10.0, 20.0])


def test_selector_validation(tmp_path):
    with pytest.raises(ValueError, match="delimiter"):
        ColumnSelector(tmp_path / "x", delimiter=",,")
    with pytest.raises(ValueError, match="non-negative"):
        ColumnSelector(tmp_path / "x", column=-1)


def test_series_round_trip_exact(tmp_path):
    rng = np.random.default_rng(55)
    values = rng.standard_normal(200) * 10.0 ** rng.integers(-8, 8, size=200)
    path = tmp_path / "rt.txt"
    path.write_text("".join(format(v, ".17g") + "\n" for v in values), encoding="utf-8")
    out = read_series(ColumnSelector(path)).values
    assert_array_equal(out, values)


# -------------------------------------------------------------- read_raster


def test_raster_basic(tmp_path):
    path = _write(tmp_path, "r1.txt", "1 2\n3 4\n")
    r = read_raster(path)
    assert (r.rows, r.cols) == (2, 2)
    assert r.nodata is None
    assert_array_equal(r.cells, [[1.0, 2.0], [3.0, 4.0]])


def test_raster_nodata_preamble(tmp_path):
    path = _write(tmp_path, "r2.txt", "nodata -9999\n1 -9999\n2 3\n")
    r = read_raster(path)
    assert r.nodata == -9999.0
    assert (r.rows, r.cols) == (2, 2)


def test_raster_ragged_rows(tmp_path):
    path = _write(tmp_path, "r3.txt", "1 2\n3\n")
    with pytest.raises(ValueError, match="ragged row at line 2"):
        read_raster(path)


def test_raster_empty(tmp_path):
    path = _write(tmp_path, "r4.txt", "\n\n")
    with pytest.raises(ValueError, match="empty raster"):
        read_raster(path)


def test_raster_parse_error_names_line(tmp_path):
    path = _write(tmp_path, "r5.txt", "1 2\n3 oops\n")
    with pytest.raises(ValueError, match="line 2"):
        read_raster(path)


def test_raster_bad_nodata_line(tmp_path):
    path = _write(tmp_path, "r6.txt", "nodata\n1 2\n")
    with pytest.raises(ValueError, match="nodata"):
        read_raster(path)


# ------------------------------------------------------------ write_report


@pytest.fixture(scope="module")
def small_fit():
    rng = np.random.default_rng(4654)
    x = rng.standard_t(df=4.0, size=3000)
    spec = DiffSpec("plain", 2, k_window=5)
    fit = fit_t_mle(x, diff_spec=spec)
    return x, summarize(x), fit


def test_report_schema_and_round_trip(tmp_path, small_fit):
    x, dist, fit = small_fit
    path = tmp_path / "report.json"
    write_report(fit, dist, path)
    doc = json.loads(path.read_text(encoding="utf-8"))
    assert tuple(doc.keys()) == REPORT_KEYS
    assert doc["n"] == dist.n
    assert doc["mean"] == dist.mean
    assert doc["std"] == dist.std
    assert doc["nu"] == fit.nu
    assert doc["location"] == fit.location
    assert doc["scale"] == fit.scale
    assert doc["log_likelihood"] == fit.log_likelihood
    assert doc["pp_correlation"] == fit.correlation
    assert doc["mean_over_std"] == fit.mean_over_std
    assert doc["diff_method"] == "plain"
    assert doc["diff_order"] == 2
    assert doc["k_window"] == 5
    assert doc["normal_limit_flag"] is False
    assert doc["tail_excess_3sigma"] > 0.0


def test_report_without_diff_spec(tmp_path, small_fit):
    x, dist, _ = small_fit
    fit = fit_t_mle(x)
    path = tmp_path / "r.json"
    write_report(fit, dist, path)
    doc = json.loads(path.read_text(encoding="utf-8"))
    assert doc["diff_method"] == "none"
    assert doc["diff_order"] == 0 and doc["k_window"] == 0


def test_report_normal_limit_flag(tmp_path):
    rng = np.random.default_rng(31)
    x = rng.standard_normal(5000)
    dist = summarize(x)
    fit = fit_t_mle(x)
    path = tmp_path / "n.json"
    write_report(fit, dist, path)
    doc = json.loads(path.read_text(encoding="utf-8"))
    assert doc["normal_limit_flag"] is True


# ----------------------------------------------------------- write_overlay


def _manual_fit(nu, loc, scale, n):
    return TFit(nu=nu, location=loc, scale=scale, log_likelihood=0.0,
                correlation=1.0, mean_over_std=0.0, n=n)


def _read_overlay(path):
    lines = path.read_text(encoding="utf-8").splitlines()
    header = lines[0].split(",")
    data = np.array([[float(c) for c in ln.split(",")] for ln in lines[1:]])
    return header, data


def test_overlay_tiny(tmp_path):
    dist = summarize([1.0, 2.0, 4.0])
    path = tmp_path / "o3.csv"
    write_overlay(dist, _manual_fit(2.0, 0.0, 1.0, 3), path)
    header, data = _read_overlay(path)
    assert header == list(OVERLAY_COLUMNS)
    assert data.shape == (3, 4)
    assert_allclose(data[:, 1], [0.5 / 3, 1.5 / 3, 2.5 / 3], rtol=1e-15)


def test_overlay_normal_tracks_normal_cdf(tmp_path):
    rng = np.random.default_rng(61)
    dist = summarize(rng.standard_normal(100_000))
    path = tmp_path / "on.csv"
    write_overlay(dist, _manual_fit(150.0, 0.0, 1.0, dist.n), path)
    _, data = _read_overlay(path)
    assert data.shape[0] == OVERLAY_MAX_ROWS
    assert np.abs(data[:, 1] - data[:, 3]).max() <= 0.02


def test_overlay_cauchy_bends_away(tmp_path):
    rng = np.random.default_rng(62)
    dist = summarize(rng.standard_cauchy(20_000))
    path = tmp_path / "oc.csv"
    write_overlay(dist, _manual_fit(1.0, 0.0, 1.0, dist.n), path)
    _, data = _read_overlay(path)
    assert np.abs(data[:, 1] - data[:, 3]).max() > 0.05


def test_overlay_columns_consistent(tmp_path):
    rng = np.random.default_rng(63)
    x = rng.standard_normal(500) * 2.0 + 1.0
    dist = summarize(x)
    fit = _manual_fit(40.0, 1.0, 2.0, 500)
    path = tmp_path / "ox.csv"
    write_overlay(dist, fit, path)
    _, data = _read_overlay(path)
    assert_allclose(data[:, 0], (dist.sorted_samples - dist.mean) / dist.std, rtol=1e-12)
    assert_allclose(data[:, 3], normal_cdf(data[:, 0]), atol=1e-12)
    assert np.all(np.diff(data[:, 1]) > 0.0)


def test_overlay_degenerate(tmp_path):
    dist = summarize([2.0, 2.0, 2.0])
    with pytest.raises(ValueError, match="degenerate"):
        write_overlay(dist, _manual_fit(2.0, 0.0, 1.0, 3), tmp_path / "bad.csv")
