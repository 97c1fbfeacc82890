"""Command-line front end.

Three subcommands compose the pipeline:

* ``simulate``: integrate a built-in chaotic system and write the
  trajectory as delimited text columns (t, x, y, z).
* ``analyze``: read a series column from a delimited file, difference it,
  fit the location-scale Student t, and write report/overlay files.
* ``spatial``: the same pipeline starting from adjacent-cell differences
  of a raster file along one axis.

Exit codes: 0 on success, 1 on runtime or data errors, 2 on usage errors.
All numeric standard output uses the locale-independent ``key = value``
form with 17 significant digits.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .chaos import CANONICAL_PARAMS, ChaosSpec, default_spec, simulate
from .differencing import DiffSpec, diff_n
from .io import ColumnSelector, read_raster, read_series, write_overlay, write_report
from .spatial import spatial_diff
from .stats import fit_t_mle, summarize

__all__ = ["main"]


class _UsageError(Exception):
    """Invalid flag combination detected after argparse."""


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _column(text: str):
    try:
        return int(text)
    except ValueError:
        return text


def _stage(name: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (ValueError, RuntimeError, OSError) as exc:
        raise RuntimeError(f"{name}: {exc}") from exc


def _print_fit(fit) -> None:
    print(f"nu = {fit.nu:.17g}")
    print(f"mean_over_std = {fit.mean_over_std:.17g}")
    print(f"pp_correlation = {fit.correlation:.17g}")


def _run_fit_pipeline(series, spec: DiffSpec, args) -> None:
    diffed = _stage("difference", diff_n, series, spec)
    dist = _stage("summarize", summarize, diffed, args.bins)
    fit = _stage("fit", fit_t_mle, diffed, spec)
    if args.report:
        _stage("write", write_report, fit, dist, args.report)
    if args.overlay:
        _stage("write", write_overlay, dist, fit, args.overlay)
    _print_fit(fit)


def cmd_simulate(args) -> int:
    spec = default_spec(args.system)
    steps = args.steps if args.steps is not None else spec.steps
    if args.discard is not None:
        discard = args.discard
    elif args.steps is not None:
        discard = steps // 10
    else:
        discard = spec.discard
    if discard >= steps:
        raise _UsageError(f"discard ({discard}) must be smaller than steps ({steps})")
    params = dict(spec.params)
    for item in args.param:
        name, sep, value = item.partition("=")
        if not sep:
            raise _UsageError(f"--param expects name=value, got {item!r}")
        if name not in params:
            raise _UsageError(
                f"unknown {args.system} parameter {name!r}, expected one of {sorted(params)}"
            )
        try:
            params[name] = float(value)
        except ValueError:
            raise _UsageError(f"--param {name}: cannot parse {value!r} as a number") from None
    run = ChaosSpec(
        system=args.system,
        params=params,
        initial_state=spec.initial_state,
        dt=args.dt if args.dt is not None else spec.dt,
        steps=steps,
        discard=discard,
        seed_perturbation=args.perturb,
    )
    sx, sy, sz = _stage("simulate", simulate, run)
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("t,x,y,z\n")
            for i in range(len(sx)):
                t = (run.discard + i + 1) * run.dt
                fh.write(
                    f"{t:.17g},{sx.values[i]:.17g},{sy.values[i]:.17g},{sz.values[i]:.17g}\n"
                )
    except OSError as exc:
        raise RuntimeError(f"write: {exc}") from exc
    return 0


def cmd_analyze(args) -> int:
    try:
        sel = ColumnSelector(
            path=args.input,
            column=args.column,
            delimiter=args.delimiter,
            skip_header=args.skip_header,
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    series = _stage("read", read_series, sel)
    spec = DiffSpec(method=args.method, order=args.order, k_window=args.k)
    _run_fit_pipeline(series, spec, args)
    return 0


def cmd_spatial(args) -> int:
    raster = _stage("read", read_raster, args.raster)
    series = _stage("difference", spatial_diff, raster, args.axis)
    # adjacent-cell differencing is a first-order plain difference along the axis
    spec = DiffSpec(method="plain", order=1, k_window=1)
    dist = _stage("summarize", summarize, series, args.bins)
    fit = _stage("fit", fit_t_mle, series, spec)
    if args.report:
        _stage("write", write_report, fit, dist, args.report)
    if args.overlay:
        _stage("write", write_overlay, dist, fit, args.overlay)
    _print_fit(fit)
    return 0


def _add_fit_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--report", metavar="PATH", help="write a JSON fit report here")
    parser.add_argument("--overlay", metavar="PATH", help="write a CDF overlay table here")
    parser.add_argument(
        "--bins", type=_positive_int, default=None, help="histogram bin count override"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diffdist",
        description="Difference-distribution toolkit: finite differences, "
        "heavy-tail characterization, and Student t fitting.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="integrate a built-in chaotic system")
    p_sim.add_argument(
        "--system", required=True, choices=("lorenz", "duffing", "chua"), help="system name"
    )
    p_sim.add_argument("--dt", type=_positive_float, default=None, help="integration step")
    p_sim.add_argument("--steps", type=_positive_int, default=None, help="total steps")
    p_sim.add_argument(
        "--discard",
        type=_nonneg_int,
        default=None,
        help="transient steps to drop (default: 10 percent of steps)",
    )
    p_sim.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="NAME=VALUE",
        help="override one system parameter (repeatable)",
    )
    p_sim.add_argument(
        "--perturb", type=float, default=None, help="add this to the first state component"
    )
    p_sim.add_argument("--out", required=True, metavar="PATH", help="trajectory output file")
    p_sim.set_defaults(func=cmd_simulate)

    p_an = sub.add_parser("analyze", help="difference a series column and fit")
    p_an.add_argument("input", help="delimited text file")
    p_an.add_argument(
        "--column", type=_column, default=0, help="column index or header name (default 0)"
    )
    p_an.add_argument(
        "--method", choices=("plain", "ratio", "log"), default="plain", help="difference method"
    )
    p_an.add_argument("--order", type=_positive_int, default=1, help="difference order")
    p_an.add_argument(
        "--k", type=_positive_int, default=5, help="trailing window for the ratio method"
    )
    p_an.add_argument("--delimiter", default=",", help="cell delimiter (default comma)")
    p_an.add_argument(
        "--skip-header", action="store_true", help="drop the first non-blank line"
    )
    _add_fit_output_flags(p_an)
    p_an.set_defaults(func=cmd_analyze)

    p_sp = sub.add_parser("spatial", help="difference a raster along one axis and fit")
    p_sp.add_argument("raster", help="whitespace-delimited matrix file")
    p_sp.add_argument("--axis", required=True, choices=("row", "col"), help="difference axis")
    _add_fit_output_flags(p_sp)
    p_sp.set_defaults(func=cmd_spatial)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (RuntimeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
