"""Command-line interface: generate, solve, compare, cv.

Exit codes: 0 success/converged, 2 invalid configuration, 3 I/O failure,
4 numerical failure (including non-converged solves).  All flags mirror
RunConfig fields; a JSON config file may supply any subset, with explicit
flags taking precedence.  The run directory defaults to $LSFA_RUN_DIR.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ConfigError, DataError, InfeasiblePointError, NumericalBreakdownError
from .harness import RunConfig, config_from_dict, run_compare, run_cv, run_generate, run_solve

_FLOAT_FLAGS = [
    "density", "snr", "C", "mu", "gamma", "tau0", "theta", "eps", "delta",
    "sigma", "beta", "residual_tol", "eta_rank", "eta_supp", "bcd_step_ell",
]
_INT_FLAGS = [
    "p", "r", "n", "seed", "max_inner_iters", "max_backtracks",
    "bcd_max_iters", "folds",
]
_STR_FLAGS = ["run_dir", "trace_out"]


def _grid(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"grid must be comma-separated numbers: {exc}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lsfa",
        description="Low-rank plus sparse covariance estimation benchmark harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "generate": "draw a synthetic instance and write samples plus ground truth",
        "solve": "run the interior-point solver on a samples or covariance file",
        "compare": "run the interior-point solver and the first-order baseline",
        "cv": "grid-search (C, mu) by k-fold held-out likelihood",
    }
    for name, help_text in commands.items():
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", help="JSON file with RunConfig fields")
        for flag in _INT_FLAGS:
            cmd.add_argument(f"--{flag.replace('_', '-')}", dest=flag, type=int)
        for flag in _FLOAT_FLAGS:
            cmd.add_argument(f"--{flag.replace('_', '-')}", dest=flag, type=float)
        for flag in _STR_FLAGS:
            cmd.add_argument(f"--{flag.replace('_', '-')}", dest=flag)
        cmd.add_argument("--samples", dest="samples_file",
                         help="samples CSV file name inside the run directory")
        cmd.add_argument("--covariance", dest="covariance_file",
                         help="covariance CSV to use directly instead of samples")
        cmd.add_argument("--c-grid", dest="c_grid", type=_grid,
                         help="comma-separated C grid for cv")
        cmd.add_argument("--mu-grid", dest="mu_grid", type=_grid,
                         help="comma-separated mu grid for cv")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    data: dict = {}
    if args.config:
        with open(args.config) as fh:
            data.update(json.load(fh))
    for key, value in vars(args).items():
        if key in ("command", "config") or value is None:
            continue
        data[key] = value
    return config_from_dict(data)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        if args.command == "generate":
            run_generate(config)
            return 0
        if args.command == "solve":
            solution = run_solve(config)
            return 0 if solution.status == "converged" else 4
        if args.command == "compare":
            summary = run_compare(config)
            return 0 if summary["ipm"]["status"] == "converged" else 4
        if args.command == "cv":
            run_cv(config)
            return 0
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3
    except (DataError, InfeasiblePointError, NumericalBreakdownError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 4


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
