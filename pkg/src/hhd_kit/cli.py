"""Command line front end: ``hhd-kit decompose | sde | casestudy-vdp``.

Exit codes: 0 success, 1 input error, 2 no (strictly orthogonal) decomposition.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from .linear_hhd import SolverOptions
from .report import (
    EXIT_INPUT,
    EXIT_OK,
    SpecError,
    decompose,
    load_spec,
    sde_report,
    write_vdp_casestudy,
)
from .stability import Grid

log = logging.getLogger("hhd_kit")

DEFAULT_TOL = 1e-10


def _default_tol() -> float:
    env = os.environ.get("HHD_KIT_TOL")
    if env is None:
        return DEFAULT_TOL
    try:
        return float(env)
    except ValueError:
        raise SpecError(f"HHD_KIT_TOL must be a number, got {env!r}") from None


def _solver_options(args) -> SolverOptions:
    tol = args.tol if args.tol is not None else _default_tol()
    if tol <= 0:
        raise SpecError("tolerance must be positive")
    seed = None
    if args.seed is not None:
        val = json.loads(args.seed)
        if isinstance(val, (int, float)):
            # scalar: RNG seed for a random symmetric starting point, filled in later
            seed = int(val)
        else:
            seed = np.asarray(val, dtype=float)
    return SolverOptions(tol=tol, seed=seed, method=args.method)


def _resolve_seed(opts: SolverOptions, n: int) -> SolverOptions:
    if isinstance(opts.seed, int):
        rng = np.random.default_rng(opts.seed)
        m = rng.uniform(-1, 1, (n, n))
        return SolverOptions(
            max_iterations=opts.max_iterations, tol=opts.tol, seed=(m + m.T) / 2, method=opts.method
        )
    return opts


def _emit(report, output_dir: str | None) -> int:
    text = report.to_json()
    sys.stdout.write(text)
    if output_dir:
        out = Path(output_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(text)
    if report.failure_reason:
        log.warning("%s", report.failure_reason)
    return report.exit_code


def _parse_levels(text: str) -> list[float]:
    text = text.strip()
    return [float(s) for s in text.split(",")] if text else []


def cmd_decompose(args) -> int:
    spec = load_spec(args.input)
    opts = _solver_options(args)
    if spec.kind in ("linear", "vdp"):
        opts = _resolve_seed(opts, len(spec.linear_matrix()))
    return _emit(decompose(spec, opts, strict=args.strict), args.output_dir)


def cmd_sde(args) -> int:
    spec = load_spec(args.input)
    opts = _solver_options(args)
    if spec.kind in ("linear", "vdp"):
        opts = _resolve_seed(opts, len(spec.linear_matrix()))
    dmat = json.loads(args.dmat) if args.dmat else None
    return _emit(sde_report(spec, dmat, opts), args.output_dir)


def cmd_casestudy_vdp(args) -> int:
    grid = Grid.parse(args.grid)
    levels = _parse_levels(args.levels)
    files = write_vdp_casestudy(args.mu, grid, levels, args.output_dir)
    for f in files:
        print(f)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are input errors; 2 is reserved for nonexistence
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hhd-kit", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", required=True, help="JSON field specification")
        p.add_argument("--output-dir", help="also write report.json here")
        p.add_argument("--tol", type=float, help="residual tolerance (env HHD_KIT_TOL)")
        p.add_argument("--seed", help="Newton start: JSON matrix, or integer RNG seed")
        p.add_argument(
            "--method",
            default="auto",
            choices=("auto", "newton", "sylvester", "lyapunov"),
            help="Riccati route for linear fields",
        )

    p = sub.add_parser("decompose", help="HHD of a linear or planar polynomial field")
    common(p)
    p.add_argument("--strict", action="store_true", help="exit 2 unless strictly orthogonal")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("sde", help="SDE decomposition matching an HHD of a linear field")
    common(p)
    p.add_argument("--dmat", help="JSON matrix D (default identity)")
    p.set_defaults(func=cmd_sde)

    p = sub.add_parser("casestudy-vdp", help="Van der Pol level sets, curves and sign map")
    p.add_argument("--mu", type=float, default=3.0)
    p.add_argument("--grid", default="-4,4,-4,4,201,201", help="xmin,xmax,ymin,ymax,nx,ny")
    p.add_argument("--levels", default="-0.5,-1,-2", help="comma list of W levels")
    p.add_argument("--output-dir", required=True)
    p.set_defaults(func=cmd_casestudy_vdp)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (SpecError, ValueError, json.JSONDecodeError) as e:
        log.error("input error: %s", e)
        return EXIT_INPUT
    except OSError as e:
        log.error("cannot write output: %s", e)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
