"""Command-line front end.

Subcommands::

    scatter   random pairs (T, |S(rho) - S(sigma)|) as CSV, optionally an SVG plot
    bounds    table of the Fannes, weak Fannes and sharp bounds
    verify    run a verification suite (saturation, staged, oracle, mirsky, all)
    oracle    brute-force maximum entropy gap on a simplex grid

Exit status is 0 on success, 1 when a verification or bound check fails and
2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .classical import brute_force_max_diff, oracle_lower_guarantee
from .bounds import sharp_bound
from .errors import BoundViolationError, EntropyContinuityError
from .experiments import (
    SUITES,
    bound_table_csv,
    emit_bound_table,
    format_value,
    run_scatter,
    run_verify,
    scatter_csv,
    scatter_svg,
)
from .sampling import Measure

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _write(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _cmd_scatter(args):
    try:
        records = list(run_scatter(args.dim, args.samples, args.seed, args.measure,
                                   inject_violation=args.inject_violation))
    except BoundViolationError as exc:
        print(f"BoundViolation: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _write(scatter_csv(records), args.out)
    if args.svg:
        _write(scatter_svg(args.dim, records), args.svg)
    return EXIT_OK


def _cmd_bounds(args):
    t_values = args.t if args.t else list(np.linspace(0.0, 1.0, 11))
    _write(bound_table_csv(emit_bound_table(args.dim, t_values)), args.out)
    return EXIT_OK


def _cmd_verify(args):
    params = {}
    if args.suite == "mirsky":
        params = {"pairs": args.samples, "seed": args.seed}
        if args.dim:
            params["dims"] = tuple(args.dim)
    elif args.suite in ("saturation", "staged") and args.dim:
        params = {"dims": tuple(args.dim)}
    elif args.suite == "all":
        params = {"seed": args.seed}
    report = run_verify(args.suite, **params)
    _write("\n".join(report.lines()) + "\n", args.out)
    if not report.passed:
        print(report.failures_json(), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _cmd_oracle(args):
    res = brute_force_max_diff(args.dim, args.t, args.grid_step)
    sb = sharp_bound(args.dim, args.t)
    lines = [
        f"dim={args.dim} t={format_value(args.t)} grid_step={format_value(args.grid_step)}",
        f"max_diff={format_value(res.max_diff)}",
        f"sharp_bound={format_value(sb)}",
        f"lower_guarantee={format_value(oracle_lower_guarantee(res, args.dim))} "
        f"(C={format_value(res.continuity_constant)})",
        "argmax_p=" + ",".join(format_value(x) for x in res.argmax_p),
        "argmax_q=" + ",".join(format_value(x) for x in res.argmax_q),
        f"pairs_evaluated={res.pairs_evaluated}",
    ]
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="entropy-continuity", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sc = sub.add_parser("scatter", help="random-pair scatter experiment")
    sc.add_argument("--dim", type=int, default=2)
    sc.add_argument("--samples", type=int, default=20000)
    sc.add_argument("--seed", type=int, default=0)
    sc.add_argument("--measure", choices=[m.value for m in Measure], default=Measure.RANK_MIXTURE.value)
    sc.add_argument("--out", default=None, help="CSV path (default stdout)")
    sc.add_argument("--svg", default=None, help="also write an SVG scatter plot here")
    sc.add_argument("--inject-violation", type=int, default=None, help=argparse.SUPPRESS)
    sc.set_defaults(func=_cmd_scatter)

    bd = sub.add_parser("bounds", help="table of bound values")
    bd.add_argument("--dim", type=int, default=2)
    bd.add_argument("--t", type=float, nargs="+", default=None)
    bd.add_argument("--out", default=None)
    bd.set_defaults(func=_cmd_bounds)

    vf = sub.add_parser("verify", help="run verification suites")
    vf.add_argument("suite", nargs="?", default="all", choices=[*SUITES, "all"])
    vf.add_argument("--dim", type=int, nargs="+", default=None)
    vf.add_argument("--samples", type=int, default=10000, help="pairs per dimension (mirsky)")
    vf.add_argument("--seed", type=int, default=2024)
    vf.add_argument("--out", default=None)
    vf.set_defaults(func=_cmd_verify)

    orc = sub.add_parser("oracle", help="brute-force simplex-grid maximum")
    orc.add_argument("--dim", type=int, default=2, choices=(2, 3))
    orc.add_argument("--t", type=float, required=True)
    orc.add_argument("--grid-step", type=float, default=0.01)
    orc.add_argument("--out", default=None)
    orc.set_defaults(func=_cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if getattr(args, "dim", None) is not None and args.command in ("scatter", "bounds") and args.dim < 2:
        print("error: --dim must be >= 2", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "scatter" and args.samples < 1:
        print("error: --samples must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except EntropyContinuityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
