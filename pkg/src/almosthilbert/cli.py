"""Command-line front end for the verification suites.

Exit codes: 0 every check passed, 1 at least one check failed, 2 usage or
parameter error, 3 I/O failure while writing the report.  The master seed
comes from --seed, falling back to the ALMOST_HILBERT_SEED environment
variable and then to 0.

Besides suite runs there are two small data emitters for external tooling
(the CSV is the plotting boundary; nothing is rendered here):

    almosthilbert ks2 dump-cubes --n 1 --count 16
    almosthilbert integral demo --op hilbert --m 1024
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys

import numpy as np

from .integrals import (
    PeriodicSignal,
    hilbert_multiplier,
    hilbert_pv,
    riesz_potential,
    signal_from_callable,
)
from .ks2 import cube_rows, cube_system
from .report import emit_report
from .spaces import GridFunction
from .suites import SUITE_NAMES, SuiteParams, list_checks, run_suite

DEMO_OPS = ("hilbert", "hilbert-pv", "riesz")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="almosthilbert",
        description="Run verification suites for the Hilbert-embedding library.",
    )
    parser.add_argument("--suite", choices=SUITE_NAMES, default="all",
                        help="suite to run (default: all)")
    parser.add_argument("--dim", type=int, default=8, help="basis truncation N")
    parser.add_argument("--grid", type=int, default=256,
                        help="grid resolution / signal length (power of two)")
    parser.add_argument("--p", type=float, default=3.0, help="Banach exponent p")
    parser.add_argument("--q", type=float, default=2.0,
                        help="auxiliary exponent for embedding bounds")
    parser.add_argument("--alpha", type=float, default=0.5,
                        help="fractional integration order in (0, 1)")
    parser.add_argument("--trials", type=int, default=100,
                        help="sample-count scale; 100 keeps nominal counts")
    parser.add_argument("--seed", type=int, default=None,
                        help="master seed (fallback: ALMOST_HILBERT_SEED, then 0)")
    parser.add_argument("--tol", type=float, default=1.0,
                        help="global tolerance scale multiplier")
    parser.add_argument("--cubes", type=int, default=64,
                        help="cube truncation K for the KS2 checks")
    parser.add_argument("--format", choices=("json", "csv", "text"), default="text",
                        help="report format (default: text)")
    parser.add_argument("--out", default=None, help="write output here instead of stdout")
    parser.add_argument("--list", action="store_true",
                        help="list the check names of the selected suite and exit")

    sub = parser.add_subparsers(dest="command")

    ks2_parser = sub.add_parser("ks2", help="KS2 data emitters")
    ks2_parser.add_argument("action", choices=("dump-cubes",))
    ks2_parser.add_argument("--n", type=int, default=1, help="dimension (1 or 2)")
    ks2_parser.add_argument("--count", type=int, default=16,
                            help="number of cubes to emit")
    ks2_parser.add_argument("--out", default=None)

    integral_parser = sub.add_parser("integral", help="integral-operator demos")
    integral_parser.add_argument("action", choices=("demo",))
    integral_parser.add_argument("--op", choices=DEMO_OPS, default="hilbert")
    integral_parser.add_argument("--m", type=int, default=1024,
                                 help="sample count (power of two)")
    integral_parser.add_argument("--alpha", type=float, default=0.5,
                                 help="order for the riesz demo")
    integral_parser.add_argument("--out", default=None)

    return parser


def _resolve_seed(arg_seed) -> int:
    if arg_seed is not None:
        return int(arg_seed)
    env = os.environ.get("ALMOST_HILBERT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"ALMOST_HILBERT_SEED must be an integer, got {env!r}")
    return 0


def _write_text(text: str, path) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _rows_to_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _cmd_suite(args) -> int:
    if args.list:
        names = list_checks(args.suite)
        _write_text("\n".join(names) + "\n", args.out)
        return 0
    params = SuiteParams(dim=args.dim, grid=args.grid, p=args.p, q=args.q,
                         alpha=args.alpha, trials=args.trials, tol=args.tol,
                         cubes=args.cubes)
    report = run_suite(args.suite, seed=_resolve_seed(args.seed), params=params)
    emit_report(report, args.format, args.out)
    return 0 if report.passed else 1


def _cmd_dump_cubes(args) -> int:
    header, rows = cube_rows(cube_system(args.n), args.count)
    _write_text(_rows_to_csv(header, rows), args.out)
    return 0


def _demo_signal(m: int) -> PeriodicSignal:
    return signal_from_callable(
        lambda t: np.cos(2.0 * np.pi * t) + 0.5 * np.sin(6.0 * np.pi * t), m)


def _cmd_demo(args) -> int:
    if args.op == "riesz":
        x = (np.arange(args.m) + 0.5) / args.m
        f = GridFunction(((0.0, 1.0),), np.where((x >= 0.25) & (x < 0.75), 1.0, 0.0)
                         .astype(complex))
        out = riesz_potential(f, args.alpha)
        pairs = zip(x, f.values, out.values)
    else:
        f = _demo_signal(args.m)
        if args.op == "hilbert":
            out = hilbert_multiplier(f)
        else:
            out = hilbert_pv(f, 4.0 / args.m)
        t = np.arange(args.m) / args.m
        pairs = zip(t, f.samples, out.samples)
    rows = [[repr(float(t)), repr(float(a.real)), repr(float(a.imag)),
             repr(float(b.real)), repr(float(b.imag))] for t, a, b in pairs]
    _write_text(_rows_to_csv(["t", "in_re", "in_im", "out_re", "out_im"], rows),
                args.out)
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "ks2":
            return _cmd_dump_cubes(args)
        if args.command == "integral":
            return _cmd_demo(args)
        return _cmd_suite(args)
    except ValueError as exc:
        print(f"almosthilbert: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"almosthilbert: I/O error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
