"""Command line entry point.

Exit codes: 0 all checks pass, 1 a tolerance is violated, 2 bad input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .descriptors import (
    DescriptorError,
    build_experiment,
    emit_report,
    parse_experiment,
    parse_table,
    parse_theory,
)
from .interference import interference_report, maximize_interference, report_from_table
from .suite import run_suite

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise DescriptorError(f"cannot read {path}: {exc}") from None


def cmd_verify(args, out) -> int:
    theory = parse_theory(_read(args.theory))
    seed = args.seed if args.seed is not None else (theory.seed or 0)
    checks = run_suite(theory.system, seed=seed)
    out.write("check\tresidual\ttolerance\tstatus\n")
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        out.write(f"{c.name}\t{c.residual:.3e}\t{c.tolerance:.0e}\t{status}\n")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_VIOLATION


def cmd_interference(args, out) -> int:
    exp = build_experiment(parse_experiment(_read(args.experiment)))
    out.write(emit_report(interference_report(exp)))
    return EXIT_OK


def cmd_scan(args, out) -> int:
    theory = parse_theory(_read(args.theory))
    seed = args.seed if args.seed is not None else (theory.seed or 0)
    if not 1 <= args.order <= theory.kind.rank:
        raise DescriptorError(f"--order must lie in 1..{theory.kind.rank}")
    best = maximize_interference(theory.system, args.order, trials=args.trials, iters=args.iters, seed=seed)
    out.write("order\tbest_abs_I\ttolerance\tstatus\n")
    # only orders >= 3 are expected to vanish
    ok = args.order < 3 or abs(best.value) <= args.tol
    status = "PASS" if ok else "FAIL"
    out.write(f"{args.order}\t{abs(best.value):.12e}\t{args.tol:.0e}\t{status}\n")
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_table(args, out) -> int:
    table = parse_table(_read(args.table))
    order = table.n if args.order is None else args.order
    if not 0 <= order <= table.n:
        raise DescriptorError(f"--order must lie in 0..{table.n}")
    out.write(emit_report(report_from_table(table, order)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="eja-interference", description="Jordan-algebraic interference checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="run the invariant suite on a theory")
    p.add_argument("theory")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("interference", help="value table and I_1..I_n for an experiment")
    p.add_argument("experiment")
    p.set_defaults(func=cmd_interference)

    p = sub.add_parser("scan", help="search for the largest |I_n|")
    p.add_argument("theory")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--iters", type=int, default=20)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("table", help="I_n from a raw value table")
    p.add_argument("table")
    p.add_argument("--order", type=int, default=None)
    p.set_defaults(func=cmd_table)
    return parser


def run_command(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args, out)
    except DescriptorError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run_command())
