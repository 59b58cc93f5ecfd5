"""Command-line entry point.

Exit codes: 0 success, 1 a consistency check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

from . import tables
from .genus1 import CrossPathMismatch, MissingDependency
from .linalg import LinearSystemError

__all__ = ["main", "build_parser", "thread_cap"]

FORMATS = ("csv", "json", "markdown")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def thread_cap() -> int:
    """Worker cap from ``GW_KERNEL_THREADS``; computations here run on one thread."""
    raw = os.environ.get("GW_KERNEL_THREADS")
    if raw is None or raw == "":
        return 1
    v = int(raw)
    if v < 1:
        raise ValueError("GW_KERNEL_THREADS must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="markdown")
    common.add_argument("--output", default="-", help="file path, or - for standard output")

    p = argparse.ArgumentParser(prog="ellgw", description="Exact Gromov-Witten and M̄_{1,4} computations.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cp2", parents=[common], help="plane curve counts, genus 0 and 1")
    c.add_argument("--n-max", type=_positive, default=8)
    c.add_argument("--method", choices=("getzler", "ehx", "severi"), default="getzler")

    c = sub.add_parser("cp3", parents=[common], help="space curve counts, genus 0 and 1")
    c.add_argument("--n-max", type=_positive, default=5)

    sub.add_parser("p1", parents=[common], help="stratum potentials on the projective line")

    c = sub.add_parser("elliptic-curve", parents=[common], help="genus-one potential of an elliptic curve")
    c.add_argument("--beta-max", type=_positive, default=20)

    c = sub.add_parser("severi", parents=[common], help="generalized Severi degrees")
    c.add_argument("--d-max", type=_positive, default=5)

    c = sub.add_parser("strata", parents=[common], help="intersection matrix and relations on M̄_{1,4}")
    c.add_argument("what", choices=("matrix", "relations"))

    c = sub.add_parser("verify", parents=[common], help="check the genus-one relation coefficientwise")
    c.add_argument("--variety", choices=("cp1", "cp2"), required=True)
    c.add_argument("--q-cap", type=_positive, default=5)
    return p


def _run(args) -> tables.Table:
    if args.command == "cp2":
        return tables.cp2_table(args.n_max, args.method)
    if args.command == "cp3":
        return tables.cp3_table(args.n_max)
    if args.command == "p1":
        return tables.p1_table()
    if args.command == "elliptic-curve":
        return tables.elliptic_curve_table(args.beta_max)
    if args.command == "severi":
        return tables.severi_table(args.d_max)
    if args.command == "strata":
        return tables.strata_matrix_table() if args.what == "matrix" else tables.strata_relations_table()
    if args.command == "verify":
        return tables.verify_table(args.variety, args.q_cap)
    raise AssertionError(args.command)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        thread_cap()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        text = _run(args).render(args.format)
    except (tables.CheckFailed, CrossPathMismatch, MissingDependency, LinearSystemError, ArithmeticError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
