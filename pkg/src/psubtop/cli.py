"""Command-line interface.

Subcommands: ``analyze`` one group file, ``batch`` a directory into CSV,
``dot`` a Hasse diagram, ``oracle`` the exhaustive small-poset contractor,
``fixtures`` to materialize the bundled catalog.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import fixtures as fixture_catalog
from . import finposet
from .analysis import DOT_CHOICES, analyze_file, batch, export_dot, report_row
from .errors import PsubtopError
from .groups import DEFAULT_MAX_ORDER
from .groupfile import load_group_file
from .plattice import ap_poset


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psubtop",
        description="Homotopy analysis of p-subgroup posets as finite spaces",
    )
    parser.add_argument(
        "--max-order",
        type=int,
        default=DEFAULT_MAX_ORDER,
        help=f"closure guard for group files (default {DEFAULT_MAX_ORDER})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="full report for one group file")
    p_analyze.add_argument("file", type=Path)
    p_analyze.add_argument("--prime", "-p", type=int, required=True)
    p_analyze.add_argument("--skip-homology", action="store_true")
    p_analyze.add_argument("--skip-steps", action="store_true")

    p_batch = sub.add_parser("batch", help="CSV report over a directory of group files")
    p_batch.add_argument("dir", type=Path)
    p_batch.add_argument(
        "--primes",
        default="all",
        help="'all' (prime divisors of each order) or comma-separated primes",
    )
    p_batch.add_argument("--jobs", type=int, default=1)
    p_batch.add_argument("--timeout", type=float, default=120.0, help="seconds per row")
    p_batch.add_argument("--out", type=Path, required=True)
    p_batch.add_argument("--skip-homology", action="store_true")
    p_batch.add_argument("--skip-steps", action="store_true")

    p_dot = sub.add_parser("dot", help="Hasse diagram in DOT format")
    p_dot.add_argument("file", type=Path)
    p_dot.add_argument("--prime", "-p", type=int, required=True)
    p_dot.add_argument("--poset", choices=DOT_CHOICES, required=True)
    p_dot.add_argument("--out", type=Path)

    p_oracle = sub.add_parser(
        "oracle", help="exhaustive minimum-change search on a small torus poset"
    )
    p_oracle.add_argument("file", type=Path)
    p_oracle.add_argument("--prime", "-p", type=int, required=True)
    p_oracle.add_argument("--limit", type=int, default=12)

    p_fix = sub.add_parser("fixtures", help="write the bundled catalog as .grp files")
    p_fix.add_argument("--out", type=Path, required=True)

    return parser


def _cmd_analyze(args) -> int:
    report = analyze_file(
        args.file,
        args.prime,
        skip_homology=args.skip_homology,
        skip_steps=args.skip_steps,
        max_order=args.max_order,
    )
    for key, value in report_row(report).items():
        if key == "error":
            continue
        print(f"{key}: {value}")
    return 0


def _cmd_batch(args) -> int:
    if args.primes.strip() == "all":
        primes = "all"
    else:
        primes = [int(tok) for tok in args.primes.split(",") if tok.strip()]
    text, summary = batch(
        args.dir,
        primes,
        jobs=args.jobs,
        timeout=args.timeout,
        skip_homology=args.skip_homology,
        skip_steps=args.skip_steps,
        max_order=args.max_order,
    )
    args.out.write_text(text, encoding="utf-8")
    print(
        f"batch: {summary['files']} files, {summary['rows']} rows, "
        f"{summary['errors']} errors, {summary['candidates']} flagged -> {args.out}"
    )
    return 0


def _cmd_dot(args) -> int:
    group = load_group_file(args.file, max_order=args.max_order)
    text = export_dot(group, args.prime, args.poset)
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        print(text, end="")
    return 0


def _cmd_oracle(args) -> int:
    group = load_group_file(args.file, max_order=args.max_order)
    poset = ap_poset(group, args.prime)
    changes = finposet.min_changes_oracle(poset, limit=args.limit)
    steps = finposet.steps_to_contract(poset)
    print(f"elements: {poset.n}")
    print(f"min_changes: {'absent' if changes is None else changes}")
    print(f"steps_to_contract: {'absent' if steps is None else steps}")
    return 0


def _cmd_fixtures(args) -> int:
    written = fixture_catalog.write_fixture_files(args.out)
    print(f"wrote {len(written)} group files to {args.out}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "analyze": _cmd_analyze,
        "batch": _cmd_batch,
        "dot": _cmd_dot,
        "oracle": _cmd_oracle,
        "fixtures": _cmd_fixtures,
    }
    try:
        return handlers[args.command](args)
    except PsubtopError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
