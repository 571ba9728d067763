"""Command line entry point: ``gridforge run <table> [options]``."""

from __future__ import annotations

import argparse
import logging
import sys

from gridforge.invariants import DEFAULT_JONES_THRESHOLD
from gridforge.pipeline import EXIT_INPUT, OUTPUTS, Options, parse_tree, run


def _formats(text: str) -> tuple[str, ...]:
    fmts = tuple(f.strip() for f in text.split(",") if f.strip())
    for f in fmts:
        if f not in OUTPUTS:
            raise argparse.ArgumentTypeError(f"unknown format {f!r}")
    return fmts


def _tree(text: str) -> tuple[int, ...]:
    try:
        return parse_tree(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gridforge",
                                     description="Minimal grid diagrams from DT codes.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("run", help="process a knot table")
    p.add_argument("table", help="file with one 'name e1 e2 ... ec' per line")
    p.add_argument("--out", metavar="DIR", help="write per-knot outputs and report.json here")
    p.add_argument("--formats", type=_formats, default=("ascii", "svg", "latex", "coords3d"),
                   help="comma separated: ascii,svg,latex,coords3d")
    p.add_argument("--root", type=int, metavar="N",
                   help="root crossing (0-based, as in the diagram dump)")
    p.add_argument("--tree", type=_tree, metavar="LABELS",
                   help='tree order as signed edge labels, e.g. "-25 -22 18 ..."')
    p.add_argument("--jones-threshold", type=int, default=DEFAULT_JONES_THRESHOLD,
                   metavar="K", help="skip Jones above K crossings after simplification")
    p.add_argument("--no-shape", action="store_true", help="keep the raw grid")
    p.add_argument("--force", action="store_true",
                   help="proceed on non-reduced or composite diagrams")
    p.add_argument("--jobs", type=int, default=1, metavar="J", help="worker processes")
    p.add_argument("--fail-fast", action="store_true", help="stop after the first failure")
    p.add_argument("--dump-levels", action="store_true",
                   help="write the relative level trace to levels.txt")
    p.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    options = Options(
        formats=args.formats,
        root=args.root,
        tree=args.tree,
        jones_threshold=args.jones_threshold,
        shape=not args.no_shape,
        force=args.force,
        jobs=args.jobs,
        fail_fast=args.fail_fast,
        dump_levels=args.dump_levels,
    )
    try:
        report = run(args.table, options, args.out)
    except OSError as exc:
        print(f"gridforge: {exc}", file=sys.stderr)
        return EXIT_INPUT
    for rec in report.records:
        detail = f"n={rec.n} {rec.verdict}" if rec.status == "ok" else rec.message
        print(f"{rec.name}\t{rec.status}\t{detail}")
    summary = " ".join(f"{k}={v}" for k, v in sorted(report.summary.items()))
    print(f"# {summary} ({report.elapsed:.2f}s)", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
