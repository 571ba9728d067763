"""Batch pipeline: DT table in, verified minimal grid diagrams out.

Per knot: parse, realize, check, find a tree order, build the arc
presentation, shape the grid, render it and verify the knot type against the
input diagram.  Records keep input order whatever the number of workers, and
nothing time dependent goes into the written report.
"""

from __future__ import annotations

import json
import logging
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

from gridforge.arcbuild import ArcBuildError, arc_presentation, assign_heights
from gridforge.codec import DTCode, DTCodeError, parse_dt
from gridforge.diagram import RealizationError, check_reduced_prime, realize
from gridforge.grid import GridDiagram, grid_to_diagram, render, shape_with_transform
from gridforge.invariants import DEFAULT_JONES_THRESHOLD, Verdict, same_knot_up_to_mirror
from gridforge.spantree import (
    TreeOrder,
    TreeSearchError,
    edge_start,
    find_tree_order,
    validate_tree_order,
)

__all__ = [
    "Options",
    "KnotRecord",
    "PipelineReport",
    "process_code",
    "run",
    "parse_tree",
    "EXIT_OK",
    "EXIT_VERIFY",
    "EXIT_INPUT",
]

log = logging.getLogger(__name__)

EXIT_OK, EXIT_VERIFY, EXIT_INPUT = 0, 1, 2

# CLI format name -> (renderer name, file name)
OUTPUTS = {
    "ascii": ("ascii", "grid.txt"),
    "svg": ("svg", "grid.svg"),
    "latex": ("latexmacros", "grid.tex"),
    "latexmacros": ("latexmacros", "grid.tex"),
    "coords3d": ("coords3d", "grid.xyz"),
}

OK, INPUT_ERROR, ERROR, SKIPPED = "ok", "input-error", "error", "skipped"


@dataclass(frozen=True)
class Options:
    formats: tuple[str, ...] = ("ascii", "svg", "latex", "coords3d")
    root: int | None = None
    tree: tuple[int, ...] | None = None
    jones_threshold: int = DEFAULT_JONES_THRESHOLD
    shape: bool = True
    force: bool = False
    jobs: int = 1
    fail_fast: bool = False
    dump_levels: bool = False

    def __post_init__(self) -> None:
        unknown = [f for f in self.formats if f not in OUTPUTS]
        if unknown:
            raise ValueError(f"unknown format {unknown[0]!r}")


@dataclass
class KnotRecord:
    line: int
    name: str
    status: str
    verdict: str
    message: str = ""
    c: int | None = None
    n: int | None = None
    root: int | None = None
    tree: list[int] | None = None
    star: int | None = None
    intervals: list[list[int]] | None = None
    transform: str | None = None
    grid: list[list[int]] | None = None
    mirror: bool | None = None
    grid_crossings: int | None = None
    timings: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = asdict(self)
        del out["timings"]
        return out


@dataclass
class PipelineReport:
    records: list[KnotRecord]
    elapsed: float = 0.0

    @property
    def summary(self) -> dict[str, int]:
        counts: dict[str, int] = {"knots": len(self.records)}
        for r in self.records:
            key = r.verdict if r.status == OK else r.status
            counts[key] = counts.get(key, 0) + 1
        return counts

    @property
    def exit_code(self) -> int:
        if any(r.status == INPUT_ERROR for r in self.records):
            return EXIT_INPUT
        if any(r.status == ERROR or r.verdict == Verdict.DISTINGUISHED.value
               for r in self.records):
            return EXIT_VERIFY
        return EXIT_OK

    def to_json(self) -> str:
        payload = {"records": [r.to_dict() for r in self.records],
                   "summary": self.summary}
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


_TREE_TOKEN = re.compile(r"[,\s()\[\]]+")


def parse_tree(text: str) -> tuple[int, ...]:
    """Signed edge labels, e.g. ``"-25, -22, 18"`` (unicode minus accepted)."""
    text = text.replace("−", "-")
    try:
        return tuple(int(t) for t in _TREE_TOKEN.split(text.strip()) if t)
    except ValueError as exc:
        raise ValueError(f"bad tree order {text!r}") from exc


class _InputError(Exception):
    pass


def _tree_order(d, options: Options) -> TreeOrder:
    c = d.n_crossings
    if options.tree is None:
        if options.root is not None and not 0 <= options.root < c:
            raise _InputError(f"root {options.root} is not a crossing (0..{c - 1})")
        return find_tree_order(d, options.root)
    for e in options.tree:
        if not 1 <= abs(e) <= d.n_edges:
            raise _InputError(f"tree edge {e} is not an edge label")
    root = options.root
    if root is None:
        root = edge_start(d, options.tree[0]) if options.tree else 0
    order = TreeOrder.build(d, root, options.tree)
    if len(order.edges) != c - 1:
        raise _InputError(f"tree order has {len(order.edges)} edges, expected {c - 1}")
    problem = validate_tree_order(d, order)
    if problem is not None:
        raise _InputError(f"tree order rejected: {problem}")
    return order


def process_code(line: int, text: str, options: Options
                 ) -> tuple[KnotRecord, dict[str, str]]:
    """Run one table line through the pipeline; returns the record and files."""
    timings: dict[str, float] = {}
    clock = time.perf_counter()

    def tick(stage: str) -> None:
        nonlocal clock
        now = time.perf_counter()
        timings[stage] = round(now - clock, 6)
        clock = now

    rec = KnotRecord(line, f"line{line}", INPUT_ERROR, "none", timings=timings)
    try:
        code: DTCode = parse_dt(text)
        rec.name = code.name or rec.name
        rec.c = code.crossings
        d = realize(code)
        tick("realize")
        verdict = check_reduced_prime(d)
        if not verdict.ok:
            what = verdict.kind + (f" at passage {verdict.label}" if verdict.label else "")
            if not options.force:
                raise _InputError(f"diagram is not reduced and prime: {what}")
            rec.message = f"forced past {what}"
        order = _tree_order(d, options)
        tick("tree")
    except (DTCodeError, RealizationError, _InputError) as exc:
        rec.message = str(exc)
        return rec, {}
    except TreeSearchError as exc:
        rec.status, rec.message = ERROR, str(exc)
        return rec, {}

    rec.root, rec.tree, rec.star = order.root, list(order.edges), order.star
    files: dict[str, str] = {}
    try:
        pres = arc_presentation(d, order)
        if options.dump_levels:
            files["levels.txt"] = " ".join(f"{v:+d}" for v in assign_heights(d, order).trace) + "\n"
        tick("arcs")
    except (ArcBuildError, ValueError) as exc:
        rec.status, rec.message = ERROR, str(exc)
        return rec, files

    raw = GridDiagram(pres.spokes)
    rec.intervals = [list(s) for s in pres.spokes]
    rec.n = raw.n
    if options.shape:
        g, rec.transform = shape_with_transform(raw)
    else:
        g, rec.transform = raw, "id"
    rec.grid, rec.mirror = [list(s) for s in g.cols], g.mirror
    tick("shape")

    files["grid.json"] = g.to_json(rec.name) + "\n"
    for fmt in options.formats:
        renderer, fname = OUTPUTS[fmt]
        files[fname] = render(g, renderer)
    tick("render")

    cmp = same_knot_up_to_mirror(d, grid_to_diagram(g), options.jones_threshold)
    rec.grid_crossings = cmp.crossings[1]
    rec.verdict = cmp.verdict.value
    rec.status = OK
    files["verify.txt"] = f"name: {rec.name}\n" + cmp.summary()
    tick("verify")
    return rec, files


def _process(args: tuple[int, str, Options]) -> tuple[KnotRecord, dict[str, str]]:
    return process_code(*args)


def _table_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line))
    return out


_UNSAFE = re.compile(r"[^A-Za-z0-9_.+-]")


def _dir_names(records: Sequence[KnotRecord]) -> list[str]:
    names, seen = [], set()
    for r in records:
        base = _UNSAFE.sub("_", r.name) or f"line{r.line}"
        name = base if base not in seen else f"{base}-line{r.line}"
        seen.add(name)
        names.append(name)
    return names


def run(input_path: str | Path, options: Options | None = None,
        out: str | Path | None = None) -> PipelineReport:
    """Process a knot table; writes per-knot directories and report.json under ``out``.

    Raises OSError if the table cannot be read.
    """
    options = options or Options()
    start = time.perf_counter()
    jobs = _table_lines(Path(input_path).read_text())
    tasks = [(lineno, text, options) for lineno, text in jobs]

    results: list[tuple[KnotRecord, dict[str, str]]] = []
    if options.fail_fast or options.jobs <= 1 or len(tasks) <= 1:
        for task in tasks:
            if options.fail_fast and results and results[-1][0].status != OK:
                lineno, text, _ = task
                results.append((KnotRecord(lineno, f"line{lineno}", SKIPPED, "none",
                                           "not run after an earlier failure"), {}))
                continue
            results.append(_process(task))
    else:
        with ProcessPoolExecutor(max_workers=options.jobs) as pool:
            results = list(pool.map(_process, tasks, chunksize=1))

    report = PipelineReport([r for r, _ in results])
    for rec in report.records:
        log.info("%s: %s %s", rec.name, rec.status, rec.verdict)
    if out is not None:
        root = Path(out)
        root.mkdir(parents=True, exist_ok=True)
        for dirname, (rec, files) in zip(_dir_names(report.records), results):
            if not files:
                continue
            kdir = root / dirname
            kdir.mkdir(exist_ok=True)
            for fname, content in sorted(files.items()):
                (kdir / fname).write_text(content)
        (root / "report.json").write_text(report.to_json())
    report.elapsed = time.perf_counter() - start
    return report
