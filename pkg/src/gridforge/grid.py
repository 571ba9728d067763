"""Grid diagrams: validity, shaping moves, conversion and rendering.

Columns are indexed 0..n-1 left to right and heights run 1..n bottom to top.
Column ``i`` is the vertical segment spanning ``cols[i]``; the horizontal
segment at height ``h`` joins the two columns with an endpoint at ``h``.
Vertical segments pass over horizontal ones.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Sequence

from gridforge.diagram import PlanarDiagram

__all__ = [
    "GridDiagram",
    "check_intervals",
    "validate",
    "translate_cyclic",
    "reflect",
    "transpose",
    "symmetries",
    "shape_canonical",
    "total_length",
    "grid_to_diagram",
    "render",
    "FORMATS",
]

FORMATS = ("ascii", "svg", "latexmacros", "coords3d")


def check_intervals(cols: Sequence[tuple[int, int]]) -> str | None:
    """Return a description of the first defect, or None if valid."""
    n = len(cols)
    if n < 2:
        return f"need at least 2 columns, got {n}"
    count = [0] * (n + 1)
    for i, (a, b) in enumerate(cols):
        if not (1 <= a < b <= n):
            return f"column {i}: bad interval [{a}, {b}]"
        count[a] += 1
        count[b] += 1
    for h in range(1, n + 1):
        if count[h] != 2:
            return f"height {h} is an endpoint of {count[h]} columns"
    # vertical and horizontal segments must close up into one loop
    rows = _rows(cols)
    i, h, steps = 0, cols[0][1], 0
    while True:
        i = rows[h][0] if rows[h][1] == i else rows[h][1]
        a, b = cols[i]
        h = a if h == b else b
        steps += 1
        if i == 0:
            break
    if steps != n:
        return f"segments split into several loops (first loop has {steps} columns)"
    return None


def _rows(cols: Sequence[tuple[int, int]]) -> dict[int, tuple[int, int]]:
    ends: dict[int, list[int]] = {}
    for i, (a, b) in enumerate(cols):
        ends.setdefault(a, []).append(i)
        ends.setdefault(b, []).append(i)
    return {h: (min(v), max(v)) for h, v in ends.items()}


@dataclass(frozen=True)
class GridDiagram:
    cols: tuple[tuple[int, int], ...]
    mirror: bool = False

    def __post_init__(self) -> None:
        cols = tuple((min(a, b), max(a, b)) for a, b in self.cols)
        object.__setattr__(self, "cols", cols)

    @property
    def n(self) -> int:
        return len(self.cols)

    @property
    def rows(self) -> dict[int, tuple[int, int]]:
        """Height -> (left column, right column)."""
        return _rows(self.cols)

    def to_json(self, name: str | None = None) -> str:
        payload = {"name": name, "n": self.n, "cols": [list(c) for c in self.cols],
                   "mirror": self.mirror}
        return json.dumps(payload, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "GridDiagram":
        data = json.loads(text)
        return cls(tuple(tuple(c) for c in data["cols"]), bool(data.get("mirror", False)))


def validate(g: GridDiagram) -> str | None:
    return check_intervals(g.cols)


# --- moves -----------------------------------------------------------------

def translate_cyclic(g: GridDiagram, axis: str, k: int) -> GridDiagram:
    """Move ``k`` columns (or rows) from the right (top) end to the other end."""
    n = g.n
    k %= n
    if axis == "columns":
        return GridDiagram(g.cols[n - k:] + g.cols[:n - k], g.mirror)
    if axis == "rows":
        return GridDiagram(tuple(((a - 1 + k) % n + 1, (b - 1 + k) % n + 1)
                                 for a, b in g.cols), g.mirror)
    raise ValueError(f"unknown axis {axis!r}")


def reflect(g: GridDiagram, axis: str) -> GridDiagram:
    """Reflect in a vertical or horizontal line; yields the mirror knot."""
    n = g.n
    if axis == "vertical":
        return GridDiagram(tuple(reversed(g.cols)), not g.mirror)
    if axis == "horizontal":
        return GridDiagram(tuple((n + 1 - b, n + 1 - a) for a, b in g.cols), not g.mirror)
    raise ValueError(f"unknown axis {axis!r}")


def transpose(g: GridDiagram, axis: str) -> GridDiagram:
    """Swap rows and columns about the diagonal or antidiagonal.

    This is a half-turn of space about a line in the plane: verticals stay on
    top, so the knot type is unchanged and the mirror flag is kept.
    """
    n = g.n
    rows = g.rows
    if axis == "diagonal":
        # height h -> column h-1; column i -> height i+1
        return GridDiagram(tuple((rows[h][0] + 1, rows[h][1] + 1)
                                 for h in range(1, n + 1)), g.mirror)
    if axis == "antidiagonal":
        # (x, y) -> (n-1-y', n-1-x') in zero-based coordinates
        cols = []
        for h in range(n, 0, -1):
            lo, hi = rows[h]
            cols.append((n - hi, n - lo))
        return GridDiagram(tuple(cols), g.mirror)
    raise ValueError(f"unknown axis {axis!r}")


def symmetries(g: GridDiagram) -> Iterator[tuple[str, GridDiagram]]:
    """The eight symmetries of the square, as compositions of the moves."""
    for t in (False, True):
        base = transpose(g, "diagonal") if t else g
        for v in (False, True):
            b1 = reflect(base, "vertical") if v else base
            for h in (False, True):
                b2 = reflect(b1, "horizontal") if h else b1
                name = "".join(s for s, on in (("T", t), ("V", v), ("H", h)) if on) or "id"
                yield name, b2


def total_length(g: GridDiagram) -> int:
    vertical = sum(b - a for a, b in g.cols)
    horizontal = sum(r - l for l, r in g.rows.values())
    return vertical + horizontal


def shape_canonical(g: GridDiagram) -> GridDiagram:
    """Shortest grid in the orbit under translations and square symmetries.

    Ties break on the interval sequence, then prefer keeping the mirror flag.
    """
    return shape_with_transform(g)[0]


def shape_with_transform(g: GridDiagram) -> tuple[GridDiagram, str]:
    best = None
    for name, s in symmetries(g):
        for dc in range(g.n):
            sc = translate_cyclic(s, "columns", dc)
            for dr in range(g.n):
                cand = translate_cyclic(sc, "rows", dr)
                key = (total_length(cand), cand.cols, cand.mirror != g.mirror)
                if best is None or key < best[0]:
                    best = (key, cand, f"{name} cols+{dc} rows+{dr}")
    return best[1], best[2]


# --- conversion ------------------------------------------------------------

_CCW = ("E", "N", "W", "S")


def _loop(g: GridDiagram) -> list[tuple[str, int, int, int]]:
    """Segments in walking order: (kind, fixed coordinate, start, end).

    The walk starts at the bottom of column 0 going up.
    """
    rows = g.rows
    segs = []
    i = 0
    a, b = g.cols[0]
    h = a
    while True:
        other = b if h == a else a
        segs.append(("v", i, h, other))
        h = other
        lo, hi = rows[h]
        j = hi if lo == i else lo
        segs.append(("h", h, i, j))
        i = j
        a, b = g.cols[i]
        if i == 0:
            break
    return segs


def grid_crossings(g: GridDiagram) -> list[tuple[int, int]]:
    """All (column, height) points where a vertical passes over a row."""
    rows = g.rows
    out = []
    for i, (a, b) in enumerate(g.cols):
        for h in range(a + 1, b):
            lo, hi = rows[h]
            if lo < i < hi:
                out.append((i, h))
    return out


def grid_to_diagram(g: GridDiagram) -> PlanarDiagram:
    """The planar diagram drawn by the grid, verticals over.

    Edges are numbered along the loop starting up column 0.
    """
    points = set(grid_crossings(g))
    if not points:
        return PlanarDiagram(())
    visits: list[tuple[tuple[int, int], str]] = []  # (point, travel direction)
    for kind, fixed, s, e in _loop(g):
        step = 1 if e > s else -1
        for t in range(s + step, e, step):
            pt = (fixed, t) if kind == "v" else (t, fixed)
            if pt in points:
                if kind == "v":
                    visits.append((pt, "N" if step > 0 else "S"))
                else:
                    visits.append((pt, "E" if step > 0 else "W"))
    m = len(visits)
    opposite = {"N": "S", "S": "N", "E": "W", "W": "E"}
    slots_at: dict[tuple[int, int], dict[str, int]] = {}
    under_in: dict[tuple[int, int], str] = {}
    for p, (pt, direction) in enumerate(visits, 1):
        incoming = (p - 2) % m + 1
        side = slots_at.setdefault(pt, {})
        side[opposite[direction]] = -incoming
        side[direction] = p
        if direction in "EW":
            under_in[pt] = opposite[direction]
    order = sorted(slots_at, key=lambda pt: next(i for i, v in enumerate(visits) if v[0] == pt))
    crossings = []
    for pt in order:
        start = _CCW.index(under_in[pt])
        dirs = [_CCW[(start + r) % 4] for r in range(4)]
        crossings.append(tuple(slots_at[pt][d] for d in dirs))
    return PlanarDiagram(tuple(crossings))


# --- rendering -------------------------------------------------------------

def render(g: GridDiagram, fmt: str) -> str:
    try:
        fn = _RENDERERS[fmt]
    except KeyError:
        raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}") from None
    return fn(g)


def _ascii(g: GridDiagram) -> str:
    n = g.n
    w, hgt = 4 * (n - 1) + 1, 2 * (n - 1) + 1
    canvas = [[" "] * w for _ in range(hgt)]

    def put(x: int, y: int, ch: str) -> None:
        canvas[hgt - 1 - y][x] = ch

    rows = g.rows
    for h, (l, r) in rows.items():
        y = 2 * (h - 1)
        for x in range(4 * l, 4 * r + 1):
            put(x, y, "─")
    for i, (a, b) in enumerate(g.cols):
        x = 4 * i
        for y in range(2 * (a - 1), 2 * (b - 1) + 1):
            put(x, y, "│")
    for i, (a, b) in enumerate(g.cols):
        x = 4 * i
        lo_l, lo_r = rows[a]
        hi_l, hi_r = rows[b]
        put(x, 2 * (a - 1), "└" if lo_l == i else "┘")
        put(x, 2 * (b - 1), "┌" if hi_l == i else "┐")
    for i, h in grid_crossings(g):
        put(4 * i - 1, 2 * (h - 1), " ")
        put(4 * i + 1, 2 * (h - 1), " ")
    return "\n".join("".join(row).rstrip() for row in canvas) + "\n"


_GAP = 0.2


def _svg(g: GridDiagram) -> str:
    n = g.n
    scale = 20
    pad = 10
    size = scale * (n - 1) + 2 * pad

    def px(x: float) -> str:
        return f"{pad + scale * x:g}"

    def py(y: float) -> str:
        return f"{pad + scale * (n - 1 - y):g}"

    cross = grid_crossings(g)
    paths = []
    for h, (l, r) in sorted(g.rows.items()):
        cuts = sorted(i for i, hh in cross if hh == h)
        xs = [float(l)]
        for i in cuts:
            xs += [i - _GAP, i + _GAP]
        xs.append(float(r))
        y = h - 1
        for x0, x1 in zip(xs[::2], xs[1::2]):
            paths.append(f'<path d="M {px(x0)} {py(y)} L {px(x1)} {py(y)}"/>')
    for i, (a, b) in enumerate(g.cols):
        paths.append(f'<path d="M {px(i)} {py(a - 1)} L {px(i)} {py(b - 1)}"/>')
    body = "\n".join("  " + p for p in paths)
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
            f'viewBox="0 0 {size} {size}">\n'
            f'<g fill="none" stroke="black" stroke-width="1.5" stroke-linecap="round">\n'
            f"{body}\n</g>\n</svg>\n")


LATEX_MACROS = r"""\def\h#1#2#3{\draw[black,line width=0.6pt, cap=round] (#1,#2)--(#1+#3,#2);}
\def\gap{0.2}
\def\v#1#2#3{
       \draw[white,line width=2.0pt] (#1,#2+\gap)--(#1,#2+#3-\gap);
       \draw[black,line width=0.6pt, cap=round] (#1,#2)--(#1,#2+#3);}
"""


def _latex(g: GridDiagram) -> str:
    lines = []
    for h in range(1, g.n + 1):
        l, r = g.rows[h]
        lines.append(f"\\h{{{l}}}{{{h - 1}}}{{{r - l}}}")
    for i, (a, b) in enumerate(g.cols):
        lines.append(f"\\v{{{i}}}{{{a - 1}}}{{{b - a}}}")
    return "\n".join(lines) + "\n"


def _coords3d(g: GridDiagram) -> str:
    """Closed polygon: verticals at depth 1, horizontals at depth 0."""
    pts = []
    for kind, fixed, s, e in _loop(g):
        if kind == "v":
            pts += [(fixed, s - 1, 1), (fixed, e - 1, 1)]
        else:
            pts += [(s, fixed - 1, 0), (e, fixed - 1, 0)]
    return "".join(f"{x} {y} {z}\n" for x, y, z in pts)


_RENDERERS = {"ascii": _ascii, "svg": _svg, "latexmacros": _latex, "coords3d": _coords3d}
