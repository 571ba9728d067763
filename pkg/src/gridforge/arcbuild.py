"""From an ordered spanning tree to an arc presentation.

The tree's tubular neighbourhood is shrunk onto the binding axis.  Strand
pieces inside it (inside arcs) are stacked at distinct levels, over-strands
above under-strands; the knot edges outside the neighbourhood become the
spokes, one per page.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from gridforge.diagram import Dart, PlanarDiagram
from gridforge.spantree import TreeOrder, edge_end

if TYPE_CHECKING:
    from gridforge.grid import GridDiagram

__all__ = [
    "ArcBuildError",
    "ArcPresentation",
    "HeightAssignment",
    "assign_heights",
    "build_arc_presentation",
    "arc_presentation",
    "to_grid",
]


class ArcBuildError(RuntimeError):
    """A construction invariant failed; the message carries a state dump."""


@dataclass(frozen=True)
class HeightAssignment:
    """Relative levels of the inside arcs, in assignment order.

    ``arcs[i]`` is the tuple of passages making up an inside arc and
    ``levels[i]`` its relative level; the star midpoint comes last.
    """

    arcs: tuple[tuple[int, ...], ...]
    levels: tuple[int, ...]
    star_level: int

    @property
    def trace(self) -> tuple[int, ...]:
        return self.levels + (self.star_level,)

    @property
    def n(self) -> int:
        return len(self.levels) + 1

    @property
    def normalized(self) -> dict[int, int]:
        """Relative level -> height in 1..n, order preserving."""
        return {lv: i for i, lv in enumerate(sorted(self.trace), 1)}

    @property
    def star_height(self) -> int:
        return self.normalized[self.star_level]

    def heights(self) -> tuple[int, ...]:
        norm = self.normalized
        return tuple(norm[lv] for lv in self.levels)

    def passage_height(self, p: int) -> int:
        norm = self.normalized
        for arc, lv in zip(self.arcs, self.levels):
            if p in arc:
                return norm[lv]
        raise KeyError(p)


@dataclass(frozen=True)
class ArcPresentation:
    """Cyclic sequence of spokes ``(a, b)`` with ``1 <= a < b <= n``."""

    spokes: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        spokes = tuple((min(a, b), max(a, b)) for a, b in self.spokes)
        object.__setattr__(self, "spokes", spokes)
        from gridforge.grid import check_intervals

        problem = check_intervals(spokes)
        if problem:
            raise ValueError(f"invalid arc presentation: {problem}")

    @property
    def n(self) -> int:
        return len(self.spokes)


def _passage(d: PlanarDiagram, dart: Dart) -> int:
    """The passage (label of the outgoing edge) of the strand through ``dart``."""
    slots = d.crossings[dart.crossing]
    a, b = slots[dart.slot], slots[(dart.slot + 2) % 4]
    return a if a > 0 else b


def _inside_arcs(d: PlanarDiagram, order: TreeOrder) -> dict[int, tuple[int, ...]]:
    """Passage -> the inside arc (tuple of passages along the knot) containing it."""
    n = d.n_edges
    tree = {abs(e) for e in order.edges}
    arcs: dict[int, tuple[int, ...]] = {}
    for p in range(1, n + 1):
        if p in arcs:
            continue
        # walk back to the first passage of this arc, then forward
        start, steps = p, 0
        while (start - 2) % n + 1 in tree and steps < n:
            start = (start - 2) % n + 1
            steps += 1
        arc = [start]
        while arc[-1] in tree and len(arc) <= n:
            arc.append(arc[-1] % n + 1)
        arc_t = tuple(arc)
        for q in arc_t:
            arcs[q] = arc_t
    return arcs


def assign_heights(d: PlanarDiagram, order: TreeOrder) -> HeightAssignment:
    """Level the inside arcs crossing by crossing along the tree order.

    At the root the over-strand gets level 0 and the under-strand -1.  At the
    end of each tree edge the strand already placed keeps its level and the
    transversal strand goes on top (over) or bottom (under) of everything so
    far.  The star midpoint takes the extreme on the side of the strand the
    star edge continues.
    """
    if d.n_crossings == 0:
        return HeightAssignment(((),), (0,), -1)
    arc_of = _inside_arcs(d, order)
    root = d.crossings[order.root]
    over_p = root[1] if root[1] > 0 else root[3]
    under_p = root[0] if root[0] > 0 else root[2]
    arcs = [arc_of[over_p], arc_of[under_p]]
    levels = [0, -1]
    if arcs[0] == arcs[1]:
        raise ArcBuildError("root strands share an inside arc")
    top, bottom = 0, -1
    placed = {arcs[0]: 0, arcs[1]: -1}
    for j, e in enumerate(order.edges, 1):
        x = edge_end(d, e)
        arrive = d.head(e) if e > 0 else d.tail(-e)
        own = arc_of[_passage(d, arrive)]
        other = arc_of[_passage(d, Dart(x, (arrive.slot + 1) % 4))]
        if own not in placed:
            raise ArcBuildError(f"e_{j}={e}: strand arriving at crossing {x} has no level")
        if other in placed:
            raise ArcBuildError(f"e_{j}={e}: level collision at crossing {x} "
                                f"(arc {other} already at {placed[other]})")
        if d.is_over(Dart(x, (arrive.slot + 1) % 4)):
            top += 1
            lv = top
        else:
            bottom -= 1
            lv = bottom
        placed[other] = lv
        arcs.append(other)
        levels.append(lv)
    star_start = d.tail(order.star) if order.star > 0 else d.head(-order.star)
    star_level = bottom - 1 if not d.is_over(star_start) else top + 1
    return HeightAssignment(tuple(arcs), tuple(levels), star_level)


def _boundary(d: PlanarDiagram, order: TreeOrder) -> list[Dart]:
    """Non-tree half-edges met walking clockwise around the tree.

    The walk starts at the root with the half-edge opposite ``e_1``.
    """
    tree = {abs(e) for e in order.edges}
    root = order.root
    if order.edges:
        e1 = order.edges[0]
        first = d.tail(e1) if e1 > 0 else d.head(-e1)
        slot = (first.slot + 2) % 4
    else:
        slot = 0
    start = Dart(root, slot)
    cur = start
    out: list[Dart] = []
    for _ in range(8 * d.n_edges + 8):
        h = d.at(cur)
        if abs(h) in tree:
            far = d.head(h) if h > 0 else d.tail(-h)
            cur = Dart(far.crossing, (far.slot - 1) % 4)
        else:
            out.append(cur)
            cur = Dart(cur.crossing, (cur.slot - 1) % 4)
        if cur == start:
            return out
    raise ArcBuildError("boundary walk did not close")


def build_arc_presentation(d: PlanarDiagram, order: TreeOrder,
                           heights: HeightAssignment) -> ArcPresentation:
    """Place every outside arc on a page.

    Outside arcs form non-crossing chords on the boundary circle.  They are
    peeled innermost first; an arc enclosing others is tilted into the page at
    the end whose height is interleaved with the enclosed spokes, which needs
    its other end to lie above or below all of them.  An arc that cannot be
    tilted over one side waits until it can be closed over the other.
    """
    if d.n_crossings == 0:
        return ArcPresentation(((1, 2), (1, 2)))
    pts = _boundary(d, order)
    height = [heights.passage_height(_passage(d, p)) for p in pts]
    label = [d.at(p) for p in pts]
    m = heights.star_height
    star = abs(order.star)
    pos: dict[int, list[int]] = {}
    for i, h in enumerate(label):
        pos.setdefault(abs(h), []).append(i)
    chords = {k: tuple(v) for k, v in pos.items()}
    if any(len(v) != 2 for v in chords.values()) or star not in chords:
        raise ArcBuildError(f"bad boundary chords {chords}")
    L = len(pts)

    alive = list(range(L))
    placed: dict[int, list[tuple[int, tuple[int, int]]]] = {}
    ends_of = {k: [height[i] for i in v] for k, v in chords.items()}
    for k, (a, b) in chords.items():
        if k == star:
            ends_of[k] = [height[a], height[b], m]

    def between(a: int, b: int) -> list[int]:
        """Chords strictly inside the cyclic stretch a -> b."""
        span = [(a + i) % L for i in range(1, (b - a) % L)]
        return sorted({abs(label[i]) for i in span})

    def placement(k: int, i: int, j: int) -> list[tuple[int, tuple[int, int]]] | None:
        """Pages for chord k closing over the stretch i -> j, if it can be tilted."""
        inner = [h for c in between(i, j) for h in ends_of[c]]
        hi, hj = height[i], height[j]
        if k == star:
            tail_pos = i if label[i] > 0 else j
            head_pos = j if tail_pos == i else i
            return [(tail_pos, (height[tail_pos], m)), (head_pos, (m, height[head_pos]))]
        if not inner or hj > max(inner) or hj < min(inner):
            return [(i, (hi, hj))]
        if hi > max(inner) or hi < min(inner):
            return [(j, (hi, hj))]
        return None

    while alive:
        for idx, i in enumerate(alive):
            j = alive[(idx + 1) % len(alive)]
            k = abs(label[i])
            if i == j or abs(label[j]) != k:
                continue
            pages = placement(k, i, j)
            if pages is not None:
                placed[k] = pages
                alive = [p for p in alive if p not in (i, j)]
                break
        else:
            state = [(label[p], height[p]) for p in alive]
            raise ArcBuildError(f"peeling stalled; remaining boundary {state}")

    pages = sorted(page for v in placed.values() for page in v)
    return ArcPresentation(tuple(sp for _, sp in pages))


def arc_presentation(d: PlanarDiagram, order: TreeOrder) -> ArcPresentation:
    return build_arc_presentation(d, order, assign_heights(d, order))


def to_grid(pres: ArcPresentation) -> "GridDiagram":
    """Column ``i`` of the grid is the vertical segment spanning spoke ``i``."""
    from gridforge.grid import GridDiagram

    return GridDiagram(pres.spokes)
