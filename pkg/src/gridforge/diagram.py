"""Planar knot diagrams as combinatorial maps.

A crossing is stored PD-style as four signed edge labels in counterclockwise
order: ``-k`` is the head of edge ``k`` (the edge arrives), ``+k`` its tail.
Slot 0 is always the incoming under-strand, so slots 0/2 carry the under
strand and slots 1/3 the over strand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import networkx as nx

from gridforge.codec import DTCode, DTCodeError, gauss_sequence

__all__ = [
    "PlanarDiagram",
    "Region",
    "RealizationError",
    "Reducedness",
    "realize",
    "regions",
    "check_reduced_prime",
    "dump",
]


class RealizationError(DTCodeError):
    """The DT code has no planar realization."""

    def __init__(self, message: str, chords: tuple[tuple[int, int], ...] = ()):
        super().__init__(message)
        self.chords = chords


class Dart(NamedTuple):
    crossing: int
    slot: int


@dataclass(frozen=True)
class Region:
    boundary: tuple[int, ...]
    orientation: int = 1

    def __len__(self) -> int:
        return len(self.boundary)


@dataclass(frozen=True, eq=True)
class PlanarDiagram:
    crossings: tuple[tuple[int, int, int, int], ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "crossings", tuple(tuple(int(v) for v in x) for x in self.crossings)
        )
        self._check()

    # --- structure -------------------------------------------------------
    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_edges(self) -> int:
        return 2 * len(self.crossings)

    def next_edge(self, k: int) -> int:
        return k % self.n_edges + 1

    def prev_edge(self, k: int) -> int:
        return (k - 2) % self.n_edges + 1

    @cached_property
    def _ends(self) -> dict[int, Dart]:
        ends: dict[int, Dart] = {}
        for x, slots in enumerate(self.crossings):
            for s, h in enumerate(slots):
                ends[h] = Dart(x, s)
        return ends

    def tail(self, k: int) -> Dart:
        """Where edge ``k`` starts."""
        return self._ends[k]

    def head(self, k: int) -> Dart:
        """Where edge ``k`` ends."""
        return self._ends[-k]

    def at(self, dart: Dart) -> int:
        return self.crossings[dart.crossing][dart.slot]

    def is_over(self, dart: Dart) -> bool:
        return dart.slot % 2 == 1

    def _check(self) -> None:
        n = self.n_edges
        labels = sorted(h for x in self.crossings for h in x)
        expected = sorted([k for k in range(1, n + 1)] + [-k for k in range(1, n + 1)])
        if labels != expected:
            raise ValueError("every edge must have exactly one head and one tail")
        for x, slots in enumerate(self.crossings):
            if slots[0] > 0:
                raise ValueError(f"crossing {x}: slot 0 must be an incoming edge")
            for s in (0, 1):
                a, b = slots[s], slots[s + 2]
                lo, hi = (a, b) if a < 0 else (b, a)
                if not (lo < 0 < hi and self.next_edge(-lo) == hi):
                    raise ValueError(f"crossing {x}: strand {a},{b} does not pass straight")

    def neighbors(self, x: int) -> list[int]:
        """Adjacent crossings (with multiplicity) in slot order."""
        out = []
        for h in self.crossings[x]:
            other = self.head(h) if h > 0 else self.tail(-h)
            out.append(other.crossing)
        return out

    def edge_endpoints(self, k: int) -> tuple[int, int]:
        return self.tail(k).crossing, self.head(k).crossing

    # --- derived data ----------------------------------------------------
    def gauss_sequence(self) -> list[tuple[int, bool]]:
        """``(crossing, over)`` for passages 1..2c; passage k is the tail of edge k."""
        return [(self.tail(k).crossing, self.is_over(self.tail(k)))
                for k in range(1, self.n_edges + 1)]

    def is_alternating(self) -> bool:
        seq = self.gauss_sequence()
        return all(seq[i][1] != seq[i - 1][1] for i in range(len(seq)))

    def writhe(self) -> int:
        return sum(self.crossing_sign(x) for x in range(self.n_crossings))

    def crossing_sign(self, x: int) -> int:
        """Right-handed crossings are +1: the over strand runs from slot 3 to slot 1."""
        return 1 if self.crossings[x][3] < 0 else -1

    def mirror(self) -> "PlanarDiagram":
        """Switch every crossing; the underlying map is unchanged."""
        out = []
        for a, b, c, d in self.crossings:
            # new under strand is the old over strand; keep ccw order
            out.append((b, c, d, a) if b < 0 else (d, a, b, c))
        return PlanarDiagram(tuple(out), self.name)

    def reflect(self) -> "PlanarDiagram":
        """Reverse every rotation (mirror the plane, crossings follow)."""
        return PlanarDiagram(tuple((a, d, c, b) for a, b, c, d in self.crossings), self.name)

    def relabel(self, start: int, reverse: bool = False) -> "PlanarDiagram":
        """Renumber edges so that old edge ``start`` becomes edge 1.

        With ``reverse`` the orientation of the knot is reversed too.
        """
        n = self.n_edges
        if n == 0:
            return self
        if not reverse:
            new = {k: (k - start) % n + 1 for k in range(1, n + 1)}
            mapping = {h: (new[h] if h > 0 else -new[-h]) for x in self.crossings for h in x}
        else:
            new = {k: (start - k) % n + 1 for k in range(1, n + 1)}
            mapping = {h: (-new[h] if h > 0 else new[-h]) for x in self.crossings for h in x}
        out = []
        for slots in self.crossings:
            s = tuple(mapping[h] for h in slots)
            # rotate so slot 0 is the incoming under edge; under is slots 0/2
            out.append(s if s[0] < 0 else (s[2], s[3], s[0], s[1]))
        return PlanarDiagram(tuple(out), self.name)


def _role_of(passage: int, outgoing: bool) -> str:
    return ("o" if passage % 2 else "e") + ("o" if outgoing else "i")


def realize(code: DTCode, mirror_plane: bool = False) -> PlanarDiagram:
    """Build the combinatorial map of a DT code.

    Each crossing is replaced by a wheel whose rim forces the two strands to
    cross; a planar embedding of the resulting graph fixes the rotation at
    every crossing.  The reflection of the plane is fixed so that at the
    crossing of passage 1 the even strand leaves to the left of the odd one.
    """
    c = code.crossings
    if c == 0:
        return PlanarDiagram((), code.name)
    n = 2 * c
    seq = gauss_sequence(code)
    g = nx.Graph()
    for x in range(c):
        rim = [("r", x, r) for r in ("oi", "ei", "oo", "eo")]
        for i in range(4):
            g.add_edge(("c", x), rim[i])
            g.add_edge(rim[i], rim[(i + 1) % 4])
    for k in range(1, n + 1):
        p, q = k, k % n + 1
        a = ("r", seq[p - 1][0], _role_of(p, True))
        b = ("r", seq[q - 1][0], _role_of(q, False))
        g.add_edge(a, ("m", k))
        g.add_edge(("m", k), b)
    planar, emb = nx.check_planarity(g, counterexample=True)
    if not planar:
        bad = sorted({v[1] for v in emb.nodes if v[0] in ("c", "r")})
        chords = tuple((2 * x + 1, abs(code.entries[x])) for x in bad)
        raise RealizationError(f"DT code {code} is not realizable; obstruction among {chords}",
                               chords)

    rot = {}
    for x in range(c):
        cw = [v[2] for v in emb.neighbors_cw_order(("c", x))]
        ccw = list(reversed(cw))
        i = ccw.index("oi")
        rot[x] = ccw[i:] + ccw[:i]
    # plane reflection: at crossing 0 the ccw order is oi, eo, oo, ei
    flip = (rot[0][1] == "ei") != mirror_plane
    crossings = []
    for x in range(c):
        order = rot[x]
        if flip:
            order = [order[0], order[3], order[2], order[1]]
        odd_p, even_p = 2 * x + 1, abs(code.entries[x])
        label = {
            "oi": -((odd_p - 2) % n + 1), "oo": odd_p,
            "ei": -((even_p - 2) % n + 1), "eo": even_p,
        }
        odd_over = seq[odd_p - 1][1]
        start = order.index("ei" if odd_over else "oi")
        slots = order[start:] + order[:start]
        crossings.append(tuple(label[r] for r in slots))
    return PlanarDiagram(tuple(crossings), code.name)


def _next_dart(d: PlanarDiagram, k: int) -> int:
    """Dart successor for face tracing with the face on the left."""
    arrive = d.head(k) if k > 0 else d.tail(-k)
    # +m leaves along m forward, -m walks m backward
    return d.crossings[arrive.crossing][(arrive.slot - 1) % 4]


def regions(d: PlanarDiagram) -> list[Region]:
    """Trace the faces; bounded faces are counterclockwise.

    The largest face (earliest traced on ties) is reported as the unbounded
    region with orientation -1.
    """
    if d.n_crossings == 0:
        return [Region((1,), 1), Region((-1,), -1)]
    seen: set[int] = set()
    faces: list[tuple[int, ...]] = []
    for k in range(1, d.n_edges + 1):
        for start in (k, -k):
            if start in seen:
                continue
            face = []
            cur = start
            while cur not in seen:
                seen.add(cur)
                face.append(cur)
                cur = _next_dart(d, cur)
            faces.append(tuple(face))
    outer = max(range(len(faces)), key=lambda i: (len(faces[i]), -i))
    return [Region(f, -1 if i == outer else 1) for i, f in enumerate(faces)]


@dataclass(frozen=True)
class Reducedness:
    kind: str  # "ok", "kink" or "composite"
    label: int | None = None

    @property
    def ok(self) -> bool:
        return self.kind == "ok"


def check_reduced_prime(d: PlanarDiagram) -> Reducedness:
    n = d.n_edges
    if n == 0:
        return Reducedness("ok")
    seq = d.gauss_sequence()
    where: dict[int, list[int]] = {}
    for pos, (x, _) in enumerate(seq):
        where.setdefault(x, []).append(pos)
    kinks = [p + 1 if q - p == 1 else n for p, q in where.values() if q - p in (1, n - 1)]
    if kinks:
        return Reducedness("kink", min(kinks))
    for length in range(2, n - 1):
        for s in range(n):
            block = {(s + i) % n for i in range(length)}
            if all((p in block) == (q in block) for p, q in where.values()):
                return Reducedness("composite")
    return Reducedness("ok")


def dump(d: PlanarDiagram) -> str:
    """One line per crossing: four signed labels (ccw) and the over-strand slots."""
    lines = []
    for x, slots in enumerate(d.crossings):
        lines.append(f"{x}: " + " ".join(f"{h:+d}" for h in slots) + " over=1,3")
    return "\n".join(lines)
