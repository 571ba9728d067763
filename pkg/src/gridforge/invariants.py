"""Diagram simplification and polynomial invariants.

Alexander polynomials come from the crossing relations of the overpass
arcs; the Jones polynomial from the Kauffman bracket.  Everything is exact
integer arithmetic.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from gridforge.diagram import PlanarDiagram
from gridforge.laurent import LaurentPoly, det_polynomial

__all__ = [
    "simplify",
    "delete_crossings",
    "alexander",
    "bracket",
    "bracket_state_sum",
    "kauffman_jones",
    "jones_from_bracket",
    "Verdict",
    "Comparison",
    "same_knot_up_to_mirror",
    "DEFAULT_JONES_THRESHOLD",
]

DEFAULT_JONES_THRESHOLD = 18


# --- simplification --------------------------------------------------------

def delete_crossings(d: PlanarDiagram, doomed: set[int]) -> PlanarDiagram:
    """Remove crossings, joining the strands straight through them.

    Only meaningful when the removal is a Reidemeister I or II move.
    """
    n = d.n_edges
    keep = [p for p in range(1, n + 1) if d.tail(p).crossing not in doomed]
    if not keep:
        return PlanarDiagram((), d.name)
    new = {p: i for i, p in enumerate(keep, 1)}
    m = len(keep)
    out = []
    for x, slots in enumerate(d.crossings):
        if x in doomed:
            continue
        row = []
        for v in slots:
            if v > 0:
                row.append(new[v])
            else:
                q = new[d.next_edge(-v)]
                row.append(-((q - 2) % m + 1))
        out.append(tuple(row))
    return PlanarDiagram(tuple(out), d.name)


def _find_r1(d: PlanarDiagram) -> int | None:
    for k in range(1, d.n_edges + 1):
        if d.tail(k).crossing == d.head(k).crossing:
            return d.tail(k).crossing
    return None


def _find_r2(d: PlanarDiagram) -> tuple[int, int] | None:
    for k in range(1, d.n_edges + 1):
        t, h = d.tail(k), d.head(k)
        if t.crossing == h.crossing or d.is_over(t) != d.is_over(h):
            continue
        # edge k stays over (or under) at both ends; look for the parallel edge
        # closing a bigon face with it
        for side in (1, -1):
            nxt = d.crossings[h.crossing][(h.slot + side) % 4]
            far = d.head(nxt) if nxt > 0 else d.tail(-nxt)
            if far.crossing == t.crossing and far.slot == (t.slot - side) % 4:
                return t.crossing, h.crossing
    return None


def simplify(d: PlanarDiagram, max_passes: int = 10_000) -> PlanarDiagram:
    """Greedily undo Reidemeister I kinks and II bigons."""
    for _ in range(max_passes):
        x = _find_r1(d)
        if x is not None:
            d = delete_crossings(d, {x})
            continue
        pair = _find_r2(d)
        if pair is not None:
            d = delete_crossings(d, set(pair))
            continue
        break
    return d


# --- Alexander polynomial --------------------------------------------------

def alexander(d: PlanarDiagram) -> LaurentPoly:
    """Alexander polynomial, symmetric, with positive leading coefficient."""
    c = d.n_crossings
    if c <= 1:
        return LaurentPoly.const(1)
    n = d.n_edges
    # overpass arcs: a new arc starts after every under passage (slot 2)
    arc_of: dict[int, int] = {}
    starts = sorted(d.crossings[x][2] for x in range(c))
    first = starts[0]
    arc = -1
    for i in range(n):
        k = (first - 1 + i) % n + 1
        if k in starts:
            arc += 1
        arc_of[k] = arc
    rows = []
    for x, (a_in, b, a_out, dd) in enumerate(d.crossings):
        over = arc_of[b if b > 0 else dd]
        i, j = arc_of[-a_in], arc_of[a_out]
        row: list[dict[int, int]] = [dict() for _ in range(c)]

        def add(col: int, k: int, v: int) -> None:
            row[col][k] = row[col].get(k, 0) + v

        add(over, 0, 1)
        add(over, 1, -1)
        if d.crossing_sign(x) > 0:
            add(i, 1, 1)
            add(j, 0, -1)
        else:
            add(i, 0, -1)
            add(j, 1, 1)
        rows.append(row)
    minor = [r[:-1] for r in rows[:-1]]
    det = det_polynomial(minor, c - 1)
    if det.is_zero():
        raise ArithmeticError("vanishing Alexander determinant for a knot diagram")
    return _normalize_alexander(det)


def _normalize_alexander(p: LaurentPoly) -> LaurentPoly:
    span = p.max_exp - p.min_exp
    if span % 2:
        raise ArithmeticError(f"asymmetric Alexander polynomial {p}")
    q = p.shift(-p.min_exp - span // 2)
    if q.leading() < 0:
        q = -q
    return q


# --- Kauffman bracket and Jones --------------------------------------------

A = LaurentPoly.monomial(1, var="A")
LOOP = LaurentPoly({2: -1, -2: -1}, var="A")


def _smoothings(slots: tuple[int, int, int, int]):
    """A-smoothing joins slots 0-1 and 2-3; B-smoothing joins 0-3 and 1-2."""
    e = [abs(v) for v in slots]
    return ((1, ((e[0], e[1]), (e[2], e[3]))), (-1, ((e[0], e[3]), (e[1], e[2]))))


def bracket_state_sum(d: PlanarDiagram) -> LaurentPoly:
    """Kauffman bracket by enumerating all 2^c states (union-find loop count)."""
    c = d.n_crossings
    if c == 0:
        return LaurentPoly.const(1, "A")
    n = d.n_edges
    smooth = [_smoothings(s) for s in d.crossings]
    terms: dict[int, int] = {}
    for state in itertools.product((0, 1), repeat=c):
        parent = list(range(n + 1))

        def find(u: int) -> int:
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        a_count = 0
        for x, choice in enumerate(state):
            sign, pairs = smooth[x][choice]
            a_count += sign
            for u, v in pairs:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
        loops = sum(1 for u in range(1, n + 1) if find(u) == u)
        poly = LOOP ** (loops - 1) * LaurentPoly.monomial(a_count, var="A")
        for k, v in poly.terms.items():
            terms[k] = terms.get(k, 0) + v
    return LaurentPoly(terms, "A")


def _crossing_order(d: PlanarDiagram) -> list[int]:
    """Greedy order keeping the frontier of open edges small."""
    c = d.n_crossings
    done: set[int] = set()
    order = []
    open_edges: set[int] = set()
    while len(order) < c:
        best = None
        for x in range(c):
            if x in done:
                continue
            edges = [abs(v) for v in d.crossings[x]]
            closing = sum(1 for e in edges if e in open_edges)
            new_open = len({e for e in edges if e not in open_edges}) - sum(
                1 for e in set(edges) if edges.count(e) == 2)
            key = (-closing, new_open, x)
            if best is None or key < best[0]:
                best = (key, x)
        x = best[1]
        done.add(x)
        order.append(x)
        for e in (abs(v) for v in d.crossings[x]):
            if e in open_edges:
                open_edges.discard(e)
            else:
                open_edges.add(e)
        # loop edges appear twice at one crossing and cancel out above
    return order


def bracket(d: PlanarDiagram) -> LaurentPoly:
    """Kauffman bracket, normalized so the round unknot has bracket 1.

    Sums over all smoothings crossing by crossing, merging partial states
    that pair up the same dangling edges.
    """
    c = d.n_crossings
    if c == 0:
        return LaurentPoly.const(1, "A")
    # state: tuple of sorted pairs of dangling edge labels -> {A exponent: coeff} per loop count
    states: dict[tuple[tuple[int, int], ...], dict[tuple[int, int], int]] = {(): {(0, 0): 1}}
    for x in _crossing_order(d):
        nxt: dict[tuple[tuple[int, int], ...], dict[tuple[int, int], int]] = {}
        for sign, pairs in _smoothings(d.crossings[x]):
            for match, poly in states.items():
                new_match, loops = _merge(match, pairs)
                bucket = nxt.setdefault(new_match, {})
                for (ea, nl), coef in poly.items():
                    key = (ea + sign, nl + loops)
                    bucket[key] = bucket.get(key, 0) + coef
        states = nxt
    (final,) = states.values()
    total = LaurentPoly({}, "A")
    for (ea, nl), coef in final.items():
        total = total + LOOP ** (nl - 1) * LaurentPoly.monomial(ea, coef, "A")
    return total


def _merge(match: tuple[tuple[int, int], ...], pairs) -> tuple[tuple[tuple[int, int], ...], int]:
    """Add the two arcs of a smoothing to a matching of dangling edges."""
    adj: dict[int, list[int]] = {}
    for u, v in list(match) + list(pairs):
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    seen: set[int] = set()
    out = []
    loops = 0
    # open paths start at degree-one vertices
    for u in sorted(adj):
        if u in seen or len(adj[u]) != 1:
            continue
        prev, cur = None, u
        seen.add(u)
        while True:
            nbrs = adj[cur]
            step = nbrs[0] if nbrs[0] != prev or len(nbrs) == 1 else nbrs[1]
            if len(nbrs) == 2 and nbrs[0] == nbrs[1]:
                step = nbrs[0]
            prev, cur = cur, step
            seen.add(cur)
            if len(adj[cur]) == 1:
                break
        out.append((min(u, cur), max(u, cur)))
    for u in adj:
        if u in seen:
            continue
        loops += 1
        stack = [u]
        while stack:
            w = stack.pop()
            if w in seen:
                continue
            seen.add(w)
            stack.extend(adj[w])
    return tuple(sorted(out)), loops


def jones_from_bracket(br: LaurentPoly, writhe: int) -> LaurentPoly:
    """V(t) = (-A^3)^(-w) <D> at A = t^(-1/4)."""
    factor = LaurentPoly.monomial(-3 * writhe, (-1) ** writhe, "A")
    v = (br * factor).invert()
    return v.substitute_power(4, "t")


def kauffman_jones(d: PlanarDiagram, max_crossings: int = DEFAULT_JONES_THRESHOLD
                   ) -> LaurentPoly | None:
    """Jones polynomial, or None (skipped) above ``max_crossings``."""
    if d.n_crossings > max_crossings:
        return None
    return jones_from_bracket(bracket(d), d.writhe())


# --- comparison ------------------------------------------------------------

class Verdict(str, enum.Enum):
    CONSISTENT = "consistent"
    CONSISTENT_WEAK = "consistent-weak"
    DISTINGUISHED = "distinguished"


@dataclass(frozen=True)
class Comparison:
    verdict: Verdict
    alexander: tuple[LaurentPoly, LaurentPoly]
    jones: tuple[LaurentPoly | None, LaurentPoly | None]
    crossings: tuple[int, int]
    mirrored: bool | None = None  # True when V2 = V1(1/t) but not V1

    def summary(self) -> str:
        lines = [
            f"verdict: {self.verdict.value}",
            f"crossings after simplification: {self.crossings[0]} {self.crossings[1]}",
            f"alexander: {self.alexander[0]}",
            f"alexander: {self.alexander[1]}",
        ]
        for v in self.jones:
            lines.append(f"jones: {v if v is not None else 'skipped'}")
        if self.mirrored is not None:
            lines.append(f"mirror: {str(self.mirrored).lower()}")
        return "\n".join(lines) + "\n"


def same_knot_up_to_mirror(d1: PlanarDiagram, d2: PlanarDiagram,
                           jones_threshold: int = DEFAULT_JONES_THRESHOLD) -> Comparison:
    """Compare two diagrams by Alexander and (thresholded) Jones polynomials.

    ``consistent`` is evidence of equality up to mirror image, not a proof.
    ``consistent-weak`` means the Alexander polynomials agree but Jones was
    skipped on at least one side.
    """
    s1, s2 = simplify(d1), simplify(d2)
    a1, a2 = alexander(s1), alexander(s2)
    j1 = kauffman_jones(s1, jones_threshold)
    j2 = kauffman_jones(s2, jones_threshold)
    crossings = (s1.n_crossings, s2.n_crossings)
    mirrored = None
    if a1 != a2:
        verdict = Verdict.DISTINGUISHED
    elif j1 is not None and j2 is not None:
        if j1 == j2:
            verdict = Verdict.CONSISTENT
            mirrored = False if j1 != j1.invert() else None
        elif j1 == j2.invert():
            verdict = Verdict.CONSISTENT
            mirrored = True
        else:
            verdict = Verdict.DISTINGUISHED
    else:
        # Jones skipped on at least one side: Alexander is the only evidence
        verdict = Verdict.CONSISTENT_WEAK
    return Comparison(verdict, (a1, a2), (j1, j2), crossings, mirrored)
