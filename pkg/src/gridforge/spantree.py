"""Ordered spanning trees of a knot diagram.

A tree order is a sequence of oriented knot edges ``e_1 .. e_{c-1}`` (signed
labels: ``-k`` walks edge ``k`` against the knot orientation) grown from a
root crossing.  Every prefix must

* be a tree, each new edge leaving the tree for an untouched crossing;
* leave the untouched crossings connected in the diagram graph;
* (for j <= c - 2) not close a loop with the one-step extension of ``e_j``,
  i.e. the edge continuing ``e_j``'s strand must lead to an untouched crossing.

The one-step extension of the last edge necessarily closes a loop; that edge
is the star edge, broken at its midpoint when building spokes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, Sequence

from gridforge.diagram import PlanarDiagram

__all__ = [
    "TreeOrder",
    "TreeSearchError",
    "Violation",
    "default_root",
    "edge_start",
    "edge_end",
    "extension",
    "find_tree_order",
    "iter_tree_orders",
    "validate_tree_order",
]

log = logging.getLogger(__name__)

TREE, SEPARATION, EXTENSION = "tree", "separation", "extension"


class TreeSearchError(RuntimeError):
    def __init__(self, message: str, trace: Sequence[tuple[int, ...]] = ()):
        super().__init__(message)
        self.trace = list(trace)


@dataclass(frozen=True)
class TreeOrder:
    """Root crossing, signed tree edges in growth order, and the star edge."""

    root: int
    edges: tuple[int, ...]
    star: int

    @classmethod
    def build(cls, d: PlanarDiagram, root: int, edges: Sequence[int]) -> "TreeOrder":
        edges = tuple(int(e) for e in edges)
        if edges:
            star = extension(d, edges[-1])
        else:
            # lone crossing: break the loop leaving along the under strand
            star = d.crossings[root][2]
        return cls(root, edges, star)


@dataclass(frozen=True)
class Violation:
    index: int  # 1-based position of the offending edge
    condition: str

    def __str__(self) -> str:
        return f"e_{self.index} violates the {self.condition} condition"


def edge_start(d: PlanarDiagram, e: int) -> int:
    return d.tail(e).crossing if e > 0 else d.head(-e).crossing


def edge_end(d: PlanarDiagram, e: int) -> int:
    return d.head(e).crossing if e > 0 else d.tail(-e).crossing


def extension(d: PlanarDiagram, e: int) -> int:
    """The oriented edge continuing ``e`` straight through its end crossing."""
    return d.next_edge(e) if e > 0 else -d.prev_edge(-e)


def default_root(d: PlanarDiagram) -> int:
    """The crossing between the last two edges (where edge 2c starts)."""
    if d.n_crossings == 0:
        raise ValueError("a diagram without crossings has no root")
    return d.tail(d.n_edges).crossing


def _adjacency(d: PlanarDiagram) -> list[set[int]]:
    return [set(d.neighbors(x)) for x in range(d.n_crossings)]


def _untouched_connected(adj: list[set[int]], touched: set[int]) -> bool:
    rest = set(range(len(adj))) - touched
    if not rest:
        return True
    start = next(iter(rest))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y in rest and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(rest)


def _check_step(d, adj, touched, e, j) -> str | None:
    """Check e as e_j given the crossings touched by e_1..e_{j-1}."""
    c = d.n_crossings
    a, b = edge_start(d, e), edge_end(d, e)
    if a not in touched or b in touched:
        return TREE
    grown = touched | {b}
    if not _untouched_connected(adj, grown):
        return SEPARATION
    if j <= c - 2 and edge_end(d, extension(d, e)) in grown:
        return EXTENSION
    return None


def validate_tree_order(d: PlanarDiagram, order: TreeOrder) -> Violation | None:
    """Return the first violation, or None when the order is valid."""
    for e in order.edges:
        if not 1 <= abs(e) <= d.n_edges:
            raise ValueError(f"unknown edge label {e}")
    c = d.n_crossings
    if c == 0:
        return None if not order.edges else Violation(1, TREE)
    adj = _adjacency(d)
    touched = {order.root}
    for j, e in enumerate(order.edges, 1):
        if j > c - 1:
            return Violation(j, TREE)
        problem = _check_step(d, adj, touched, e, j)
        if problem:
            return Violation(j, problem)
        touched.add(edge_end(d, e))
    if len(order.edges) != c - 1:
        return Violation(len(order.edges) + 1, TREE)
    return None


def _candidates(d: PlanarDiagram, touched: set[int], first: bool, root: int) -> list[int]:
    out = set()
    for x in touched:
        # a tail +k walks edge k forward, a head -k walks it backward
        for e in d.crossings[x]:
            if edge_end(d, e) not in touched:
                out.add(e)
    if first:
        # e_1 runs along the over strand at the root
        over = {d.crossings[root][1], d.crossings[root][3]}
        out &= over
    return sorted(out, key=lambda e: (abs(e), e > 0))


def iter_tree_orders(d: PlanarDiagram, root: int | None = None,
                     limit: int | None = None) -> Iterator[TreeOrder]:
    """Depth-first enumeration of valid tree orders in tie-break order."""
    c = d.n_crossings
    if c == 0:
        return
    root = default_root(d) if root is None else root
    if c == 1:
        yield TreeOrder.build(d, root, ())
        return
    adj = _adjacency(d)
    found = 0
    path: list[int] = []
    touched = {root}
    # each frame: remaining candidates at that depth
    stack = [iter(_candidates(d, touched, True, root))]
    while stack:
        j = len(path) + 1
        e = next(stack[-1], None)
        if e is None:
            stack.pop()
            if path:
                touched.discard(edge_end(d, path.pop()))
            continue
        if _check_step(d, adj, touched, e, j):
            continue
        path.append(e)
        touched.add(edge_end(d, e))
        if len(path) == c - 1:
            yield TreeOrder.build(d, root, path)
            found += 1
            if limit is not None and found >= limit:
                return
            touched.discard(edge_end(d, path.pop()))
            continue
        stack.append(iter(_candidates(d, touched, False, root)))


def find_tree_order(d: PlanarDiagram, root: int | None = None) -> TreeOrder:
    """The first tree order in depth-first tie-break order."""
    if d.n_crossings == 0:
        raise ValueError("a diagram without crossings has no spanning tree")
    for order in iter_tree_orders(d, root, limit=1):
        return order
    raise TreeSearchError(f"no valid tree order from root {root}")
