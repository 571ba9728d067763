"""Minimal grid diagrams for prime alternating knots from DT codes."""

from gridforge.arcbuild import arc_presentation, assign_heights, to_grid
from gridforge.codec import DTCode, DTCodeError, canonicalize, extract_dt, parse_dt
from gridforge.diagram import PlanarDiagram, check_reduced_prime, realize, regions
from gridforge.grid import GridDiagram, grid_to_diagram, render, shape_canonical
from gridforge.invariants import alexander, kauffman_jones, same_knot_up_to_mirror
from gridforge.spantree import TreeOrder, find_tree_order, validate_tree_order

__version__ = "0.1.0"

__all__ = [
    "DTCode",
    "DTCodeError",
    "GridDiagram",
    "PlanarDiagram",
    "TreeOrder",
    "alexander",
    "arc_presentation",
    "assign_heights",
    "canonicalize",
    "check_reduced_prime",
    "extract_dt",
    "find_tree_order",
    "grid_to_diagram",
    "kauffman_jones",
    "parse_dt",
    "realize",
    "regions",
    "render",
    "same_knot_up_to_mirror",
    "shape_canonical",
    "to_grid",
    "validate_tree_order",
]
