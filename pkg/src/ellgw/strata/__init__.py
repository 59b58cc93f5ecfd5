"""Boundary strata of M̄_{1,4}, their invariant codimension-2 classes and pairings."""
from __future__ import annotations

from .classes import CLASS_NAMES, StratumCycle, build_invariant_classes
from .graphs import StableGraph, all_strata, enumerate_strata, expressible_as_intersection
from .intersection import (
    NEW_RELATION,
    ROW_CLASSES,
    TRIVIAL_RELATION,
    DecoratedGraph,
    ExcessPatternError,
    complete_matrix,
    excess_decorations,
    in_span,
    intersect,
    intersect_graphs,
    intersection_matrix,
    nullspace_relations,
)
from .psi import psi_integral, psi_integral_by_recursion

__all__ = [
    "CLASS_NAMES",
    "StratumCycle",
    "build_invariant_classes",
    "StableGraph",
    "all_strata",
    "enumerate_strata",
    "expressible_as_intersection",
    "NEW_RELATION",
    "ROW_CLASSES",
    "TRIVIAL_RELATION",
    "DecoratedGraph",
    "ExcessPatternError",
    "complete_matrix",
    "excess_decorations",
    "in_span",
    "intersect",
    "intersect_graphs",
    "intersection_matrix",
    "nullspace_relations",
    "psi_integral",
    "psi_integral_by_recursion",
]
