"""The nine S₄-invariant codimension-2 classes as sums of labeled strata.

Each term ``(G, 1)`` stands for the class of the closed stratum of ``G``,
i.e. ``ξ_{G*}[M̄_G] / |Aut G|``; generic automorphisms are carried by
``|Aut G|`` and by the orbifold ψ-integrals, so every normalization is 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Tuple

from .graphs import StableGraph

__all__ = ["CLASS_NAMES", "StratumCycle", "build_invariant_classes"]

CLASS_NAMES = ("d22", "d23", "d24", "d34", "d02", "d03", "d04", "dalpha", "dbeta")

LABELS = (1, 2, 3, 4)


@dataclass
class StratumCycle:
    name: str
    terms: List[Tuple[StableGraph, Fraction]]
    normalization: Fraction = Fraction(1)

    def weighted_terms(self) -> List[Tuple[StableGraph, Fraction]]:
        return [(g, c * self.normalization) for g, c in self.terms]

    def __len__(self) -> int:
        return len(self.terms)


def _graph(genera, tail_at: Dict[int, int], edges) -> StableGraph:
    return StableGraph(tuple(genera), tuple(tail_at[i] for i in LABELS), tuple(edges))


def _pair_splits():
    """The three splittings {i,j}|{k,l}."""
    out = []
    for pair in combinations(LABELS, 2):
        if 1 in pair:
            out.append((pair, tuple(x for x in LABELS if x not in pair)))
    return out


def _others(*used):
    return tuple(x for x in LABELS if x not in used)


def build_invariant_classes() -> Dict[str, StratumCycle]:
    classes: Dict[str, List[StableGraph]] = {name: [] for name in CLASS_NAMES}
    # genus-1 vertex 0 with two genus-0 branches
    for a, b in _pair_splits():
        at = {x: 1 for x in a} | {x: 2 for x in b}
        classes["d22"].append(_graph((1, 0, 0), at, [(0, 1), (0, 2)]))
    # chains: genus-1 vertex, then x, then y
    for l in LABELS:
        for k in _others(l):
            at = {l: 0, k: 1} | {x: 2 for x in _others(l, k)}
            classes["d23"].append(_graph((1, 0, 0), at, [(0, 1), (1, 2)]))
    for pair in combinations(LABELS, 2):
        at = {x: 1 for x in pair} | {x: 2 for x in _others(*pair)}
        classes["d24"].append(_graph((1, 0, 0), at, [(0, 1), (1, 2)]))
    for l in LABELS:
        at = {l: 1} | {x: 2 for x in _others(l)}
        classes["d34"].append(_graph((1, 0, 0), at, [(0, 1), (1, 2)]))
    # genus-0 vertex with a loop, attached to a genus-0 vertex
    for pair in combinations(LABELS, 2):
        at = {x: 0 for x in pair} | {x: 1 for x in _others(*pair)}
        classes["d02"].append(_graph((0, 0), at, [(0, 0), (0, 1)]))
    for l in LABELS:
        at = {l: 0} | {x: 1 for x in _others(l)}
        classes["d03"].append(_graph((0, 0), at, [(0, 0), (0, 1)]))
    classes["d04"].append(_graph((0, 0), {x: 1 for x in LABELS}, [(0, 0), (0, 1)]))
    # two genus-0 vertices joined by a double edge
    for i in LABELS:
        at = {i: 0} | {x: 1 for x in _others(i)}
        classes["dalpha"].append(_graph((0, 0), at, [(0, 1), (0, 1)]))
    for a, b in _pair_splits():
        at = {x: 0 for x in a} | {x: 1 for x in b}
        classes["dbeta"].append(_graph((0, 0), at, [(0, 1), (0, 1)]))
    out = {}
    for name, graphs in classes.items():
        if len(set(graphs)) != len(graphs):
            raise AssertionError(f"repeated stratum in {name}")
        out[name] = StratumCycle(name, [(g, Fraction(1)) for g in graphs])
    return out
