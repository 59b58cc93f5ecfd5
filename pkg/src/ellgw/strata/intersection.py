"""Intersection numbers of boundary strata by excess intersection.

For labeled strata ``A`` and ``B`` with complementary codimensions,

    A·B = Σ_G 1/|Aut G| Σ_{(S_A, S_B)} ∫_{M̄_G} ∏_{e ∈ S_A ∩ S_B} (−ψ_{s(e)} − ψ_{t(e)}),

summed over stable graphs ``G`` and edge sets with ``S_A ∪ S_B = E(G)`` such
that keeping only ``S_A`` (resp. ``S_B``) gives ``A`` (resp. ``B``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, FrozenSet, List, Mapping, Sequence, Tuple

from ..linalg import nullspace, rank, solve_sparse
from .classes import CLASS_NAMES, StratumCycle, build_invariant_classes
from .graphs import GENUS, TAILS, StableGraph, all_strata
from .psi import psi_integral

__all__ = [
    "DecoratedGraph",
    "ExcessPatternError",
    "excess_decorations",
    "intersect_graphs",
    "intersect",
    "intersection_matrix",
    "nullspace_relations",
    "complete_matrix",
    "in_span",
    "ROW_CLASSES",
    "TRIVIAL_RELATION",
    "NEW_RELATION",
]

DIM = 3 * GENUS - 3 + TAILS
ROW_CLASSES = CLASS_NAMES[:7]
TRIVIAL_RELATION = (0, 0, 0, 0, 1, 3, 6, -3, -4)
NEW_RELATION = (12, -4, -2, 6, 0, 1, 1, 0, -2)


class ExcessPatternError(RuntimeError):
    pass


@dataclass(frozen=True)
class DecoratedGraph:
    """A stable graph with ``arrows[h]`` factors of ``−ψ`` at flag ``h``."""

    graph: StableGraph
    arrows: Tuple[int, ...]
    coefficient: Fraction = Fraction(1)

    def evaluate(self) -> Fraction:
        """Product of vertex ψ-integrals; zero unless arrow counts match dimensions."""
        G = self.graph
        flags_at: Dict[int, List[int]] = {v: [] for v in range(G.n_vertices)}
        for h, (_, v) in enumerate(G.half_edges()):
            flags_at[v].append(self.arrows[h])
        total = Fraction(self.coefficient)
        sign = (-1) ** sum(self.arrows)
        for v, g in enumerate(G.genera):
            ntails = sum(1 for t in G.tails if t == v)
            exps = flags_at[v] + [0] * ntails
            n = len(exps)
            if sum(exps) != 3 * g - 3 + n:
                return Fraction(0)
            total *= psi_integral(g, n, exps)
        return sign * total


def excess_decorations(G: StableGraph, shared: Sequence[int]) -> List[DecoratedGraph]:
    """Expand ``∏_{e ∈ shared} (−ψ_{s(e)} − ψ_{t(e)})`` into decorated graphs."""
    out = []
    for ends in product((0, 1), repeat=len(shared)):
        arrows = [0] * (2 * G.codim)
        for e, side in zip(shared, ends):
            arrows[G.edge_half_edges(e)[side]] += 1
        out.append(DecoratedGraph(G, tuple(arrows)))
    return out


@lru_cache(maxsize=None)
def _specializations() -> Tuple[Tuple[StableGraph, Tuple[Tuple[FrozenSet, StableGraph], ...]], ...]:
    """Every stable graph with every kept-edge subset and its contraction."""
    out = []
    for G in all_strata(DIM):
        subs = []
        for r in range(G.codim + 1):
            for S in combinations(range(G.codim), r):
                subs.append((frozenset(S), G.keep_edges(S)))
        out.append((G, tuple(subs)))
    return tuple(out)


@lru_cache(maxsize=None)
def intersect_graphs(A: StableGraph, B: StableGraph) -> Fraction:
    """``[A]·[B]`` for labeled strata of complementary codimension."""
    if A.codim + B.codim != DIM:
        raise ValueError("codimensions must add up to the dimension")
    total = Fraction(0)
    for G, subs in _specializations():
        if G.codim > DIM:
            continue
        local = Fraction(0)
        for SA, HA in subs:
            if len(SA) != A.codim or HA != A:
                continue
            for SB, HB in subs:
                if len(SB) != B.codim or HB != B:
                    continue
                if SA | SB != frozenset(range(G.codim)):
                    continue
                shared = sorted(SA & SB)
                if len(shared) != DIM - G.codim:
                    raise ExcessPatternError("excess rank does not match the shared edges")
                for dg in excess_decorations(G, shared):
                    local += dg.evaluate()
        total += local / G.automorphisms()
    return total


def intersect(A: StratumCycle, B: StratumCycle) -> Fraction:
    total = Fraction(0)
    for ga, ca in A.weighted_terms():
        for gb, cb in B.weighted_terms():
            total += ca * cb * intersect_graphs(ga, gb)
    return total


def intersection_matrix(classes: Mapping[str, StratumCycle] | None = None) -> List[List[Fraction]]:
    """Rows ``δ_{2,2}..δ_{0,4}`` paired with all nine classes."""
    classes = classes or build_invariant_classes()
    return [[intersect(classes[r], classes[c]) for c in CLASS_NAMES] for r in ROW_CLASSES]


def nullspace_relations(M: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """Exact right nullspace basis; must be two-dimensional and contain both known relations."""
    basis = nullspace(M, len(CLASS_NAMES))
    if len(basis) != 2:
        raise ValueError(f"nullspace has dimension {len(basis)}, expected 2")
    for vec in (TRIVIAL_RELATION, NEW_RELATION):
        if rank(basis + [list(map(Fraction, vec))]) != 2:
            raise ValueError(f"{vec} is not in the nullspace")
    return basis


def in_span(basis: Sequence[Sequence[Fraction]], vec: Sequence) -> bool:
    return rank(list(basis) + [list(map(Fraction, vec))]) == rank(basis)


def complete_matrix(
    M: Sequence[Sequence[Fraction]],
    relations: Sequence[Sequence] = (TRIVIAL_RELATION, NEW_RELATION),
) -> List[List[Fraction]]:
    """Fill the ``δ_α, δ_β`` block of the symmetric 9×9 pairing from the relations."""
    n = len(CLASS_NAMES)
    k = len(M)
    if any(len(row) != n for row in M) or k != n - 2:
        raise ValueError("expected a 7×9 matrix")
    full: List[List] = [[None] * n for _ in range(n)]
    for i in range(k):
        for j in range(n):
            full[i][j] = Fraction(M[i][j])
            if j >= k:
                full[j][i] = Fraction(M[i][j])
    for i in range(k):
        for j in range(k):
            if full[i][j] != full[j][i]:
                raise ValueError("known block is not symmetric")
    unknown = {(k, k): "aa", (k, k + 1): "ab", (k + 1, k): "ab", (k + 1, k + 1): "bb"}
    equations = []
    for r in relations:
        for i in (k, k + 1):
            eq: Dict = {}
            for j in range(n):
                c = Fraction(r[j])
                if not c:
                    continue
                if (i, j) in unknown:
                    u = unknown[(i, j)]
                    eq[u] = eq.get(u, 0) + c
                else:
                    eq[1] = eq.get(1, 0) + c * full[i][j]
            equations.append(eq)
    sol = solve_sparse(equations, ["aa", "ab", "bb"])
    for (i, j), u in unknown.items():
        full[i][j] = sol[u]
    return full
