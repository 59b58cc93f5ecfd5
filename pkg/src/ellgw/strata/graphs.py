"""Stable graphs of genus 1 with tails labeled 1..4."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

__all__ = [
    "TAILS",
    "GENUS",
    "StableGraph",
    "enumerate_strata",
    "all_strata",
    "expressible_as_intersection",
]

TAILS = 4
GENUS = 1


@dataclass(frozen=True)
class StableGraph:
    """Vertices carry genera; ``tails[i]`` is the vertex of label ``i+1``.

    Edges are ordered vertex pairs; a loop is ``(v, v)``.  Edge ``e`` owns the
    flags ``2e`` (at ``edges[e][0]``) and ``2e+1`` (at ``edges[e][1]``).
    Equality and hashing use the canonical form up to isomorphisms fixing
    tail labels.
    """

    genera: Tuple[int, ...]
    tails: Tuple[int, ...]
    edges: Tuple[Tuple[int, int], ...] = ()
    _key: tuple = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "genera", tuple(self.genera))
        object.__setattr__(self, "tails", tuple(self.tails))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        nv = len(self.genera)
        if any(not 0 <= v < nv for v in self.tails) or any(not (0 <= u < nv and 0 <= w < nv) for u, w in self.edges):
            raise ValueError("vertex index out of range")
        object.__setattr__(self, "_key", _canonical_key(self.genera, self.tails, self.edges))

    # structure ---------------------------------------------------------------
    @property
    def n_vertices(self) -> int:
        return len(self.genera)

    @property
    def codim(self) -> int:
        return len(self.edges)

    def valence(self, v: int) -> int:
        """Number of tails and flags at ``v``."""
        return sum(1 for t in self.tails if t == v) + sum((a == v) + (b == v) for a, b in self.edges)

    def half_edges(self) -> List[Tuple[int, int]]:
        """Flags as ``(edge index, vertex)``, flag ``2e`` first."""
        out = []
        for e, (a, b) in enumerate(self.edges):
            out += [(e, a), (e, b)]
        return out

    def edge_half_edges(self, e: int) -> Tuple[int, int]:
        return 2 * e, 2 * e + 1

    def betti(self) -> int:
        return len(self.edges) - self.n_vertices + _components(self.n_vertices, self.edges)

    def genus(self) -> int:
        return sum(self.genera) + self.betti()

    def is_connected(self) -> bool:
        return _components(self.n_vertices, self.edges) == 1

    def is_stable(self) -> bool:
        return all(2 * g - 2 + self.valence(v) > 0 for v, g in enumerate(self.genera))

    def is_tree(self) -> bool:
        return self.betti() == 0

    # isomorphism -------------------------------------------------------------
    def key(self) -> tuple:
        return self._key

    def __eq__(self, other):
        return isinstance(other, StableGraph) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def automorphisms(self) -> int:
        """``|Aut G|`` acting on vertices and flags, fixing every tail."""
        return _automorphisms(self.genera, self.tails, self.edges)

    # operations --------------------------------------------------------------
    def contract(self, edge_set: Iterable[int]) -> "StableGraph":
        """Contract the given edges; contracted cycles raise vertex genus."""
        edge_set = set(edge_set)
        parent = list(range(self.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in edge_set:
            a, b = self.edges[e]
            parent[find(a)] = find(b)
        roots = sorted({find(v) for v in range(self.n_vertices)})
        new = {r: i for i, r in enumerate(roots)}
        genera = [0] * len(roots)
        for v, g in enumerate(self.genera):
            genera[new[find(v)]] += g
        # each contracted edge closing a cycle adds one to the genus
        for r in roots:
            members = [v for v in range(self.n_vertices) if find(v) == r]
            inner = sum(1 for e in edge_set if find(self.edges[e][0]) == r)
            genera[new[r]] += inner - (len(members) - 1)
        tails = tuple(new[find(v)] for v in self.tails)
        edges = tuple(
            (new[find(a)], new[find(b)]) for e, (a, b) in enumerate(self.edges) if e not in edge_set
        )
        return StableGraph(tuple(genera), tails, edges)

    def keep_edges(self, kept: Iterable[int]) -> "StableGraph":
        """Contract every edge not in ``kept``."""
        kept = set(kept)
        return self.contract(e for e in range(len(self.edges)) if e not in kept)

    def degenerations(self) -> List["StableGraph"]:
        """Stable graphs with one more edge that contract back onto this one."""
        out = []
        for v, g in enumerate(self.genera):
            if g >= 1:
                genera = list(self.genera)
                genera[v] -= 1
                out.append(StableGraph(tuple(genera), self.tails, self.edges + ((v, v),)))
            flags = [("t", i) for i, t in enumerate(self.tails) if t == v]
            for e, (a, b) in enumerate(self.edges):
                if a == v:
                    flags.append(("e", e, 0))
                if b == v:
                    flags.append(("e", e, 1))
            w = self.n_vertices
            for sides in product((0, 1), repeat=len(flags)):
                for g1 in range(g + 1):
                    g2 = g - g1
                    n1 = sides.count(0) + 1
                    n2 = sides.count(1) + 1
                    if 2 * g1 - 2 + n1 <= 0 or 2 * g2 - 2 + n2 <= 0:
                        continue
                    tails = list(self.tails)
                    edges = [list(e) for e in self.edges]
                    for flag, side in zip(flags, sides):
                        if side == 0:
                            continue
                        if flag[0] == "t":
                            tails[flag[1]] = w
                        else:
                            edges[flag[1]][flag[2]] = w
                    genera = list(self.genera) + [g2]
                    genera[v] = g1
                    edges.append([v, w])
                    out.append(StableGraph(tuple(genera), tuple(tails), tuple(map(tuple, edges))))
        return out

    def __repr__(self) -> str:
        return f"StableGraph(genera={self.genera}, tails={self.tails}, edges={self.edges})"


def _components(nv: int, edges) -> int:
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    return len({find(v) for v in range(nv)})


def _relabel(genera, tails, edges, perm):
    """Image under the vertex relabeling ``v ↦ perm[v]``."""
    nv = len(genera)
    g = [0] * nv
    for v in range(nv):
        g[perm[v]] = genera[v]
    t = tuple(perm[v] for v in tails)
    es = tuple(sorted(tuple(sorted((perm[a], perm[b]))) for a, b in edges))
    return (tuple(g), t, es)


@lru_cache(maxsize=None)
def _canonical_key(genera, tails, edges) -> tuple:
    nv = len(genera)
    return min(_relabel(genera, tails, edges, p) for p in permutations(range(nv)))


@lru_cache(maxsize=None)
def _automorphisms(genera, tails, edges) -> int:
    nv = len(genera)
    base = _relabel(genera, tails, edges, tuple(range(nv)))
    # flag permutations over a fixed vertex map: permute parallel edges, flip loops
    mult: Dict[tuple, int] = {}
    for a, b in base[2]:
        mult[(a, b)] = mult.get((a, b), 0) + 1
    flag_factor = 1
    for (a, b), m in mult.items():
        flag_factor *= factorial(m) * (2 ** m if a == b else 1)
    count = sum(1 for p in permutations(range(nv)) if _relabel(genera, tails, edges, p) == base)
    return count * flag_factor


@lru_cache(maxsize=None)
def _strata_by_codim(max_codim: int) -> Tuple[Tuple[StableGraph, ...], ...]:
    smooth = StableGraph((GENUS,), (0,) * TAILS, ())
    levels = [(smooth,)]
    for _ in range(max_codim):
        seen = {}
        for G in levels[-1]:
            for H in G.degenerations():
                if H.is_stable():
                    seen.setdefault(H, H)
        levels.append(tuple(sorted(seen.values(), key=StableGraph.key)))
    return tuple(levels)


def enumerate_strata(codim: int) -> List[StableGraph]:
    """All stable graphs with ``codim`` edges, one per isomorphism class."""
    if not 0 <= codim <= 3 * GENUS - 3 + TAILS:
        raise ValueError(f"codim must lie in 0..{3 * GENUS - 3 + TAILS}")
    return list(_strata_by_codim(codim)[codim])


def all_strata(max_codim: int = 3 * GENUS - 3 + TAILS) -> List[StableGraph]:
    out = []
    for level in _strata_by_codim(max_codim):
        out.extend(level)
    return out


def expressible_as_intersection(G: StableGraph) -> bool:
    """For two-edge graphs: do the two single-edge contractions differ?

    When they coincide the stratum is a component of a divisor's
    self-intersection rather than of two distinct divisors.
    """
    if G.codim != 2:
        raise ValueError("defined for codimension-2 graphs only")
    return G.keep_edges([0]) != G.keep_edges([1])
