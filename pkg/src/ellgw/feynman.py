"""Leg series, the Laplacian and Γ operators, and stratum potentials.

A leg series lives over ``s_0..s_k`` (external legs), the non-divisor
coordinates ``t_2..t_k`` and ``x = q·e^{t_1}``.  The coordinates ``t_0`` and
``t_1`` are set to zero: every operator here differentiates only in ``s``,
and ``x`` already carries the full ``t_1``-dependence of quantum terms.

``f_{g,n}`` is the part of ``F_g(t+s)`` of degree ``n`` in ``s``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import factorial
from typing import Dict, Optional, Sequence, Tuple

from .genus0 import FrobeniusData, Potential
from .series import TruncSeries, VarSpec

__all__ = [
    "leg_variables",
    "LegContext",
    "laplacian",
    "gamma_n",
    "gamma_closed_form",
    "gamma",
    "RELATION_TERMS",
    "relation_residual",
    "verify_relation",
    "proof_table_potential",
    "graph_potential",
    "stratum_potential",
    "CLASS_NAMES",
    "recursion_stream",
    "verify_report",
]

CLASS_NAMES = ("d22", "d23", "d24", "d34", "d02", "d03", "d04", "dalpha", "dbeta")


def leg_variables(fd: FrobeniusData) -> list:
    vs = [VarSpec(f"s{a}", 2 * fd.degrees[a] - 2) for a in range(fd.rank)]
    vs += [VarSpec(f"t{a}", 2 * fd.degrees[a] - 2) for a in fd.non_divisor]
    vs.append(VarSpec("x", -2 * fd.c1))
    return vs


def _leg_caps(fd: FrobeniusData, q_cap: Optional[int]) -> list:
    return [None] * (fd.rank + len(fd.non_divisor)) + [q_cap]


def shifted_part(pot: Potential, n: int, q_cap: Optional[int]) -> TruncSeries:
    """``f_{g,n}``: degree-``n`` part in ``s`` of ``F_g(t+s)`` at ``t_0=t_1=0``."""
    fd = pot.fd
    k = fd.rank
    nd = fd.non_divisor
    vs = leg_variables(fd)
    terms: Dict[tuple, Fraction] = {}

    def put(s_exp, t_exp, beta, c):
        e = tuple(s_exp) + tuple(t_exp) + (beta,)
        terms[e] = terms.get(e, 0) + c

    for e, c in pot.classical.items():
        # t_0, t_1 -> s_0, s_1 ; t_a -> t_a + s_a for a >= 2
        head = e[0] + e[1]
        rest = n - head
        if rest < 0:
            continue
        for js in _splits([e[a] for a in nd], rest):
            coef = Fraction(c)
            for a, j in zip(nd, js):
                coef *= _binom(e[a], j)
            s_exp = [e[0], e[1]] + list(js)
            t_exp = [e[a] - j for a, j in zip(nd, js)]
            put(s_exp, t_exp, 0, coef)
    for (beta, A), c in pot.quantum.items():
        if q_cap is not None and beta > q_cap:
            continue
        # N x^β e^{β s_1} ∏ (t_a + s_a)^{A_a} / A_a!
        for m in range(n + 1):
            rest = n - m
            for js in _splits(list(A), rest):
                coef = Fraction(c) * Fraction(beta ** m, factorial(m))
                for Aa, j in zip(A, js):
                    coef /= factorial(j) * factorial(Aa - j)
                s_exp = [0, m] + list(js)
                t_exp = [Aa - j for Aa, j in zip(A, js)]
                put(s_exp, t_exp, beta, coef)
    return TruncSeries(vs, terms, _leg_caps(fd, q_cap))


def _splits(bounds: Sequence[int], total: int):
    """Vectors ``j`` with ``0 ≤ j_i ≤ bounds_i`` summing to ``total``."""
    if not bounds:
        if total == 0:
            yield ()
        return
    for j in range(min(bounds[0], total) + 1):
        for tail in _splits(bounds[1:], total - j):
            yield (j,) + tail


def _binom(m: int, k: int) -> int:
    from math import comb

    return comb(m, k) if 0 <= k <= m else 0


class LegContext:
    """Cached ``f_{g,n}`` for a pair of potentials ``(F_0, F_1)`` up to ``q_cap``."""

    def __init__(self, F0: Potential, F1: Potential, q_cap: Optional[int]):
        if F0.fd != F1.fd:
            raise ValueError("potentials belong to different varieties")
        self.fd = F0.fd
        self.F = {0: F0, 1: F1}
        self.q_cap = q_cap
        self._cache: Dict[Tuple[int, int], TruncSeries] = {}

    @property
    def variables(self) -> list:
        return leg_variables(self.fd)

    def f(self, g: int, n: int) -> TruncSeries:
        key = (g, n)
        if key not in self._cache:
            if g not in self.F:
                raise KeyError(f"no genus-{g} potential available")
            self._cache[key] = shifted_part(self.F[g], n, self.q_cap)
        return self._cache[key]

    def zero(self) -> TruncSeries:
        return TruncSeries.zero(self.variables, _leg_caps(self.fd, self.q_cap))


# -- Laplacian and Γ ---------------------------------------------------------

def _s_names(fd: FrobeniusData) -> list:
    return [f"s{a}" for a in range(fd.rank)]


def laplacian(f: TruncSeries, fd: FrobeniusData) -> TruncSeries:
    """``½ Σ η^{ab} ∂²f/∂s_a∂s_b``."""
    inv = fd.pairing_inverse
    s = _s_names(fd)
    out = TruncSeries.zero(f.variables, f.caps)
    for a in range(fd.rank):
        da = f.derive(s[a])
        if da.is_zero():
            continue
        for b in range(fd.rank):
            if inv[a][b]:
                out = out + da.derive(s[b]).scale(inv[a][b] / 2)
    return out


def gamma_n(n: int, f: TruncSeries, g: TruncSeries, fd: FrobeniusData) -> TruncSeries:
    """``Γ_n`` by its recursive definition, ``Γ_0(f,g) = fg``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return f * g
    prev = gamma_n(n - 1, f, g, fd)
    term = (
        laplacian(prev, fd)
        - gamma_n(n - 1, laplacian(f, fd), g, fd)
        - gamma_n(n - 1, f, laplacian(g, fd), fd)
    )
    return term.scale(Fraction(1, n))


def gamma(f: TruncSeries, g: TruncSeries, fd: FrobeniusData) -> TruncSeries:
    """``Γ = Γ_1``: contract one leg of ``f`` with one leg of ``g``.

    Uses the closed form ``Σ η^{ab} ∂_a f ∂_b g``, which the tests check
    against the recursive definition.
    """
    return gamma_closed_form(1, f, g, fd)


def gamma_closed_form(n: int, f: TruncSeries, g: TruncSeries, fd: FrobeniusData) -> TruncSeries:
    """``(1/n!) Σ ∏η^{a_ib_i} ∂_{a_1..a_n} f · ∂_{b_1..b_n} g``."""
    inv = fd.pairing_inverse
    s = _s_names(fd)
    pairs = [(a, b) for a in range(fd.rank) for b in range(fd.rank) if inv[a][b]]
    out = TruncSeries.zero(f.variables, tuple(map(_min, f.caps, g.caps)))
    df_cache: dict = {(): f}
    dg_cache: dict = {(): g}

    def d(cache, base_key):
        key = tuple(sorted(base_key))
        if key not in cache:
            parent = d(cache, key[:-1])
            cache[key] = parent.derive(s[key[-1]])
        return cache[key]

    for choice in product(pairs, repeat=n):
        coef = Fraction(1)
        for a, b in choice:
            coef *= inv[a][b]
        fa = d(df_cache, [a for a, _ in choice])
        if fa.is_zero():
            continue
        gb = d(dg_cache, [b for _, b in choice])
        if gb.is_zero():
            continue
        out = out + (fa * gb).scale(coef)
    return out.scale(Fraction(1, factorial(n)))


def _min(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


# -- the relation -----------------------------------------------------------

def _G(ctx: LegContext):
    fd = ctx.fd
    return (lambda a, b: gamma(a, b, fd)), (lambda f: laplacian(f, fd))


def proof_table_potential(name: str, ctx: LegContext) -> TruncSeries:
    """Stratum potential of a named class via its closed Γ-expression."""
    G, D = _G(ctx)
    f = ctx.f
    fd = ctx.fd
    if name == "d22":
        return G(G(f(1, 2), f(0, 3)), f(0, 3)).scale(Fraction(1, 2)) - G(
            f(1, 2), G(f(0, 3), f(0, 3))
        ).scale(Fraction(1, 4))
    if name == "d23":
        return G(f(1, 2), G(f(0, 3), f(0, 3))).scale(Fraction(1, 2))
    if name == "d24":
        return G(f(0, 3), G(f(1, 1), f(0, 4)))
    if name == "d34":
        return G(f(0, 4), G(f(1, 1), f(0, 3)))
    if name == "d02":
        return G(f(0, 3), D(f(0, 5)))
    if name == "d03":
        return G(f(0, 4), D(f(0, 4)))
    if name == "d04":
        return G(f(0, 5), D(f(0, 3)))
    if name == "dalpha":
        return gamma_closed_form(2, f(0, 3), f(0, 5), fd)
    if name == "dbeta":
        return gamma_closed_form(2, f(0, 4), f(0, 4), fd).scale(Fraction(1, 2))
    raise KeyError(f"unknown class {name!r}")


RELATION_TERMS: Tuple[Tuple[int, str], ...] = (
    (6, "G(G1(f12,f03),f03)"),
    (-5, "G(f12,G(f03,f03))"),
    (-2, "G(f03,G(f11,f04))"),
    (6, "G(f04,G(f11,f03))"),
    (1, "G(f04,Df04)"),
    (1, "G(f05,Df03)"),
    (-1, "G2(f04,f04)"),
)


def _relation_summand(label: str, ctx: LegContext) -> TruncSeries:
    G, D = _G(ctx)
    f = ctx.f
    if label == "G(G1(f12,f03),f03)":
        return G(G(f(1, 2), f(0, 3)), f(0, 3))
    if label == "G(f12,G(f03,f03))":
        return G(f(1, 2), G(f(0, 3), f(0, 3)))
    if label == "G(f03,G(f11,f04))":
        return G(f(0, 3), G(f(1, 1), f(0, 4)))
    if label == "G(f04,G(f11,f03))":
        return G(f(0, 4), G(f(1, 1), f(0, 3)))
    if label == "G(f04,Df04)":
        return G(f(0, 4), D(f(0, 4)))
    if label == "G(f05,Df03)":
        return G(f(0, 5), D(f(0, 3)))
    if label == "G2(f04,f04)":
        return gamma_closed_form(2, f(0, 4), f(0, 4), ctx.fd)
    raise KeyError(label)


def relation_residual(ctx: LegContext) -> TruncSeries:
    """Left side of the genus-one relation among Γ-expressions; zero when it holds."""
    total = ctx.zero()
    for coef, label in RELATION_TERMS:
        total = total + _relation_summand(label, ctx).scale(coef)
    return total


def verify_relation(F0: Potential, F1: Potential, q_cap: Optional[int]) -> TruncSeries:
    """Residual of the relation for the given potentials, certified up to ``x^{q_cap}``."""
    return relation_residual(LegContext(F0, F1, q_cap))


# -- graph sums ----------------------------------------------------------------

def graph_potential(graph, ctx: LegContext) -> TruncSeries:
    """``F(G)`` evaluated on ``S^{⊗4}`` and divided by ``4!``.

    Each vertex ``v`` with ``k`` tails and ``m`` half-edges contributes
    ``k!·∂_{s_{b_1}}…∂_{s_{b_m}} f_{g(v), k+m}``; half-edges are summed over
    basis labels with ``η^{ab}`` per edge, and the result is divided by
    ``|Aut G|``.
    """
    fd = ctx.fd
    inv = fd.pairing_inverse
    s = _s_names(fd)
    halfedges = graph.half_edges()  # list of (edge index, vertex)
    nv = len(graph.genera)
    tails_at = [0] * nv
    for v in graph.tails:
        tails_at[v] += 1
    he_at: Dict[int, list] = {v: [] for v in range(nv)}
    for idx, (e, v) in enumerate(halfedges):
        he_at[v].append(idx)
    pairs = [(a, b) for a in range(fd.rank) for b in range(fd.rank) if inv[a][b]]
    total = ctx.zero()
    base = {}
    for v in range(nv):
        k = tails_at[v]
        m = len(he_at[v])
        base[v] = ctx.f(graph.genera[v], k + m).scale(factorial(k))
    for choice in product(pairs, repeat=len(graph.edges)):
        coef = Fraction(1)
        label = [None] * len(halfedges)
        for e, (a, b) in enumerate(choice):
            coef *= inv[a][b]
            h1, h2 = graph.edge_half_edges(e)
            label[h1] = a
            label[h2] = b
        term = None
        for v in range(nv):
            piece = base[v]
            for h in he_at[v]:
                piece = piece.derive(s[label[h]])
                if piece.is_zero():
                    break
            if piece.is_zero():
                term = None
                break
            term = piece if term is None else term * piece
        if term is not None:
            total = total + term.scale(coef)
    return total.scale(Fraction(1, graph.automorphisms() * 24))


def stratum_potential(cycle, ctx: LegContext) -> TruncSeries:
    """``Σ coeff·F(G)`` over the graphs of a stratum cycle."""
    total = ctx.zero()
    for graph, coeff in cycle.terms:
        total = total + graph_potential(graph, ctx).scale(coeff)
    return total


def recursion_stream(F0: Potential, F1: Potential, n_max: int) -> Dict[int, Fraction]:
    """CP² only: ``4·(3n−2)!`` times the ``s_1⁴ x^n t_2^{3n−2}`` coefficient of the residual.

    Evaluating the relation on four copies of the hyperplane class isolates
    this coefficient; with this normalization it equals
    ``genus1.elliptic_recursion_defect(n, …)`` for every ``n``, as an affine function of
    the genus-one inputs.
    """
    if F0.fd.dim != 2:
        raise ValueError("the stream is defined for the projective plane")
    R = verify_relation(F0, F1, n_max)
    return {
        n: 4 * factorial(3 * n - 2) * R.coefficient({"s1": 4, "x": n, "t2": 3 * n - 2})
        for n in range(1, n_max + 1)
    }


def verify_report(F0: Potential, F1: Potential, q_cap: int) -> list:
    """Per ``x``-order: ``(order, monomials checked, nonzero residual monomials)``.

    A monomial counts as checked when it occurs in at least one summand of
    the relation.
    """
    ctx = LegContext(F0, F1, q_cap)
    xi = ctx.zero().index("x")
    checked: Dict[int, set] = {k: set() for k in range(q_cap + 1)}
    total = ctx.zero()
    for coef, label in RELATION_TERMS:
        piece = _relation_summand(label, ctx)
        for e, _ in piece.items():
            checked[e[xi]].add(e)
        total = total + piece.scale(coef)
    bad: Dict[int, int] = {k: 0 for k in range(q_cap + 1)}
    for e, _ in total.items():
        bad[e[xi]] += 1
    return [(k, len(checked[k]), bad[k]) for k in range(q_cap + 1)]
