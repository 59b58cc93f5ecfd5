"""Generalized Severi degrees of plane curves and the genus expansion of CP².

Keys use the multiplicity convention: a partition is stored as the vector
``(m_1, m_2, …)`` where ``m_k`` counts parts equal to ``k``.  In the
generating functions ``p^α = ∏ p_k^{α_k}``, ``α! = ∏ α_k!`` and ``q^β`` carries
no factorial:

    F = Σ z^D/D! · p^α/α! · q^β · N₀^{d,δ}(α,β),   D = C(d+1,2) − δ + ℓ(β).

With this convention the values ``N^{5,4}``, ``N^{5,5}`` and ``N^{6,9}`` come
out as integers matching the known counts.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from .series import TruncSeries, VarSpec, exp_trunc

__all__ = [
    "Partition",
    "SeveriKey",
    "SeveriTable",
    "ch_compute",
    "z_from_f",
    "gw_from_severi",
    "hbar_assembly",
    "f_series",
    "z_series",
]


@dataclass(frozen=True, order=True)
class Partition:
    """A partition with weakly decreasing parts."""

    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        if any(p <= 0 for p in self.parts):
            raise ValueError("parts must be positive")
        object.__setattr__(self, "parts", tuple(sorted(self.parts, reverse=True)))

    @classmethod
    def from_multiplicities(cls, mult: Iterable[int]) -> "Partition":
        parts = []
        for k, m in enumerate(mult, start=1):
            parts += [k] * m
        return cls(tuple(parts))

    def multiplicities(self, width: int) -> Tuple[int, ...]:
        out = [0] * width
        for p in self.parts:
            if p > width:
                raise ValueError(f"part {p} exceeds width {width}")
            out[p - 1] += 1
        return tuple(out)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def factorial(self) -> int:
        """``∏ α_i!`` over the parts."""
        r = 1
        for p in self.parts:
            r *= factorial(p)
        return r

    def __str__(self) -> str:
        return ".".join(map(str, self.parts))


@dataclass(frozen=True, order=True)
class SeveriKey:
    d: int
    delta: int
    alpha: Partition
    beta: Partition

    def __post_init__(self):
        if self.alpha.size + self.beta.size != self.d:
            raise ValueError("|alpha| + |beta| must equal d")
        if self.delta < 0:
            raise ValueError("delta must be non-negative")

    @property
    def dimension(self) -> int:
        return comb(self.d + 1, 2) - self.delta + self.beta.length


@dataclass
class SeveriTable:
    """Irreducible (``N0``) and, once computed, all-curves (``N``) Severi degrees."""

    d_max: int
    irreducible: Dict[SeveriKey, Fraction]
    all_curves: Optional[Dict[SeveriKey, Fraction]] = None

    def N0(self, d: int, delta: int, alpha=(), beta=None) -> Fraction:
        beta = (1,) * d if beta is None else beta
        return self.irreducible.get(SeveriKey(d, delta, Partition(tuple(alpha)), Partition(tuple(beta))), Fraction(0))

    def N(self, d: int, delta: int, alpha=(), beta=None) -> Fraction:
        if self.all_curves is None:
            raise ValueError("all-curves degrees not computed; call z_from_f")
        beta = (1,) * d if beta is None else beta
        return self.all_curves.get(SeveriKey(d, delta, Partition(tuple(alpha)), Partition(tuple(beta))), Fraction(0))


# -- internal key form --------------------------------------------------------

# (D, alpha multiplicities, beta multiplicities), widths = d_max
_Raw = Tuple[int, Tuple[int, ...], Tuple[int, ...]]


def _weight(v: Tuple[int, ...]) -> int:
    return sum((k + 1) * m for k, m in enumerate(v))


def _mult_factorial(v: Tuple[int, ...]) -> int:
    r = 1
    for m in v:
        r *= factorial(m)
    return r


def _vectors_of_weight(w: int, width: int) -> List[Tuple[int, ...]]:
    """Multiplicity vectors ``v`` with ``Σ k·v_k = w`` (parts ≤ width)."""
    out = []

    def rec(k, rest, acc):
        if k > width:
            if rest == 0:
                out.append(tuple(acc))
            return
        for m in range(rest // k + 1):
            rec(k + 1, rest - m * k, acc + [m])

    rec(1, w, [])
    return out


def _to_key(d: int, raw: _Raw) -> SeveriKey:
    D, a, b = raw
    ell = sum(b)
    delta = comb(d + 1, 2) + ell - D
    return SeveriKey(d, delta, Partition.from_multiplicities(a), Partition.from_multiplicities(b))


def _variables(width: int) -> List[VarSpec]:
    vs = [VarSpec("w", 0), VarSpec("z", 0)]
    vs += [VarSpec(f"p{k}", 0) for k in range(1, width + 1)]
    vs += [VarSpec(f"q{k}", 0) for k in range(1, width + 1)]
    vs.append(VarSpec("t", 0, laurent=True))
    return vs


def _series_from_coeffs(coeffs: Mapping[Tuple[int, _Raw], Fraction], width: int, w_cap: int) -> TruncSeries:
    """``Σ c·w^d z^D p^α q^β``; ``w`` marks the curve degree."""
    vs = _variables(width)
    terms = {}
    for (d, (D, a, b)), c in coeffs.items():
        terms[(d, D) + a + b + (0,)] = c
    caps = [w_cap] + [None] * (len(vs) - 1)
    return TruncSeries(vs, terms, caps)


def _shift_q(F: TruncSeries, width: int) -> TruncSeries:
    """``F|_{q_k → q_k + k t^k} − F``."""
    q0 = 2 + width
    t_idx = 2 + 2 * width
    out: Dict[tuple, Fraction] = {}
    for e, c in F.items():
        beta = e[q0 : q0 + width]
        for js in _bounded(beta):
            if not any(js):
                continue
            coef = Fraction(c)
            s = 0
            for k, (bk, jk) in enumerate(zip(beta, js), start=1):
                coef *= comb(bk, jk) * k ** jk
                s += k * jk
            ne = list(e)
            for i, jk in enumerate(js):
                ne[q0 + i] -= jk
            ne[t_idx] += s
            ne = tuple(ne)
            out[ne] = out.get(ne, 0) + coef
    return TruncSeries(F.variables, out, F.caps)


def _bounded(bounds: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
    if not bounds:
        yield ()
        return
    for j in range(bounds[0] + 1):
        for rest in _bounded(bounds[1:]):
            yield (j,) + rest


def ch_compute(d_max: int) -> SeveriTable:
    """Irreducible Severi degrees ``N₀^{d,δ}(α,β)`` for ``d ≤ d_max``.

    Uses ``∂F/∂z = Σ k q_k ∂F/∂p_k + Res_t exp(Σ t^{-k}p_k + F(q_k+kt^k) − F)``
    coefficientwise.  At curve degree ``d`` the residue only involves ``F`` of
    lower degree, and the first term lowers ``D``, so coefficients are filled
    by increasing ``D``.
    """
    if d_max < 1:
        raise ValueError("d_max must be at least 1")
    width = d_max
    coeffs: Dict[Tuple[int, _Raw], Fraction] = {}  # c = N0/(D! α!)
    for d in range(1, d_max + 1):
        # residue contributions R[(D-1, α, β)] at degree d
        R: Dict[_Raw, Fraction] = {}
        lower = {k: v for k, v in coeffs.items() if k[0] < d}
        if lower:
            F = _series_from_coeffs(lower, width, d - 1)
            E = exp_trunc(_shift_q(F, width))
        else:
            E = TruncSeries.one(_variables(width), [0] + [None] * (3 + 2 * width - 1))
        t_idx = 2 + 2 * width
        for e, c in E.items():
            if e[0] != d - 1:
                continue
            s = e[t_idx]
            a = e[2 : 2 + width]
            b = e[2 + width : 2 + 2 * width]
            for gamma in _vectors_of_weight(s + 1, width):
                na = tuple(x + y for x, y in zip(a, gamma))
                key = (e[1], na, b)
                R[key] = R.get(key, 0) + c / _mult_factorial(gamma)
        pairs = []
        for wa in range(d + 1):
            for a in _vectors_of_weight(wa, width):
                for b in _vectors_of_weight(d - wa, width):
                    pairs.append((a, b))
        D_max = comb(d + 1, 2) + d
        level: Dict[_Raw, Fraction] = {}
        for D in range(1, D_max + 1):
            for a, b in pairs:
                total = R.get((D - 1, a, b), Fraction(0))
                for k in range(width):
                    if b[k] == 0:
                        continue
                    a2 = a[:k] + (a[k] + 1,) + a[k + 1 :]
                    b2 = b[:k] + (b[k] - 1,) + b[k + 1 :]
                    prev = level.get((D - 1, a2, b2))
                    if prev:
                        total += (k + 1) * (a[k] + 1) * prev
                if total:
                    level[(D, a, b)] = total / D
        for raw, c in level.items():
            coeffs[(d, raw)] = c
    table = {}
    for (d, raw), c in coeffs.items():
        D, a, b = raw
        table[_to_key(d, raw)] = c * factorial(D) * _mult_factorial(a)
    return SeveriTable(d_max, table)


def _raw_items(table: Mapping[SeveriKey, Fraction], width: int):
    for key, v in table.items():
        yield key, (key.dimension, key.alpha.multiplicities(width), key.beta.multiplicities(width)), v


def z_from_f(table: SeveriTable) -> SeveriTable:
    """All-curves degrees ``N^{d,δ}(α,β)`` as unions of irreducible pieces.

    A union of pieces ``(d_i, δ_i, α_i, β_i)`` has ``δ = Σδ_i + Σ_{i<j} d_i d_j``
    and weight ``D!/∏D_i! · α!/∏α_i! / ∏m_j!`` (``m_j``: multiplicity of each
    repeated piece).
    """
    width = table.d_max
    pieces = sorted(
        ((key, raw, v) for key, raw, v in _raw_items(table.irreducible, width) if v),
        key=lambda x: x[0],
    )
    # state: (d, Σδ_i, Σd_i², α, β, D) -> Σ ∏ (N0_i/(D_i! α_i!))^{m}/m!
    states: Dict[tuple, Fraction] = {(0, 0, 0, (0,) * width, (0,) * width, 0): Fraction(1)}
    for key, (D_i, a_i, b_i), v in pieces:
        unit = Fraction(v) / (factorial(D_i) * _mult_factorial(a_i))
        new_states = dict(states)
        for (d, sd, sq, a, b, D), w in states.items():
            m = 1
            power = unit
            while d + m * key.d <= width:
                st = (
                    d + m * key.d,
                    sd + m * key.delta,
                    sq + m * key.d ** 2,
                    tuple(x + m * y for x, y in zip(a, a_i)),
                    tuple(x + m * y for x, y in zip(b, b_i)),
                    D + m * D_i,
                )
                new_states[st] = new_states.get(st, 0) + w * power / factorial(m)
                m += 1
                power *= unit
        states = new_states
    out: Dict[SeveriKey, Fraction] = {}
    for (d, sd, sq, a, b, D), w in states.items():
        if d == 0 or not w:
            continue
        delta = sd + (d * d - sq) // 2
        key = SeveriKey(d, delta, Partition.from_multiplicities(a), Partition.from_multiplicities(b))
        if key.dimension != D:
            raise AssertionError("dimension bookkeeping failed")
        out[key] = out.get(key, 0) + w * factorial(D) * _mult_factorial(a)
    return SeveriTable(table.d_max, dict(table.irreducible), out)


def f_series(table: SeveriTable) -> TruncSeries:
    """``F`` as a series with degree marker ``w`` capped at ``d_max``."""
    width = table.d_max
    coeffs = {}
    for key, raw, v in _raw_items(table.irreducible, width):
        D, a, _ = raw
        coeffs[(key.d, raw)] = Fraction(v) / (factorial(D) * _mult_factorial(a))
    return _series_from_coeffs(coeffs, width, width)


def z_series(table: SeveriTable) -> TruncSeries:
    """``Z − 1`` built from the all-curves table, plus the constant 1."""
    if table.all_curves is None:
        raise ValueError("all-curves degrees not computed")
    width = table.d_max
    coeffs = {}
    for key, raw, v in _raw_items(table.all_curves, width):
        D, a, _ = raw
        coeffs[(key.d, raw)] = Fraction(v) / (factorial(D) * _mult_factorial(a))
    return _series_from_coeffs(coeffs, width, width) + 1


def gw_from_severi(d: int, g: int, table: SeveriTable) -> Fraction:
    """Genus-``g`` degree-``d`` invariant of CP² as ``N₀^{d,δ}(∅,1^d)``, ``δ = C(d−1,2) − g``."""
    if d < 1 or g < 0:
        raise ValueError("need d >= 1 and g >= 0")
    delta = comb(d - 1, 2) - g
    if delta < 0:
        return Fraction(0)  # genus above the arithmetic genus
    if d > table.d_max:
        raise ValueError(f"table only covers d <= {table.d_max}")
    return table.N0(d, delta)


def hbar_assembly(table: SeveriTable, q_cap: int, t2_cap: Optional[int] = None) -> Dict[int, TruncSeries]:
    """``F_g(CP²)`` from ``F`` via ``q_1 = ħ^{-3}x``, ``q_{k>1} = 0``, ``p = 0``, ``z = ħt_2``.

    The power of ``ħ`` is ``D − 3d = g − 1``.  Classical terms are added back:
    ``½(t_0²t_2 + t_0t_1²)`` in genus 0 and ``−t_1/8`` in genus 1.
    """
    vs = [VarSpec("t0", -2), VarSpec("t1", 0), VarSpec("t2", 2), VarSpec("x", -6)]
    caps = [None, None, t2_cap, q_cap]
    by_genus: Dict[int, Dict[tuple, Fraction]] = {}
    for key, v in table.irreducible.items():
        if key.alpha.parts or key.beta.parts != (1,) * key.d or key.d > q_cap:
            continue
        D = key.dimension
        g = D - 3 * key.d + 1
        e = (0, 0, D, key.d)
        by_genus.setdefault(g, {})[e] = Fraction(v, factorial(D))
    by_genus.setdefault(0, {})
    by_genus[0][(2, 0, 1, 0)] = Fraction(1, 2)
    by_genus[0][(1, 2, 0, 0)] = Fraction(1, 2)
    by_genus.setdefault(1, {})[(0, 1, 0, 0)] = Fraction(-1, 8)
    return {g: TruncSeries(vs, terms, caps) for g, terms in sorted(by_genus.items())}
