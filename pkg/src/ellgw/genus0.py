"""Genus-zero Gromov-Witten potentials of projective spaces.

Potentials are stored in the divisor representation: quantum terms depend on
``q`` and ``t_1`` only through ``x = q·e^{t_1}``, so ``∂/∂t_1`` acts on them as
``β`` (the curve degree) and no truncation in ``t_1`` is ever needed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, factorial
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .linalg import Inconsistent, Underdetermined, solve_sparse
from .series import TruncSeries, VarSpec

__all__ = [
    "FrobeniusData",
    "projective_space",
    "elliptic_curve_even",
    "Potential",
    "km_cp2",
    "wdvv_solve",
    "wdvv_residual",
    "cp1_potential",
    "cp2_potential",
    "cp3_potential",
    "cp3_rational_table",
    "WDVVError",
]

Key = Tuple[int, Tuple[int, ...]]


class WDVVError(ValueError):
    """The WDVV system is inconsistent or leaves free unknowns."""


def _invert(mat: Sequence[Sequence[Fraction]]) -> list:
    n = len(mat)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for c in range(n):
        p = next((r for r in range(c, n) if aug[r][c]), None)
        if p is None:
            raise ValueError("pairing is degenerate")
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


@dataclass(frozen=True)
class FrobeniusData:
    """Even cohomology of a variety with one curve-class generator.

    ``degrees[a]`` is the complex degree of the basis class ``γ_a``; the class
    ``γ_1`` is the divisor dual to ``t_1``.  ``triple`` lists classical triple
    intersections ``∫ γ_a γ_b γ_c``.
    """

    name: str
    dim: int
    degrees: Tuple[int, ...]
    pairing: Tuple[Tuple[Fraction, ...], ...]
    c1: int
    chern_omega: int  # ∫ c_{dim-1}(V) ∪ ω
    triple: Mapping[Tuple[int, int, int], Fraction] = field(default_factory=dict)
    pairing_inverse: Tuple[Tuple[Fraction, ...], ...] = field(init=False)

    def __post_init__(self):
        inv = _invert(self.pairing)
        object.__setattr__(self, "pairing_inverse", tuple(tuple(r) for r in inv))

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def bcov_constant(self) -> Fraction:
        """Coefficient of ``t_1`` in ``F_1``: ``-(1/24)∫ c_{dim-1} ∪ ω``."""
        return Fraction(-self.chern_omega, 24)

    @property
    def non_divisor(self) -> Tuple[int, ...]:
        """Indices ``a ≥ 2``: classes whose variables appear explicitly in quantum terms."""
        return tuple(range(2, self.rank))

    def triple_number(self, a: int, b: int, c: int) -> Fraction:
        return self.triple.get(tuple(sorted((a, b, c))), Fraction(0))

    def insertion_weight(self, a: int) -> int:
        """Dimension drop from one insertion of ``γ_a``: ``deg γ_a − 1``."""
        return self.degrees[a] - 1

    def virtual_dim_target(self, beta: int) -> int:
        """Σ (deg γ_a − 1) over insertions must equal ``c1·β + dim − 3``."""
        return self.c1 * beta + self.dim - 3

    def quantum_keys(self, beta: int) -> list:
        """Exponent tuples over ``t_2..t_k`` allowed at curve degree ``beta`` (genus 0)."""
        return _compositions(
            [self.insertion_weight(a) for a in self.non_divisor],
            self.virtual_dim_target(beta),
        )

    def variables(self) -> list:
        vs = [VarSpec(f"t{a}", 2 * self.degrees[a] - 2) for a in range(self.rank)]
        vs.append(VarSpec("x", -2 * self.c1))
        return vs


def _compositions(weights: Sequence[int], target: int) -> list:
    """All non-negative integer vectors ``A`` with ``Σ w_i A_i = target``."""
    if not weights:
        return [()] if target == 0 else []
    out = []
    w, rest = weights[0], weights[1:]
    if w <= 0:
        raise ValueError("non-divisor classes must have positive weight")
    for k in range(target // w + 1):
        for tail in _compositions(rest, target - k * w):
            out.append((k,) + tail)
    return out


def projective_space(n: int) -> FrobeniusData:
    """``CP^n``: ``γ_a = ω^a``, antidiagonal pairing."""
    pairing = tuple(
        tuple(Fraction(int(a + b == n)) for b in range(n + 1)) for a in range(n + 1)
    )
    triple = {}
    for a in range(n + 1):
        for b in range(a, n + 1):
            c = n - a - b
            if b <= c <= n:
                triple[(a, b, c)] = Fraction(1)
    return FrobeniusData(
        name=f"CP{n}",
        dim=n,
        degrees=tuple(range(n + 1)),
        pairing=pairing,
        c1=n + 1,
        chern_omega=comb(n + 1, 2) if n >= 1 else 0,
        triple=triple,
    )


def elliptic_curve_even() -> FrobeniusData:
    """Even part of the cohomology of an elliptic curve (odd classes dropped)."""
    base = projective_space(1)
    return FrobeniusData(
        name="E",
        dim=1,
        degrees=(0, 1),
        pairing=base.pairing,
        c1=0,
        chern_omega=1,
        triple=dict(base.triple),
    )


@dataclass(frozen=True)
class Potential:
    """A genus-g potential: classical polynomial plus quantum coefficients.

    ``classical`` maps exponent tuples over ``t_0..t_k`` to coefficients.
    ``quantum[(β, A)] = N`` stands for the term ``N·x^β·∏ t_a^{A_a}/A_a!``
    with ``A`` indexed by the non-divisor classes ``a ≥ 2``.
    """

    fd: FrobeniusData
    genus: int
    classical: Mapping[Tuple[int, ...], Fraction]
    quantum: Mapping[Key, Fraction]

    def max_degree(self) -> int:
        return max((b for b, _ in self.quantum), default=0)

    def coefficient(self, beta: int, exps: Tuple[int, ...]) -> Fraction:
        return self.quantum.get((beta, tuple(exps)), Fraction(0))

    def to_series(self, q_cap: Optional[int] = None) -> TruncSeries:
        """Series over ``t_0..t_k, x``; exact in every ``t``, capped in ``x``."""
        fd = self.fd
        vs = fd.variables()
        terms: Dict[tuple, Fraction] = {}
        for e, c in self.classical.items():
            terms[tuple(e) + (0,)] = terms.get(tuple(e) + (0,), 0) + c
        for (beta, exps), c in self.quantum.items():
            if q_cap is not None and beta > q_cap:
                continue
            denom = 1
            for k in exps:
                denom *= factorial(k)
            e = (0, 0) + tuple(exps) + (beta,)
            terms[e] = terms.get(e, 0) + Fraction(c) / denom
        caps = [None] * (len(vs) - 1) + [q_cap]
        return TruncSeries(vs, terms, caps)

    def restricted(self, q_cap: int) -> "Potential":
        return Potential(
            self.fd,
            self.genus,
            self.classical,
            {k: v for k, v in self.quantum.items() if k[0] <= q_cap},
        )


def classical_cubic(fd: FrobeniusData) -> Dict[tuple, Fraction]:
    """``(1/6) Σ ∫γ_aγ_bγ_c t_a t_b t_c`` as an exponent map."""
    out: Dict[tuple, Fraction] = {}
    for a, b, c in product(range(fd.rank), repeat=3):
        v = fd.triple_number(a, b, c)
        if not v:
            continue
        e = [0] * fd.rank
        for i in (a, b, c):
            e[i] += 1
        e = tuple(e)
        out[e] = out.get(e, 0) + v / 6
    return {e: v for e, v in out.items() if v}


# -- Kontsevich-Manin recursion -------------------------------------------

def km_cp2(n_max: int) -> Dict[int, Fraction]:
    """Rational plane curve counts ``N⁽⁰⁾_n`` for ``1 ≤ n ≤ n_max``."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    N: Dict[int, int] = {1: 1}
    for n in range(2, n_max + 1):
        total = 0
        for i in range(1, n):
            j = n - i
            total += (
                _binom(3 * n - 4, 3 * i - 2) * i * i * j * j
                - i ** 3 * j * _binom(3 * n - 4, 3 * i - 1)
            ) * N[i] * N[j]
        N[n] = total
    return {n: Fraction(v) for n, v in N.items()}


def _binom(m: int, k: int) -> int:
    return comb(m, k) if 0 <= k <= m else 0


# -- potentials from tables ----------------------------------------------

def cp1_potential() -> Potential:
    fd = projective_space(1)
    return Potential(fd, 0, classical_cubic(fd), {(1, ()): Fraction(1)})


def cp2_potential(table: Mapping[int, Fraction]) -> Potential:
    fd = projective_space(2)
    quantum = {(n, (3 * n - 1,)): Fraction(v) for n, v in table.items()}
    return Potential(fd, 0, classical_cubic(fd), quantum)


def cp3_potential(table: Mapping[Tuple[int, int], Fraction]) -> Potential:
    fd = projective_space(3)
    quantum = {((a + 2 * b) // 4, (a, b)): Fraction(v) for (a, b), v in table.items()}
    return Potential(fd, 0, classical_cubic(fd), quantum)


# -- WDVV ------------------------------------------------------------------

def _divided_binom(M1: tuple, M2: tuple) -> int:
    r = 1
    for a, b in zip(M1, M2):
        r *= comb(a + b, a)
    return r


def _third(fd: FrobeniusData, quantum: Mapping[Key, Fraction], beta: int, idx) -> Dict[tuple, Fraction]:
    """Numeric third derivative at curve degree ``beta`` (``beta=0``: classical)."""
    nd_len = len(fd.non_divisor)
    if beta == 0:
        v = fd.triple_number(*idx)
        return {(0,) * nd_len: v} if v else {}
    if 0 in idx:
        return {}
    shift = [0] * nd_len
    mult = 1
    for a in idx:
        if a == 1:
            mult *= beta
        else:
            shift[fd.non_divisor.index(a)] += 1
    out = {}
    for A in fd.quantum_keys(beta):
        c = quantum.get((beta, A))
        if not c:
            continue
        M = tuple(x - s for x, s in zip(A, shift))
        if min(M, default=0) < 0:
            continue
        out[M] = c * mult
    return out


def _third_symbolic(fd: FrobeniusData, beta: int, idx) -> Dict[tuple, Tuple[Key, int]]:
    """Top-degree third derivative as ``M -> (unknown key, factor)``."""
    if 0 in idx:
        return {}
    nd_len = len(fd.non_divisor)
    shift = [0] * nd_len
    mult = 1
    for a in idx:
        if a == 1:
            mult *= beta
        else:
            shift[fd.non_divisor.index(a)] += 1
    out = {}
    for A in fd.quantum_keys(beta):
        M = tuple(x - s for x, s in zip(A, shift))
        if min(M, default=0) < 0:
            continue
        out[M] = ((beta, A), mult)
    return out


def _quadruples(k: int):
    """Index quadruples ``(a,b,c,d)`` with a non-trivial WDVV identity, in lexicographic order."""
    for a, b, c, d in product(range(k), repeat=4):
        # the identity for (a,b,c,d) is antisymmetric under b<->c
        if b < c:
            yield a, b, c, d


def _residual_level(fd: FrobeniusData, quantum: Mapping[Key, Fraction], beta: int, abcd, symbolic: bool):
    """Coefficients of ``x^β t^M/M!`` in the WDVV residual for one quadruple.

    With ``symbolic=True`` the top-degree quantum coefficients are treated as
    unknowns and each value is a linear form ``{unknown: coeff, 1: const}``.
    """
    a, b, c, d = abcd
    inv = fd.pairing_inverse
    k = fd.rank
    out: Dict[tuple, Dict] = {}

    def acc(M, key, val):
        if not val:
            return
        form = out.setdefault(M, {})
        form[key] = form.get(key, 0) + val

    for sign, (i1, i2, j1, j2) in ((1, (a, b, c, d)), (-1, (a, c, b, d))):
        for e in range(k):
            for f in range(k):
                eta = inv[e][f]
                if not eta:
                    continue
                left_idx = (i1, i2, e)
                right_idx = (f, j1, j2)
                for b1 in range(beta + 1):
                    b2 = beta - b1
                    top_left = symbolic and b1 == beta
                    top_right = symbolic and b2 == beta
                    if top_left and top_right:
                        continue  # beta == 0 never reached here
                    L = _third_symbolic(fd, b1, left_idx) if top_left else _third(fd, quantum, b1, left_idx)
                    R = _third_symbolic(fd, b2, right_idx) if top_right else _third(fd, quantum, b2, right_idx)
                    if not L or not R:
                        continue
                    for M1, lv in L.items():
                        for M2, rv in R.items():
                            M = tuple(x + y for x, y in zip(M1, M2))
                            w = sign * eta * _divided_binom(M1, M2)
                            if top_left:
                                key, fac = lv
                                acc(M, key, w * fac * rv)
                            elif top_right:
                                key, fac = rv
                                acc(M, key, w * fac * lv)
                            else:
                                acc(M, 1, w * lv * rv)
    return out


def wdvv_solve(fd: FrobeniusData, seeds: Mapping[Key, Fraction], degree_max: int) -> Potential:
    """Solve WDVV degree by degree for the genus-0 potential.

    Unknowns at curve degree β are the quantum coefficients ``(β, A)``; the
    residual at ``x^β`` is linear in them (they multiply classical third
    derivatives).  Seeds fix chosen unknowns.  Every residual equation is
    checked after solving.
    """
    if degree_max < 1:
        raise ValueError("degree_max must be at least 1")
    quantum: Dict[Key, Fraction] = {}
    for beta in range(1, degree_max + 1):
        keys = sorted(fd.quantum_keys(beta), key=lambda A: (sum(A), A))
        order = [(beta, A) for A in keys]
        equations = []
        for key in order:
            if key in seeds:
                equations.append({key: Fraction(1), 1: -Fraction(seeds[key])})
        for abcd in _quadruples(fd.rank):
            level = _residual_level(fd, quantum, beta, abcd, symbolic=True)
            for M in sorted(level):
                equations.append(level[M])
        try:
            sol = solve_sparse(equations, order)
        except Inconsistent as exc:
            raise WDVVError(f"inconsistent seeds at degree {beta}: {exc}") from None
        except Underdetermined as exc:
            raise WDVVError(f"insufficient seeds at degree {beta}: {exc}") from None
        for key, v in sol.items():
            if v:
                quantum[key] = v
    return Potential(fd, 0, classical_cubic(fd), quantum)


def wdvv_residual(F0: Potential, a: int, b: int, c: int, d: int) -> TruncSeries:
    """``Σ F_{abe} η^{ef} F_{fcd} − (b↔c)`` as a series over ``t_0..t_k, x``.

    Computed with the generic series arithmetic (independent of the solver).
    """
    fd = F0.fd
    k = fd.rank
    for i in (a, b, c, d):
        if not 0 <= i < k:
            raise IndexError(f"basis index {i} out of range")
    F = F0.to_series(F0.max_degree())

    def D(s: TruncSeries, i: int) -> TruncSeries:
        if i == 1:
            # t_1 acts as x∂x on the quantum part and literally on the classical part
            return s.derive("t1") + s.euler("x")
        return s.derive(f"t{i}")

    cache: dict = {}

    def third(i, j, l):
        key = tuple(sorted((i, j, l)))
        if key not in cache:
            cache[key] = D(D(D(F, key[0]), key[1]), key[2])
        return cache[key]

    inv = fd.pairing_inverse
    total = TruncSeries.zero(F.variables, F.caps)
    for e in range(k):
        for f in range(k):
            if inv[e][f]:
                total = total + (third(a, b, e) * third(f, c, d)).scale(inv[e][f])
                total = total - (third(a, c, e) * third(f, b, d)).scale(inv[e][f])
    return total


def cp3_rational_table(degree_max: int) -> Dict[Tuple[int, int], Fraction]:
    """``N⁽⁰⁾_{ab}`` for every ``a+2b = 4n``, ``n ≤ degree_max`` (zeros included)."""
    fd = projective_space(3)
    F0 = wdvv_solve(fd, {(1, (0, 2)): Fraction(1)}, degree_max)
    table = {}
    for beta in range(1, degree_max + 1):
        for A in fd.quantum_keys(beta):
            table[A] = F0.coefficient(beta, A)
    return table
