"""Genus-one Gromov-Witten invariants of CP², CP³ and the elliptic curve."""
from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

from .genus0 import FrobeniusData, Potential, cp3_potential, projective_space

__all__ = [
    "getzler_cp2",
    "elliptic_recursion_defect",
    "ehx_cp2",
    "cp2_elliptic_potential",
    "cp3_elliptic_potential",
    "cp1_elliptic_potential",
    "RelTerm",
    "Piece",
    "RELATION_B",
    "RELATION_A_UNCORRECTED",
    "evaluate_terms",
    "cp3_relation_A",
    "cp3_relation_A_uncorrected",
    "cp3_relation_B",
    "cp3_elliptic_table",
    "space_curve_counts",
    "elliptic_curve_sigma",
    "eisenstein_g2",
    "elliptic_curve_f1",
    "bcov_linear_term",
    "MissingDependency",
    "CrossPathMismatch",
]


class MissingDependency(KeyError):
    """A lower-order invariant needed by a recursion is absent."""


class CrossPathMismatch(ValueError):
    """Two independent computations of the same invariant disagree."""


def _binom(m: int, k: int) -> int:
    return comb(m, k) if 0 <= k <= m else 0


def _multinomial(m: int, lows: Sequence[int]) -> int:
    """``m!/(∏ u_i! (m-Σu_i)!)``; zero when any entry is out of range."""
    if any(u < 0 for u in lows) or sum(lows) > m or m < 0:
        return 0
    r = factorial(m)
    for u in lows:
        r //= factorial(u)
    return r // factorial(m - sum(lows))


def _need(table: Mapping, key, what: str):
    try:
        return Fraction(table[key])
    except KeyError:
        raise MissingDependency(f"{what} {key} is required but missing") from None


# -- CP² ---------------------------------------------------------------------

def getzler_cp2(n_max: int, rational: Mapping[int, Fraction]) -> Dict[int, Fraction]:
    """Elliptic plane-curve invariants ``N⁽¹⁾_n`` from the three-part recursion."""
    N0 = {n: _need(rational, n, "N0") for n in range(1, n_max + 1)}
    N1: Dict[int, Fraction] = {}
    for n in range(1, n_max + 1):
        # N1[n] enters the defect only through 6·N1[n]
        N1[n] = Fraction(0)
        N1[n] = -elliptic_recursion_defect(n, N0, N1) / 6
    return N1


def elliptic_recursion_defect(n: int, rational: Mapping[int, Fraction], elliptic: Mapping[int, Fraction]) -> Fraction:
    """``6N⁽¹⁾_n`` minus the right side of the three-part recursion; zero when it holds."""
    N0 = {m: _need(rational, m, "N0") for m in range(1, n + 1)}
    N1 = {m: _need(elliptic, m, "N1") for m in range(1, n + 1)}
    rhs = Fraction(0)
    for i in range(1, n + 1):
        for j in range(1, n - i + 1):
            k = n - i - j
            if k < 1:
                continue
            rhs += (
                _multinomial(3 * n - 2, (3 * j - 1, 3 * k - 1))
                * i * j ** 3 * k ** 3 * (2 * i - j - k)
                * N1[i] * N0[j] * N0[k]
            )
    for i in range(1, n):
        j = n - i
        rhs += 2 * (
            _binom(3 * n - 2, 3 * i) * i * j * j * (8 * i - j)
            - _binom(3 * n - 2, 3 * i - 1) * 2 * (i + j) * j ** 3
        ) * N1[i] * N0[j]
    rat = Fraction(6 * n ** 3 * (n - 1)) * N0[n]
    for i in range(1, n):
        j = n - i
        rat += _binom(3 * n - 2, 3 * i - 1) * (n * n - 3 * n - 6 * i * j) * i ** 3 * j ** 3 * N0[i] * N0[j]
    rhs -= rat / 24
    return 6 * N1[n] - rhs


def ehx_cp2(n_max: int, rational: Mapping[int, Fraction]) -> Dict[int, Fraction]:
    """Elliptic plane-curve invariants from the Virasoro-type recursion."""
    N0 = {n: _need(rational, n, "N0") for n in range(1, n_max + 1)}
    N1: Dict[int, Fraction] = {}
    for n in range(1, n_max + 1):
        total = Fraction(_binom(n, 3), 12) * N0[n]
        acc = Fraction(0)
        for i in range(1, n):
            j = n - i
            acc += _binom(3 * n - 1, 3 * i - 1) * (3 * i * i - 2 * i) * j * N0[i] * N1[j]
        N1[n] = total + acc / 9
    return N1


def cp2_elliptic_potential(table: Mapping[int, Fraction]) -> Potential:
    fd = projective_space(2)
    return Potential(
        fd, 1, {(0, 1, 0): fd.bcov_constant},
        {(n, (3 * n,)): Fraction(v) for n, v in table.items()},
    )


def cp1_elliptic_potential() -> Potential:
    fd = projective_space(1)
    return Potential(fd, 1, {(0, 1): fd.bcov_constant}, {})


def cp3_elliptic_potential(table: Mapping[Tuple[int, int], Fraction]) -> Potential:
    fd = projective_space(3)
    return Potential(
        fd, 1, {(0, 1, 0, 0): fd.bcov_constant},
        {((a + 2 * b) // 4, (a, b)): Fraction(v) for (a, b), v in table.items()},
    )


# -- CP³ relations as data ------------------------------------------------------

_ALLOWED = (
    ast.Expression, ast.BinOp, ast.UnaryOp, ast.Add, ast.Sub, ast.Mult, ast.Div,
    ast.Pow, ast.USub, ast.UAdd, ast.Constant, ast.Name, ast.Load,
)


class _FractionConstants(ast.NodeTransformer):
    def visit_Constant(self, node):
        return ast.copy_location(
            ast.Call(ast.Name("Fraction", ast.Load()), [node], []), node
        )


@lru_cache(maxsize=None)
def _compile_poly(expr: str) -> Callable:
    tree = ast.parse(expr, mode="eval")
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED):
            raise ValueError(f"disallowed syntax in coefficient {expr!r}")
        if isinstance(node, ast.Name) and node.id not in ("n", "n1", "n2", "n3"):
            raise ValueError(f"unknown symbol {node.id!r} in {expr!r}")
        if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Pow) and not isinstance(node.right, ast.Constant):
            raise ValueError("exponents must be literal integers")
    tree = ast.fix_missing_locations(_FractionConstants().visit(tree))
    code = compile(tree, f"<coeff {expr}>", "eval")
    return lambda env: eval(code, {"__builtins__": {}, "Fraction": Fraction}, env)


@dataclass(frozen=True)
class Piece:
    """One summand: polynomial in ``n, n_i`` times an ``a``- and a ``b``-multinomial.

    ``a_low``/``b_low`` list ``(factor index, offset)``: the multinomial's lower
    entries are ``a_i + offset`` for the listed factors.
    """

    poly: str
    a_low: Tuple[Tuple[int, int], ...] = ()
    b_low: Tuple[Tuple[int, int], ...] = ()


@dataclass(frozen=True)
class RelTerm:
    """A (possibly summed) product of invariants with a polynomial weight.

    The factors' indices ``(a_i, b_i)`` range over all decompositions of
    ``(a+shift[0], b+shift[1])``; multinomial tops are ``a+a_top``, ``b+b_top``.
    """

    kinds: Tuple[str, ...]
    shift: Tuple[int, int]
    scale: Fraction
    pieces: Tuple[Piece, ...]
    a_top: int = 0
    b_top: int = 0


def _decompositions(total: Tuple[int, int], k: int):
    a, b = total
    if a < 0 or b < 0:
        return
    if k == 1:
        yield ((a, b),)
        return
    for a1 in range(a + 1):
        for b1 in range(b + 1):
            for rest in _decompositions((a - a1, b - b1), k - 1):
                yield ((a1, b1),) + rest


def _cp3_degree(a: int, b: int) -> Optional[int]:
    s = a + 2 * b
    if s <= 0 or s % 4:
        return None
    return s // 4


def _lookup(tables: Mapping[str, Mapping], kind: str, key) -> Fraction:
    if _cp3_degree(*key) is None:
        return Fraction(0)
    table = tables[kind]
    if key not in table:
        raise MissingDependency(f"{kind} {key} is required but missing")
    return Fraction(table[key])


def evaluate_terms(
    terms: Sequence[RelTerm],
    a: int,
    b: int,
    rational: Mapping,
    elliptic: Mapping,
) -> Fraction:
    """Sum of the given relation terms at ``(a, b)``."""
    n = Fraction(a + 2 * b, 4)
    tables = {"N0": rational, "N1": elliptic}
    total = Fraction(0)
    for term in terms:
        target = (a + term.shift[0], b + term.shift[1])
        acc = Fraction(0)
        for parts in _decompositions(target, len(term.kinds)):
            if any(_cp3_degree(*key) is None for key in parts):
                continue
            value = Fraction(1)
            for kind, key in zip(term.kinds, parts):
                value *= _lookup(tables, kind, key)
                if not value:
                    break
            if not value:
                continue
            env = {"n": n}
            for i, (ai, bi) in enumerate(parts, start=1):
                env[f"n{i}"] = Fraction(ai + 2 * bi, 4)
            inner = Fraction(0)
            for piece in term.pieces:
                ca = _multinomial(a + term.a_top, [parts[i][0] + o for i, o in piece.a_low])
                if not ca:
                    continue
                cb = _multinomial(b + term.b_top, [parts[i][1] + o for i, o in piece.b_low])
                if not cb:
                    continue
                inner += _compile_poly(piece.poly)(env) * ca * cb
            acc += value * inner
        total += term.scale * acc
    return total


F = Fraction

# 0 = N1_ab + Σ terms   (b ≥ 2)
RELATION_B: Tuple[RelTerm, ...] = (
    RelTerm(("N0",), (2, -1), F(1, 24), (Piece("n*(2*n-1)"),)),
    RelTerm(("N0",), (4, -2), F(1, 48), (Piece("1"),)),
    RelTerm(
        ("N1", "N0"), (2, -1), F(1),
        (
            Piece("n2*n", ((0, 0),), ((0, -1),)),
            Piece("n2**2", ((0, -1),), ((0, -1),)),
            Piece("-n1*(6*n1-n2)/6", ((0, 0),), ((0, 0),)),
            Piece("-n2*(16*n1-n2)/6", ((0, -1),), ((0, 0),)),
            Piece("-n2**2", ((0, -2),), ((0, 0),)),
        ),
        a_top=0, b_top=-2,
    ),
    RelTerm(
        ("N1", "N0"), (4, -2), F(-1, 12),
        (
            Piece("n1", ((0, 0),), ((0, 0),)),
            Piece("2*n1-5*n2", ((0, -1),), ((0, 0),)),
            Piece("6*n2", ((0, -2),), ((0, 0),)),
        ),
        a_top=0, b_top=-2,
    ),
    RelTerm(
        ("N0", "N0"), (4, -2), F(-1, 48),
        (
            Piece("n1**3*(n1-1)", ((0, 0),), ((0, 0),)),
            Piece("n1**2*n2*(2*n1-2*n2+1)", ((0, -1),), ((0, 0),)),
            Piece("n1*n2**2*(2*n1-2*n2+7)", ((0, -2),), ((0, 0),)),
            Piece("n2**3*(2*n1+5)", ((0, -3),), ((0, 0),)),
            Piece("n2**4", ((0, -4),), ((0, 0),)),
        ),
        a_top=0, b_top=-2,
    ),
    RelTerm(
        ("N1", "N0", "N0"), (4, -2), F(-1, 12),
        tuple(
            Piece(p, lows, ((1, 0), (2, 0)))
            for p, lows in (
                ("3*n2**3*n3", ((1, 0), (2, -2))),
                ("3*n2*n3**3", ((1, -2), (2, 0))),
                ("n1*n2**3", ((1, 0), (2, -4))),
                ("n1*n2**2*(6*n1-n3)", ((1, -1), (2, -3))),
                ("-7*n1*n2*n3**2", ((1, -2), (2, -2))),
                ("-5*n1*n3**3", ((1, -3), (2, -1))),
                ("n2**3*(n1-5*n3)", ((1, 0), (2, -3))),
                ("n2**2*n3*(5*n1-7*n3)", ((1, -1), (2, -2))),
                ("n2*n3**2*(5*n1-n3)", ((1, -2), (2, -1))),
                ("n3**3*(n1+n3)", ((1, -3), (2, 0))),
            )
        ),
        a_top=0, b_top=-2,
    ),
)

# 3 N1_ab = Σ terms   (a ≥ 2), a term list with known coefficient errors; see cp3_relation_A.
RELATION_A_UNCORRECTED: Tuple[RelTerm, ...] = (
    RelTerm(("N1",), (-2, 1), F(4), (Piece("n"),)),
    RelTerm(("N0",), (0, 0), F(-1, 4), (Piece("n**2"),)),
    RelTerm(("N0",), (-2, 1), F(1, 6), (Piece("n**3*(n-3)"),)),
    RelTerm(
        ("N1", "N0"), (-2, 1), F(-2),
        (
            Piece("n2**2*(n-3*n1)*n1", ((0, 0),), ((0, 0),)),
            Piece("n2**2*(n-3*n1)*n2", ((0, 0),), ((0, -1),)),
        ),
        a_top=-2, b_top=0,
    ),
    RelTerm(
        ("N1", "N0"), (0, 0), F(1),
        (
            Piece("n1*n2*(n+3*n1)", ((0, 0),), ((0, 0),)),
            Piece("n2**2*(3*n1-n)", ((0, -1),), ((0, 0),)),
            Piece("-6*n2**3", ((0, -2),), ((0, 0),)),
        ),
        a_top=-2, b_top=0,
    ),
    RelTerm(
        ("N0", "N0"), (0, 0), F(1, 12),
        (
            Piece("n1*n2**2*n1**2*(3-n1)", ((0, 0),), ((0, 0),)),
            Piece("n1*n2**2*n1*n2*(n-3*n1-3)", ((0, -1),), ((0, 0),)),
            Piece("n1*n2**2*n2**2*(-n1+n2-6)", ((0, -2),), ((0, 0),)),
        ),
        a_top=-2, b_top=0,
    ),
    RelTerm(
        ("N1", "N0", "N0"), (0, 0), F(1, 2),
        tuple(
            Piece(p, lows, ((1, 0), (2, 0)))
            for p, lows in (
                ("2*n1*n2**3*n3*(n+3*n1-3*n2)", ((1, 0), (2, -2))),
                ("-6*n2**3*n3**3", ((1, 0), (2, 0))),
                ("n2**2*n3**2*(3*n1-n)*n1", ((1, -1), (2, -1))),
                ("n2**2*n3**2*(3*n1-n)*n2", ((1, 0), (2, -1))),
                ("n2**2*n3**2*(3*n1-n)*n3", ((1, -1), (2, 0))),
            )
        ),
        a_top=-2, b_top=0,
    ),
)
del F


def _check_cp3_key(a: int, b: int) -> int:
    n = _cp3_degree(a, b)
    if n is None or a < 0 or b < 0:
        raise ValueError(f"(a,b)=({a},{b}) is not a CP3 index with a+2b=4n, n≥1")
    return n


def cp3_relation_B(b: int, rational: Mapping, partial: Mapping, a: int = 0) -> Fraction:
    """``N⁽¹⁾_{ab}`` from the relation on ``ω²⊠ω²⊠ω⊠ω`` (needs ``b ≥ 2``)."""
    _check_cp3_key(a, b)
    if b < 2:
        raise ValueError("relation B needs b >= 2")
    return -evaluate_terms(RELATION_B, a, b, rational, partial)


def cp3_relation_A_uncorrected(a: int, b: int, rational: Mapping, partial: Mapping) -> Fraction:
    """A term list for the ``ω⁴`` relation with coefficient errors, solved for ``N⁽¹⁾_{ab}``.

    Kept for reference only: it does not reproduce the known table (see the
    project notes).  :func:`cp3_relation_A` evaluates the same relation
    directly from the potentials.
    """
    _check_cp3_key(a, b)
    if a < 2:
        raise ValueError("relation A needs a >= 2")
    return evaluate_terms(RELATION_A_UNCORRECTED, a, b, rational, partial) / 3


class _Omega4:
    """The coefficient of ``s_1⁴ x^n t_2^{a-2} t_3^b`` in the genus-one relation.

    The relation is affine in the genus-one potential, so the coefficient is
    ``base + Σ_k N⁽¹⁾_k·response_k`` over the degree-``n`` unknowns ``k``.
    """

    def __init__(self, rational: Mapping, lower: Mapping, n: int):
        from .feynman import verify_relation

        fd = projective_space(3)
        self.n = n
        F0 = cp3_potential({k: v for k, v in rational.items() if _cp3_degree(*k) <= n})
        F1 = cp3_elliptic_potential({k: v for k, v in lower.items() if _cp3_degree(*k) < n})
        self.base = verify_relation(F0, F1, n).select(lambda e: e[-1] == n)
        classical = Potential(fd, 0, F0.classical, {})
        self._classical = classical
        self._responses: dict = {}
        self._verify = verify_relation
        self._fd = fd

    def response(self, key: Tuple[int, int]):
        if key not in self._responses:
            unit = Potential(self._fd, 1, {}, {(self.n, key): Fraction(1)})
            r = self._verify(self._classical, unit, self.n)
            self._responses[key] = r.select(lambda e: e[-1] == self.n)
        return self._responses[key]

    def keys(self):
        return [(4 * self.n - 2 * b, b) for b in range(2 * self.n + 1)]

    def solve_cell(self, a: int, b: int, known: Mapping) -> Fraction:
        mono = {"s1": 4, "x": self.n, "t2": a - 2, "t3": b}
        const = self.base.coefficient(mono)
        lead = self.response((a, b)).coefficient(mono)
        if not lead:
            raise ArithmeticError(f"N1{(a, b)} does not occur in its ω⁴ equation")
        for key in self.keys():
            if key == (a, b):
                continue
            c = self.response(key).coefficient(mono)
            if c:
                if key not in known:
                    raise MissingDependency(f"N1 {key} is required but missing")
                const += c * Fraction(known[key])
        return -const / lead

    def full_residual(self, values: Mapping):
        total = self.base
        for key in self.keys():
            v = values.get(key)
            if v:
                total = total + self.response(key).scale(v)
        return total


def cp3_relation_A(a: int, b: int, rational: Mapping, partial: Mapping) -> Fraction:
    """``N⁽¹⁾_{ab}`` (``a ≥ 2``) from the genus-one relation evaluated on ``ω⊠ω⊠ω⊠ω``.

    The coefficient of ``s_1⁴ x^n t_2^{a-2} t_3^b`` in the relation's residual
    is computed exactly from the potentials and solved for ``N⁽¹⁾_{ab}``.  The
    only other degree-``n`` elliptic invariant it involves is
    ``N⁽¹⁾_{a-2,b+1}``, which must be present in ``partial``.
    """
    n = _check_cp3_key(a, b)
    if a < 2:
        raise ValueError("relation A needs a >= 2")
    for m in range(1, n + 1):
        for bb in range(2 * m + 1):
            key = (4 * m - 2 * bb, bb)
            if key not in rational:
                raise MissingDependency(f"N0 {key} is required but missing")
            if m < n and key not in partial:
                raise MissingDependency(f"N1 {key} is required but missing")
    eq = _Omega4(rational, partial, n)
    return eq.solve_cell(a, b, partial)


def cp3_elliptic_table(n_max: int, rational: Mapping) -> Dict[Tuple[int, int], Fraction]:
    """All ``N⁽¹⁾_{ab}`` with ``a+2b = 4n``, ``n ≤ n_max``.

    Per degree: relation B gives ``(0, 2n)``; relation A then fills ``a > 0``
    in increasing ``a``.  Cells with ``b ≥ 2`` are recomputed by relation B
    and must agree, and the whole degree-``n`` part of the relation residual
    must vanish.
    """
    table: Dict[Tuple[int, int], Fraction] = {}
    for n in range(1, n_max + 1):
        eq = _Omega4(rational, table, n)
        level: Dict[Tuple[int, int], Fraction] = {}
        for a in range(0, 4 * n + 1, 2):
            b = (4 * n - a) // 2
            if a == 0:
                value = cp3_relation_B(b, rational, table)
            else:
                value = eq.solve_cell(a, b, {**table, **level})
                if b >= 2:
                    check = cp3_relation_B(b, rational, table, a=a)
                    if check != value:
                        raise CrossPathMismatch(
                            f"N1{(a, b)}: relation A gives {value}, relation B gives {check}"
                        )
            level[(a, b)] = value
            table[(a, b)] = value
        leftover = eq.full_residual(level)
        if not leftover.is_zero():
            raise CrossPathMismatch(
                f"degree {n}: {len(leftover)} residual coefficients remain nonzero"
            )
    return table


def space_curve_counts(rational: Mapping, elliptic: Mapping) -> Dict[Tuple[int, int], Fraction]:
    """Elliptic space-curve counts ``N⁽¹⁾_{ab} + (2n−1)N⁽⁰⁾_{ab}/12``."""
    out = {}
    for key, v1 in elliptic.items():
        n = _check_cp3_key(*key)
        v0 = _need(rational, key, "N0")
        count = Fraction(v1) + Fraction(2 * n - 1, 12) * v0
        if count.denominator != 1:
            raise ArithmeticError(f"non-integral count {count} at {key}")
        if count < 0:
            raise ArithmeticError(f"negative count {count} at {key}")
        out[key] = count
    return out


# -- elliptic curve and the linear term ---------------------------------------

def elliptic_curve_sigma(beta_max: int) -> Dict[int, int]:
    """Divisor sums ``σ(β)`` for ``1 ≤ β ≤ beta_max`` by a sieve."""
    if beta_max < 1:
        raise ValueError("beta_max must be at least 1")
    sigma = [0] * (beta_max + 1)
    for d in range(1, beta_max + 1):
        for m in range(d, beta_max + 1, d):
            sigma[m] += d
    return {b: sigma[b] for b in range(1, beta_max + 1)}


def eisenstein_g2(beta_max: int) -> Dict[int, Fraction]:
    """Coefficients of ``G_2(q) = −1/24 + Σ σ(β) q^β``."""
    out = {0: Fraction(-1, 24)}
    out.update({b: Fraction(s) for b, s in elliptic_curve_sigma(beta_max).items()})
    return out


def elliptic_curve_f1(beta_max: int) -> Dict[int, Fraction]:
    """Quantum coefficients of ``F_1(E)``: ``σ(β)/β`` at ``q^β``."""
    return {b: Fraction(s, b) for b, s in elliptic_curve_sigma(beta_max).items()}


def bcov_linear_term(fd: FrobeniusData) -> Fraction:
    """Coefficient of ``t_1`` in ``F_1``."""
    return fd.bcov_constant
