"""Exact Gaussian elimination over the rationals."""
from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of a dense matrix; returns (matrix, pivot columns)."""
    m = [[Fraction(v) for v in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right nullspace, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][f]
        basis.append(v)
    return basis


class LinearSystemError(ValueError):
    pass


class Inconsistent(LinearSystemError):
    pass


class Underdetermined(LinearSystemError):
    pass


def solve_sparse(
    equations: Iterable[Mapping[Hashable, Fraction]],
    order: Sequence[Hashable],
) -> dict:
    """Solve sparse linear equations ``Σ c_u·u + c_1 = 0``.

    Each equation maps unknowns to coefficients, with the key ``1`` holding
    the constant.  ``order`` fixes the elimination order, which makes the
    pivot choice deterministic.  Every equation must be satisfied by the
    unique solution; otherwise :class:`Inconsistent` or
    :class:`Underdetermined` is raised.
    """
    rank_of = {u: i for i, u in enumerate(order)}
    pivot_rows: dict = {}
    for eq in equations:
        row = {k: Fraction(v) for k, v in eq.items() if v}
        for k in row:
            if k != 1 and k not in rank_of:
                raise LinearSystemError(f"unknown {k!r} not in elimination order")
        # reduce against existing pivots in order
        while True:
            lead = min((k for k in row if k != 1), key=rank_of.__getitem__, default=None)
            if lead is None:
                if row.get(1):
                    raise Inconsistent(f"residual constant {row[1]} with no free unknown")
                break
            if lead in pivot_rows:
                prow = pivot_rows[lead]
                f = row[lead]
                for k, v in prow.items():
                    nv = row.get(k, 0) - f * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
                continue
            inv = 1 / row[lead]
            pivot_rows[lead] = {k: v * inv for k, v in row.items()}
            break
    missing = [u for u in order if u not in pivot_rows]
    if missing:
        raise Underdetermined(f"free unknowns remain: {missing}")
    # back substitution, latest pivots first
    solution: dict = {}
    for u in sorted(pivot_rows, key=rank_of.__getitem__, reverse=True):
        row = pivot_rows[u]
        val = -row.get(1, Fraction(0))
        for k, v in row.items():
            if k == 1 or k == u:
                continue
            val -= v * solution[k]
        solution[u] = val
    return solution
