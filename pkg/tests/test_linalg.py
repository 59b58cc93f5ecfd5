from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from ellgw.linalg import Inconsistent, Underdetermined, nullspace, rank, solve_sparse


def test_solve_sparse_unique():
    eqs = [{"a": 1, "b": 1, 1: -3}, {"a": 1, "b": -1, 1: -1}, {"a": 2, "b": 2, 1: -6}]
    assert solve_sparse(eqs, ["a", "b"]) == {"a": 2, "b": 1}


def test_solve_sparse_errors():
    with pytest.raises(Inconsistent):
        solve_sparse([{"a": 1, 1: -1}, {"a": 1, 1: -2}], ["a"])
    with pytest.raises(Underdetermined):
        solve_sparse([{"a": 1, "b": 1}], ["a", "b"])


def test_nullspace_matches_sympy():
    rng = random.Random(3)
    for _ in range(30):
        rows = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(6)] for _ in range(rng.randint(1, 5))]
        basis = nullspace(rows, 6)
        M = sympy.Matrix(rows)
        assert len(basis) == 6 - M.rank()
        assert rank(rows) == M.rank()
        for v in basis:
            assert all(sum(r * x for r, x in zip(row, v)) == 0 for row in rows)
