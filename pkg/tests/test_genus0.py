from __future__ import annotations

from fractions import Fraction

import pytest

from ellgw.genus0 import (
    WDVVError,
    cp3_rational_table,
    elliptic_curve_even,
    km_cp2,
    projective_space,
    wdvv_residual,
    wdvv_solve,
)

from reference_values import CP2_N0, CP3_N0


def test_km_cp2_table():
    assert km_cp2(8) == {n: Fraction(v) for n, v in CP2_N0.items()}


def test_wdvv_cp2_agrees_with_closed_recursion():
    F0 = wdvv_solve(projective_space(2), {(1, (2,)): Fraction(1)}, 7)
    km = km_cp2(7)
    for n in range(1, 8):
        assert F0.coefficient(n, (3 * n - 1,)) == km[n]


def test_cp3_rational_table():
    table = cp3_rational_table(5)
    assert table == CP3_N0


@pytest.mark.parametrize("abcd", [(1, 1, 2, 2), (0, 1, 2, 3), (1, 2, 2, 3), (2, 2, 3, 3)])
def test_wdvv_residual_vanishes_cp3(abcd):
    F0 = wdvv_solve(projective_space(3), {(1, (0, 2)): Fraction(1)}, 3)
    assert wdvv_residual(F0, *abcd).is_zero()


def test_wdvv_residual_detects_perturbation():
    fd = projective_space(2)
    F0 = wdvv_solve(fd, {(1, (2,)): Fraction(1)}, 4)
    F0.quantum[(3, (8,))] += 1
    assert not wdvv_residual(F0, 1, 1, 2, 2).is_zero()


def test_frobenius_data():
    fd = projective_space(3)
    assert fd.pairing_inverse == fd.pairing  # antidiagonal pairing is its own inverse
    assert fd.bcov_constant == Fraction(-1, 4)
    assert fd.virtual_dim_target(1) == 4
    E = elliptic_curve_even()
    assert E.c1 == 0


def test_wdvv_needs_seed():
    with pytest.raises(WDVVError):
        wdvv_solve(projective_space(3), {}, 2)
