from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest

from ellgw.genus0 import cp2_potential, km_cp2
from ellgw.genus1 import cp2_elliptic_potential, getzler_cp2
from ellgw.series import exp_trunc
from ellgw.severi import (
    Partition,
    SeveriKey,
    ch_compute,
    f_series,
    gw_from_severi,
    hbar_assembly,
    z_from_f,
    z_series,
)

from reference_values import SEVERI_WORKED


@pytest.fixture(scope="module")
def table6():
    return z_from_f(ch_compute(6))


def test_worked_values(table6):
    got = {
        "N0(5,4)": table6.N0(5, 4),
        "N(5,4)": table6.N(5, 4),
        "N0(5,5)": table6.N0(5, 5),
        "N(5,5)": table6.N(5, 5),
        "N0(6,9)": table6.N0(6, 9),
        "N(6,9)": table6.N(6, 9),
    }
    assert got == SEVERI_WORKED


def test_line_base_case(table6):
    assert table6.N0(1, 0) == 1
    assert table6.N0(1, 0, alpha=(1,), beta=()) == 1


def test_genus_one_matches_recursion(table6):
    N1 = getzler_cp2(6, km_cp2(6))
    assert all(gw_from_severi(d, 1, table6) == N1[d] for d in range(1, 7))


def test_genus_zero_matches_wdvv(table6):
    N0 = km_cp2(6)
    assert all(gw_from_severi(d, 0, table6) == N0[d] for d in range(1, 7))


def test_genus_two(table6):
    assert gw_from_severi(5, 2, table6) == 36855


def test_degrees_are_nonnegative_integers(table6):
    for part in (table6.irreducible, table6.all_curves):
        for v in part.values():
            assert v.denominator == 1 and v >= 0


def test_dimension_rule(table6):
    for key in table6.all_curves:
        assert key.dimension == comb(key.d + 1, 2) - key.delta + key.beta.length
        assert key.alpha.size + key.beta.size == key.d


def test_exp_identity():
    table = z_from_f(ch_compute(5))
    assert exp_trunc(f_series(table)) == z_series(table)


def test_hbar_assembly_matches_potentials(table6):
    F = hbar_assembly(table6, 6)
    N0 = km_cp2(6)
    assert F[0] == cp2_potential(N0).to_series(6)
    assert F[1] == cp2_elliptic_potential(getzler_cp2(6, N0)).to_series(6)
    assert F[0].coefficient({"x": 1, "t2": 2}) == Fraction(1, 2)
    assert F[1].coefficient({"x": 3, "t2": 9}) == Fraction(1, 362880)


def test_partition_and_key():
    p = Partition((1, 3, 1))
    assert p.parts == (3, 1, 1)
    assert p.multiplicities(3) == (2, 0, 1)
    assert Partition.from_multiplicities((2, 0, 1)) == p
    assert str(p) == "3.1.1"
    with pytest.raises(ValueError):
        SeveriKey(3, 0, Partition((1,)), Partition((1,)))


def test_gw_from_severi_bounds(table6):
    assert gw_from_severi(2, 1, table6) == 0
    with pytest.raises(ValueError):
        gw_from_severi(7, 1, table6)
