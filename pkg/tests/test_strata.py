from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest

from ellgw.strata import (
    CLASS_NAMES,
    NEW_RELATION,
    TRIVIAL_RELATION,
    StableGraph,
    all_strata,
    build_invariant_classes,
    complete_matrix,
    enumerate_strata,
    excess_decorations,
    expressible_as_intersection,
    in_span,
    intersect,
    intersect_graphs,
    intersection_matrix,
    nullspace_relations,
    psi_integral,
    psi_integral_by_recursion,
)
from ellgw.linalg import rank

from reference_values import COMPLETION, RELATION_NEW, RELATION_TRIVIAL, STRATA_MATRIX


@pytest.fixture(scope="module")
def classes():
    return build_invariant_classes()


@pytest.fixture(scope="module")
def matrix(classes):
    return intersection_matrix(classes)


def test_enumeration_counts():
    assert len(enumerate_strata(0)) == 1
    assert len(enumerate_strata(1)) == 12
    codim2 = enumerate_strata(2)
    assert sum(not expressible_as_intersection(g) for g in codim2) == 7
    for G in all_strata():
        assert G.is_connected() and G.is_stable() and G.genus() == 1


def test_codim2_strata_are_the_class_terms(classes):
    terms = {g for c in classes.values() for g, _ in c.terms}
    assert terms == set(enumerate_strata(2))


def test_class_sizes(classes):
    sizes = {name: len(c) for name, c in classes.items()}
    assert sizes == {"d22": 3, "d23": 12, "d24": 6, "d34": 4, "d02": 6, "d03": 4, "d04": 1, "dalpha": 4, "dbeta": 3}


def test_canonicalization():
    a = StableGraph((1, 0, 0), (1, 1, 2, 2), ((0, 1), (0, 2)))
    b = StableGraph((0, 0, 1), (0, 0, 1, 1), ((2, 0), (1, 2)))
    c = StableGraph((1, 0, 0), (1, 2, 1, 2), ((0, 1), (0, 2)))
    assert a == b and hash(a) == hash(b)
    assert a != c


def test_automorphisms():
    loop = StableGraph((0, 0), (1, 1, 1, 1), ((0, 0), (0, 1)))
    double = StableGraph((0, 0), (0, 0, 1, 1), ((0, 1), (0, 1)))
    tree = StableGraph((1, 0, 0), (1, 1, 2, 2), ((0, 1), (0, 2)))
    assert loop.automorphisms() == 2
    assert double.automorphisms() == 2
    assert tree.automorphisms() == 1


def test_contraction():
    G = StableGraph((0, 0), (0, 0, 1, 1), ((0, 1), (0, 1)))
    one = G.contract([0])
    assert one.genera == (0,) and one.edges == ((0, 0),)
    assert G.contract([0, 1]) == StableGraph((1,), (0, 0, 0, 0), ())


@pytest.mark.parametrize(
    "g,n,exps,value",
    [
        (1, 1, [1], Fraction(1, 24)),
        (0, 4, [1, 0, 0, 0], Fraction(1)),
        (0, 3, [0, 0, 0], Fraction(1)),
        (1, 2, [1, 1], Fraction(1, 24)),
        (1, 2, [2, 0], Fraction(1, 24)),
        (0, 5, [1, 1, 0, 0, 0], Fraction(2)),
        (1, 3, [1, 1, 1], Fraction(1, 12)),
        (0, 4, [0, 0, 0, 0], Fraction(0)),
    ],
)
def test_psi_integral(g, n, exps, value):
    assert psi_integral(g, n, exps) == value


def test_psi_integral_against_string_dilaton_oracle():
    for g, n in [(0, 3), (0, 4), (0, 5), (0, 6), (1, 1), (1, 2), (1, 3), (1, 4)]:
        target = 3 * g - 3 + n
        for exps in product(range(target + 1), repeat=n):
            if sum(exps) == target:
                assert psi_integral(g, n, exps) == psi_integral_by_recursion(g, exps)


def test_psi_integral_unsupported_genus():
    with pytest.raises(ValueError):
        psi_integral(2, 1, [4])


def test_matrix(matrix):
    assert matrix == STRATA_MATRIX


def test_relations(matrix):
    basis = nullspace_relations(matrix)
    assert len(basis) == 2
    assert rank(matrix) == 7
    assert in_span(basis, RELATION_TRIVIAL) and in_span(basis, RELATION_NEW)
    assert tuple(TRIVIAL_RELATION) == RELATION_TRIVIAL and tuple(NEW_RELATION) == RELATION_NEW


def test_completion(matrix):
    full = complete_matrix(matrix)
    assert (full[7][7], full[7][8], full[8][8]) == (COMPLETION["aa"], COMPLETION["ab"], COMPLETION["bb"])
    for i in range(9):
        for j in range(9):
            assert full[i][j] == full[j][i]
    for r in (RELATION_TRIVIAL, RELATION_NEW):
        for row in full:
            assert sum(x * c for x, c in zip(row, r)) == 0


def test_symmetry(classes):
    names = list(CLASS_NAMES)
    for i, a in enumerate(names):
        for b in names[i:]:
            assert intersect(classes[a], classes[b]) == intersect(classes[b], classes[a])


def test_structural_zeros(classes):
    # pairs of strata with no common specialization
    for a, b in [("d22", "d23"), ("d22", "d34"), ("d23", "d24"), ("d02", "d03")]:
        for ga, _ in classes[a].terms:
            for gb, _ in classes[b].terms:
                assert intersect_graphs(ga, gb) == 0


def test_arrow_rule_on_self_intersection(classes):
    G, _ = classes["d24"].terms[0]
    decorated = excess_decorations(G, [0, 1])
    values = [dg.evaluate() for dg in decorated]
    assert len(values) == 4
    assert sum(1 for v in values if v) == 1
    assert intersect(classes["d24"], classes["d24"]) == 0


def test_codimension_mismatch(classes):
    G, _ = classes["d22"].terms[0]
    with pytest.raises(ValueError):
        intersect_graphs(G, enumerate_strata(1)[0])
