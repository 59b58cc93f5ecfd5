from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ellgw.series import (
    ContextError,
    TruncSeries,
    VarSpec,
    derive,
    exp_trunc,
    log_trunc,
    residue,
)

VARS = [VarSpec("x", 2), VarSpec("y", 4), VarSpec("z", 0)]
CAPS = [4, 3, 5]

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
exponents = st.tuples(st.integers(0, 4), st.integers(0, 3), st.integers(0, 5))


@st.composite
def series(draw, nilpotent=False):
    terms = draw(st.dictionaries(exponents, coeffs, max_size=6))
    if nilpotent:
        terms = {e: c for e, c in terms.items() if e[0] + e[1] > 0}
    return TruncSeries(VARS, terms, CAPS)


@settings(max_examples=60, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == TruncSeries.zero(VARS, CAPS)
    assert a * 1 == a


@settings(max_examples=60, deadline=None)
@given(series(), series())
def test_leibniz(a, b):
    for name in ("x", "y", "z"):
        lhs = derive(a * b, name)
        rhs = derive(a, name) * b + a * derive(b, name)
        assert lhs == rhs


@settings(max_examples=30, deadline=None)
@given(series(nilpotent=True))
def test_exp_log_inverse(a):
    assert log_trunc(exp_trunc(a)) == a
    assert exp_trunc(log_trunc(a + 1)) == a + 1


@settings(max_examples=30, deadline=None)
@given(series(nilpotent=True), series(nilpotent=True))
def test_exp_homomorphism(a, b):
    assert exp_trunc(a + b) == exp_trunc(a) * exp_trunc(b)


def test_caps_propagate_as_minimum():
    a = TruncSeries(VARS, {(1, 0, 0): 1}, [4, None, 5])
    b = TruncSeries(VARS, {(0, 1, 0): 1}, [2, 3, None])
    assert (a * b).caps == (2, 3, 5)
    # terms above a cap are dropped
    assert TruncSeries(VARS, {(3, 0, 0): 1}, [2, None, None]).is_zero()


def test_derive_lowers_cap():
    a = TruncSeries(VARS, {(2, 1, 0): 3}, CAPS)
    d = a.derive("x")
    assert d.cap("x") == 3
    assert d.coefficient({"x": 1, "y": 1}) == 6


def test_context_mismatch():
    other = TruncSeries([VarSpec("u")], {(1,): 1})
    with pytest.raises(ContextError):
        TruncSeries(VARS, {}, CAPS) + other


def test_exp_needs_capped_variable():
    a = TruncSeries(VARS, {(0, 0, 1): 1}, [4, 3, None])
    with pytest.raises(ValueError):
        exp_trunc(a)
    with pytest.raises(ValueError):
        exp_trunc(TruncSeries.one(VARS, CAPS))


def test_residue_laurent():
    vs = [VarSpec("p"), VarSpec("t", laurent=True)]
    a = TruncSeries(vs, {(1, -1): 2, (0, -2): 5, (2, 0): 1}, [3, None])
    r = residue(a, "t")
    assert r.names == ("p",)
    assert r.coefficient((1,)) == 2
    assert len(r) == 1


def test_json_round_trip():
    a = TruncSeries(VARS, {(1, 2, 0): Fraction(-3, 7), (0, 0, 4): 5}, CAPS)
    assert TruncSeries.from_json(a.to_json()) == a
    assert '"num":"-3","den":"7"' in a.to_json()


def _to_sympy(a, syms):
    return sum(
        (sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s ** k for s, k in zip(syms, e)]) for e, c in a.items()),
        sympy.Integer(0),
    )


def test_multiplication_matches_sympy_100_cases():
    rng = random.Random(7)
    syms = sympy.symbols("x y z")
    for _ in range(100):
        terms_a = {tuple(rng.randint(0, 3) for _ in range(3)): Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(5)}
        terms_b = {tuple(rng.randint(0, 3) for _ in range(3)): Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(5)}
        a = TruncSeries(VARS, terms_a)
        b = TruncSeries(VARS, terms_b)
        assert sympy.expand(_to_sympy(a * b, syms) - _to_sympy(a, syms) * _to_sympy(b, syms)) == 0
        assert sympy.expand(_to_sympy(a.derive("y"), syms) - sympy.diff(_to_sympy(a, syms), syms[1])) == 0
