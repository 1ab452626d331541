"""Exact Laurent polynomial ring over the integers."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcanon.laurent import (
    LaurentPoly,
    ONE,
    ParseError,
    PreconditionViolation,
    Q,
    QINV,
    ZERO,
    antisymmetric_split,
    bar_q,
    parse_poly,
    poly_to_str,
    quantum_integer,
)

polys = st.builds(
    LaurentPoly,
    st.dictionaries(st.integers(-6, 6), st.integers(-9, 9), max_size=5),
)


def test_zero_normalization():
    assert LaurentPoly({}).is_zero()
    assert LaurentPoly({3: 0}).is_zero()
    assert LaurentPoly({3: 0}) == ZERO
    assert not ONE.is_zero()


def test_constants():
    assert Q == LaurentPoly({1: 1})
    assert QINV == LaurentPoly({-1: 1})
    assert Q * QINV == ONE
    assert LaurentPoly.q_power(5) == Q * Q * Q * Q * Q


def test_coeff_and_exponent_range():
    p = LaurentPoly({-2: 3, 5: -1})
    assert p.coeff(-2) == 3
    assert p.coeff(0) == 0
    assert p.min_exp() == -2
    assert p.max_exp() == 5


def test_as_pure_power():
    assert LaurentPoly({3: 1}).as_pure_power() == 3
    assert ONE.as_pure_power() == 0
    assert LaurentPoly({3: 2}).as_pure_power() is None
    assert (Q + QINV).as_pure_power() is None
    assert ZERO.as_pure_power() is None


def test_in_q_zq():
    assert LaurentPoly({1: 1, 4: -2}).in_q_zq()
    assert not ONE.in_q_zq()
    assert not LaurentPoly({-1: 1, 2: 1}).in_q_zq()
    assert ZERO.in_q_zq()


def test_shifted_is_q_power_multiplication():
    p = LaurentPoly({0: 2, 3: -1})
    assert p.shifted(2) == p * LaurentPoly.q_power(2)
    assert p.shifted(-4) == p * LaurentPoly.q_power(-4)
    assert p.shifted(0) == p


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a
    assert a * ONE == a
    assert a - a == ZERO


@given(polys, polys)
def test_bar_is_ring_involution(a, b):
    assert bar_q(bar_q(a)) == a
    assert bar_q(a + b) == bar_q(a) + bar_q(b)
    assert bar_q(a * b) == bar_q(a) * bar_q(b)


def test_bar_flips_exponents():
    assert bar_q(LaurentPoly({2: 5, -1: 3})) == LaurentPoly({-2: 5, 1: 3})


@given(polys)
def test_antisymmetric_split_recovers_positive_part(f):
    f = LaurentPoly({e: c for e, c in f.terms.items() if e >= 1})
    g = f - bar_q(f)
    assert antisymmetric_split(g) == f


def test_antisymmetric_split_rejects_symmetric_input():
    with pytest.raises(PreconditionViolation):
        antisymmetric_split(ONE)
    with pytest.raises(PreconditionViolation):
        antisymmetric_split(Q + QINV)


def test_quantum_integer_values():
    assert quantum_integer(0) == ZERO
    assert quantum_integer(1) == ONE
    assert quantum_integer(2) == LaurentPoly({2: 1, -2: 1})
    assert quantum_integer(3) == LaurentPoly({4: 1, 0: 1, -4: 1})
    assert quantum_integer(-2) == -quantum_integer(2)


@given(st.integers(-6, 6))
def test_quantum_integer_is_bar_invariant(m):
    assert bar_q(quantum_integer(m)) == quantum_integer(m)


@given(st.integers(1, 6))
def test_quantum_integer_recursion(m):
    # [m+1] = q^2 [m] + q^-2m
    lhs = quantum_integer(m + 1)
    rhs = quantum_integer(m).shifted(2) + LaurentPoly.q_power(-2 * m)
    assert lhs == rhs


def test_poly_to_str_pinned():
    assert poly_to_str(ZERO) == "0"
    assert poly_to_str(ONE) == "1"
    assert poly_to_str(LaurentPoly({2: 1, -2: -1})) == "-q^-2 + q^2"
    assert poly_to_str(LaurentPoly({0: 2, 1: -3})) == "2 - 3q"


@given(polys)
def test_parse_round_trip(p):
    assert parse_poly(poly_to_str(p)) == p


def test_parse_rejects_garbage():
    for bad in ("q^", "2q + ", "^3", "qq", "3 q q"):
        with pytest.raises(ParseError):
            parse_poly(bad)
