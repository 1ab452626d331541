"""Quantum matrix algebra: straightening engine, bar, sigma, minors."""

import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcanon.laurent import LaurentPoly, ONE
from qcanon.qmatrix import (
    AlgebraElement,
    BadIndexSet,
    ExpMatrix,
    SizeMismatch,
    Word,
    bar_element,
    corner_minor,
    corner_minor_transposed,
    d_exponent,
    denormalize,
    element_power_ratio,
    multiply,
    normal_order,
    normalize,
    pr_statistic,
    quantum_determinant,
    quantum_minor,
    region_commutation_report,
    region_exponent,
    scaled_monomial,
    sigma_element,
    trailing_principal_minor,
)

from conftest import random_element, random_matrix

Q2 = LaurentPoly.q_power(2)


def small_matrices(n, cap):
    rng = random.Random(n * 100 + cap)
    return [random_matrix(rng, n, rng.randint(0, cap)) for _ in range(30)]


# -- index matrices ---------------------------------------------------------


def test_matrix_constructors():
    I = ExpMatrix.identity(3)
    assert I.rows == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert ExpMatrix.zero(2).rows == ((0, 0), (0, 0))
    assert ExpMatrix.unit(2, 1, 2).rows == ((0, 1), (0, 0))
    assert ExpMatrix.diagonal((2, 5)).rows == ((2, 0), (0, 5))
    assert ExpMatrix.corner_unit(3, 2).rows == ((0, 1, 0), (0, 0, 1), (0, 0, 0))


def test_matrix_rejects_bad_input():
    with pytest.raises(ValueError):
        ExpMatrix([[1, 2], [3]])
    with pytest.raises(ValueError):
        ExpMatrix([[-1]])


def test_word_is_sorted_with_multiplicity():
    A = ExpMatrix([[2, 0], [1, 1]])
    assert A.word() == ((1, 1), (1, 1), (2, 1), (2, 2))
    assert ExpMatrix.from_word(2, A.word()) == A


def test_margins_and_views():
    A = ExpMatrix([[1, 2], [0, 3]])
    assert A.ro() == (3, 3)
    assert A.co() == (1, 5)
    assert A.total() == 6
    assert A.transpose().rows == ((1, 0), (2, 3))
    assert A.transpose().transpose() == A
    assert ExpMatrix.diagonal((1, 2)).min_diag() == 1
    assert ExpMatrix([[0, 1], [1, 0]]).min_diag() == 0


def test_ladder_and_striped_predicates():
    assert ExpMatrix([[2, 1], [1, 1]]).is_ladder()
    assert not ExpMatrix.diagonal((1, 2)).is_ladder()
    assert ExpMatrix.diagonal((2, 1)).is_ladder()
    # constant stripes are a special case of the ladder inequality
    assert ExpMatrix([[1, 2], [0, 1]]).is_striped()
    assert ExpMatrix([[1, 2], [0, 1]]).is_ladder()
    assert not ExpMatrix([[2, 1], [1, 1]]).is_striped()


def test_lex_order_is_total():
    mats = small_matrices(2, 3)
    for A in mats:
        for B in mats:
            assert (A < B) + (B < A) + (A == B) == 1


def test_d_exponent_values():
    assert d_exponent(ExpMatrix.identity(2)) == 0
    assert d_exponent(ExpMatrix([[1, 1], [0, 0]])) == 1
    assert d_exponent(ExpMatrix([[1, 0], [1, 0]])) == 1
    assert d_exponent(ExpMatrix([[0, 1], [1, 0]])) == 0
    assert d_exponent(ExpMatrix([[1, 1], [1, 1]])) == 4


def test_pr_statistic_is_northwest_corner_sum():
    A = ExpMatrix([[0, 1], [2, 0]])
    assert pr_statistic(A, 1, 2) == 1
    assert pr_statistic(A, 2, 1) == 2
    assert pr_statistic(A, 2, 2) == 3
    with pytest.raises(ValueError):
        pr_statistic(A, 0, 1)


# -- defining relations through the engine ------------------------------------


def gen(n, i, j):
    return AlgebraElement.generator(n, i, j)


@pytest.mark.parametrize("n", [2, 3])
def test_defining_relations(n):
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for s in range(1, n + 1):
                for t in range(1, n + 1):
                    lhs = multiply(gen(n, i, j), gen(n, s, t))
                    rhs = multiply(gen(n, s, t), gen(n, i, j))
                    if i == s and j < t:
                        assert lhs == rhs.scale(Q2)
                    elif j == t and i < s:
                        assert lhs == rhs.scale(Q2)
                    elif i > s and j < t:
                        assert lhs == rhs
                    elif i < s and j < t:
                        corr = multiply(gen(n, i, t), gen(n, s, j)).scale(
                            LaurentPoly({2: 1, -2: -1})
                        )
                        assert lhs == rhs + corr
                    elif i == s and j == t:
                        assert lhs == rhs


@given(st.integers(0, 10**6))
def test_multiplication_is_associative(seed):
    rng = random.Random(seed)
    n = rng.choice((2, 3))
    x, y, z = (random_element(rng, n, terms=2, total=2) for _ in range(3))
    assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))


def test_normal_order_agrees_with_multiplication():
    w = Word(2, ((2, 1), (1, 2), (1, 1)))
    direct = normal_order(w)
    stepwise = multiply(
        multiply(gen(2, 2, 1), gen(2, 1, 2)), gen(2, 1, 1)
    )
    assert direct == stepwise


def test_normal_order_scales_by_coeff():
    w = Word(2, ((2, 2), (1, 1)), coeff=LaurentPoly({1: 3}))
    assert normal_order(w) == normal_order(Word(2, ((2, 2), (1, 1)))).scale(
        LaurentPoly({1: 3})
    )


# -- bar and sigma ------------------------------------------------------------


@given(st.integers(0, 10**6))
def test_bar_is_anti_involution(seed):
    rng = random.Random(seed)
    n = rng.choice((2, 3))
    x = random_element(rng, n, terms=2, total=2)
    y = random_element(rng, n, terms=2, total=2)
    assert bar_element(bar_element(x)) == x
    assert bar_element(multiply(x, y)) == multiply(bar_element(y), bar_element(x))


def test_bar_fixes_generators_and_inverts_q():
    g = gen(2, 1, 2)
    assert bar_element(g) == g
    assert bar_element(g.scale(LaurentPoly.q_power(3))) == g.scale(
        LaurentPoly.q_power(-3)
    )


@given(st.integers(0, 10**6))
def test_sigma_is_involutive_homomorphism(seed):
    rng = random.Random(seed)
    n = rng.choice((2, 3))
    x = random_element(rng, n, terms=2, total=2)
    y = random_element(rng, n, terms=2, total=2)
    assert sigma_element(sigma_element(x)) == x
    assert sigma_element(multiply(x, y)) == multiply(sigma_element(x), sigma_element(y))


def test_sigma_transposes_generators():
    assert sigma_element(gen(3, 1, 3)) == gen(3, 3, 1)


# -- normalized monomials ------------------------------------------------------


def test_scaled_monomial_leading_coefficient():
    A = ExpMatrix([[1, 1], [0, 0]])
    x = scaled_monomial(A)
    assert x.coeff(A) == LaurentPoly.q_power(-d_exponent(A))


@given(st.integers(0, 10**6))
def test_normalize_denormalize_round_trip(seed):
    rng = random.Random(seed)
    n = rng.choice((2, 3))
    x = random_element(rng, n, terms=3, total=2)
    assert denormalize(n, normalize(x)) == x


def test_element_power_ratio():
    x = scaled_monomial(ExpMatrix([[1, 0], [0, 1]]))
    assert element_power_ratio(x, x) == 0
    assert element_power_ratio(x, x.scale(LaurentPoly.q_power(-3))) == 3
    assert element_power_ratio(x, x + x) is None
    assert element_power_ratio(x, gen(2, 1, 1)) is None
    zero = AlgebraElement.zero(2)
    assert element_power_ratio(zero, zero) == 0
    assert element_power_ratio(x, zero) is None


# -- serialization -------------------------------------------------------------


@given(st.integers(0, 10**6))
def test_json_round_trip(seed):
    rng = random.Random(seed)
    n = rng.choice((2, 3))
    x = random_element(rng, n, terms=3, total=2)
    data = json.loads(json.dumps(x.to_json_dict()))
    assert AlgebraElement.from_json_dict(data) == x


def test_str_is_lex_descending():
    d = quantum_determinant(2)
    assert str(d) == "Z[[1,0],[0,1]] - q^2 Z[[0,1],[1,0]]"


# -- determinant and minors ------------------------------------------------------


def test_quantum_determinant_pinned():
    d = quantum_determinant(2)
    assert d.coeff(ExpMatrix.identity(2)) == ONE
    assert d.coeff(ExpMatrix([[0, 1], [1, 0]])) == -Q2
    assert len(d.support()) == 2
    assert len(quantum_determinant(3).support()) == 6


@pytest.mark.parametrize("n", [2, 3])
def test_determinant_is_central(n):
    d = quantum_determinant(n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            g = gen(n, i, j)
            assert multiply(d, g) == multiply(g, d)


@pytest.mark.parametrize("n", [2, 3])
def test_determinant_is_bar_invariant(n):
    d = quantum_determinant(n)
    assert bar_element(d) == d


def test_quantum_minor_errors():
    with pytest.raises(BadIndexSet):
        quantum_minor(2, (1, 2), (1,))
    with pytest.raises(BadIndexSet):
        quantum_minor(2, (1, 3), (1, 2))
    with pytest.raises(BadIndexSet):
        quantum_minor(2, (1, 1), (1, 2))


def test_corner_minors():
    assert corner_minor(3, 3) == quantum_determinant(3)
    m = corner_minor(3, 1)
    assert m == gen(3, 1, 3)
    mt = corner_minor_transposed(3, 1)
    assert mt == gen(3, 3, 1)
    assert trailing_principal_minor(3, 3) == gen(3, 3, 3)
    assert trailing_principal_minor(2, 1) == quantum_determinant(2)


def test_size_mismatch_detected():
    with pytest.raises(SizeMismatch):
        multiply(gen(2, 1, 1), gen(3, 1, 1))


# -- generator versus corner minor commutation ---------------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_region_commutation_table(n):
    report = region_commutation_report(n)
    assert len(report) == n * n * n
    for entry in report:
        assert entry["pass"], entry
        assert entry["expected"] in (0, 2, -2)


def test_region_exponent_matches_direct_product():
    # spot check one cell of each region kind at n = 3, t = 2
    n, t = 3, 2
    M = corner_minor(n, t)
    for (i, j) in ((1, 1), (3, 3), (1, 2), (3, 1)):
        g = gen(n, i, j)
        k = element_power_ratio(multiply(g, M), multiply(M, g))
        assert k == region_exponent(n, t, i, j)
