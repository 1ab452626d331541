"""Dual canonical basis: triangular solve, oracle, and product identities."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcanon.laurent import LaurentPoly, ONE, PreconditionViolation
from qcanon.qmatrix import (
    AlgebraElement,
    ExpMatrix,
    SizeMismatch,
    bar_element,
    d_exponent,
    multiply,
    normalize,
    quantum_determinant,
    scaled_monomial,
    sigma_element,
)
from qcanon.canon import (
    BadRegion,
    DEFAULT_CONFIG,
    NotALadder,
    VerifyConfig,
    basis_membership,
    broken_line_exponent,
    canonical_basis_block,
    canonical_basis_element,
    diagonal_product,
    enumerate_block,
    equiv_up_to_q_power,
    ladder_minor_factors,
    margin_vectors,
    matrices_up_to_degree,
    minor_exponent,
    oracle_unique_ic,
    predicted_factors,
    split_by_region,
    staircase_regions,
    support_closure,
    verify_broken_line,
    verify_det_multiplication,
    verify_ladder_factorization,
    verify_minor_multiplication,
    verify_q_commuting_pairs,
    verify_transpose_symmetry,
)

from conftest import random_matrix

Q2 = LaurentPoly.q_power(2)


# -- enumeration ---------------------------------------------------------------


def test_enumerate_block_contents():
    b = enumerate_block((1, 1), (1, 1))
    assert [A.rows for A in b.matrices] == [((0, 1), (1, 0)), ((1, 0), (0, 1))]
    assert len(enumerate_block((1, 1, 1), (1, 1, 1)).matrices) == 6
    assert enumerate_block((2, 0), (0, 1)).matrices == ()


def test_enumerate_block_errors():
    with pytest.raises(SizeMismatch):
        enumerate_block((1, 1), (1,))
    with pytest.raises(PreconditionViolation):
        enumerate_block((-1, 1), (0, 0))


def test_matrices_up_to_degree_counts():
    assert len(matrices_up_to_degree(2, 0)) == 1
    assert len(matrices_up_to_degree(2, 1)) == 5
    assert len(matrices_up_to_degree(2, 2)) == 15
    assert len(margin_vectors(3, 2)) == 6


def test_blocks_are_ascending():
    mats = enumerate_block((2, 1), (1, 2)).matrices
    assert list(mats) == sorted(mats)


# -- the basis itself ------------------------------------------------------------


def test_identity_basis_element_is_determinant():
    for n in (2, 3):
        ce = canonical_basis_element(ExpMatrix.identity(n))
        assert ce.element == quantum_determinant(n)


def test_single_row_monomial_is_basis_element():
    A = ExpMatrix([[1, 1], [0, 0]])
    ce = canonical_basis_element(A)
    assert ce.element == scaled_monomial(A)
    assert ce.h == {}


def test_basis_expansion_structure():
    A = ExpMatrix.identity(2)
    ce = canonical_basis_element(A)
    B = ExpMatrix([[0, 1], [1, 0]])
    assert set(ce.h) == {B}
    assert ce.h[B] == -Q2
    assert ce.element.coeff(A) == ONE


@pytest.mark.parametrize("n,cap", [(2, 3), (3, 2)])
def test_basis_is_bar_invariant(n, cap):
    for A in matrices_up_to_degree(n, cap):
        e = canonical_basis_element(A).element
        assert bar_element(e) == e


@pytest.mark.parametrize("n,cap", [(2, 3), (3, 2)])
def test_h_coefficients_have_positive_exponents(n, cap):
    for A in matrices_up_to_degree(n, cap):
        ce = canonical_basis_element(A)
        for B, h in ce.h.items():
            assert h.in_q_zq(), (A, B, h)
            assert B < A
            assert B.ro() == A.ro() and B.co() == A.co()


@pytest.mark.parametrize("n,cap", [(2, 3), (3, 2)])
def test_bar_expansion_unitriangular(n, cap):
    for A in matrices_up_to_degree(n, cap):
        nf = normalize(bar_element(scaled_monomial(A)))
        assert nf[A] == ONE
        for B in nf:
            assert B <= A
            assert B.ro() == A.ro() and B.co() == A.co()


def test_block_solve_matches_elementwise():
    block = canonical_basis_block((1, 1), (1, 1))
    assert [ce.index for ce in block] == [
        ExpMatrix([[0, 1], [1, 0]]),
        ExpMatrix([[1, 0], [0, 1]]),
    ]
    for ce in block:
        assert canonical_basis_element(ce.index) == ce


# -- membership and equivalence ---------------------------------------------------


def test_basis_membership():
    A = ExpMatrix.identity(2)
    b = canonical_basis_element(A).element
    assert basis_membership(b) == (A, 0)
    assert basis_membership(b.scale(LaurentPoly.q_power(3))) == (A, 3)
    assert basis_membership(b.scale(LaurentPoly({0: 2}))) is None
    other = canonical_basis_element(ExpMatrix([[0, 1], [1, 0]])).element
    assert basis_membership(b + other) is None
    assert basis_membership(AlgebraElement.zero(2)) is None


def test_equiv_up_to_q_power():
    x = canonical_basis_element(ExpMatrix.identity(2)).element
    assert equiv_up_to_q_power(x, x.scale(LaurentPoly.q_power(-2))) == 2
    assert equiv_up_to_q_power(x, x + x) is None


def test_support_closure_contains_bar_support():
    for A in matrices_up_to_degree(2, 3):
        closure = support_closure(A)
        assert A in closure
        for B in bar_element(scaled_monomial(A)).support():
            assert B in closure


# -- determinant multiplication -----------------------------------------------------


@pytest.mark.parametrize("n,cap", [(2, 2), (3, 1)])
def test_det_multiplication(n, cap):
    for A in matrices_up_to_degree(n, cap):
        assert verify_det_multiplication(A)


def test_diagonal_product_matches_basis():
    assert diagonal_product(2, (1, 2)) == canonical_basis_element(
        ExpMatrix.diagonal((1, 2))
    ).element
    assert diagonal_product(3, (0, 1, 1)) == canonical_basis_element(
        ExpMatrix.diagonal((0, 1, 1))
    ).element


def test_diagonal_product_requires_ascending():
    with pytest.raises(PreconditionViolation):
        diagonal_product(2, (2, 1))


# -- corner minor multiplication ------------------------------------------------------


def test_minor_exponent_pinned():
    A = ExpMatrix([[1, 1], [0, 0]])
    # row side: sum of first t row margins minus last t column margins
    assert minor_exponent(A, 1, "row") == A.ro()[0] - A.co()[1]
    assert minor_exponent(A, 1, "column") == A.co()[0] - A.ro()[1]


@pytest.mark.parametrize("n,cap", [(2, 2), (3, 1)])
def test_minor_multiplication(n, cap):
    for A in matrices_up_to_degree(n, cap):
        for t in range(1, n + 1):
            assert verify_minor_multiplication(A, t, "row")
            assert verify_minor_multiplication(A, t, "column")


def test_minor_multiplication_rejects_bad_side():
    with pytest.raises(PreconditionViolation):
        verify_minor_multiplication(ExpMatrix.zero(2), 1, "diagonal")
    with pytest.raises(PreconditionViolation):
        verify_minor_multiplication(ExpMatrix.zero(2), 3, "row")


# -- transpose symmetry ---------------------------------------------------------------


@pytest.mark.parametrize("n,cap", [(2, 3), (3, 2)])
def test_transpose_symmetry(n, cap):
    for A in matrices_up_to_degree(n, cap):
        assert verify_transpose_symmetry(A)


def test_transpose_carries_basis_to_basis():
    A = ExpMatrix([[1, 1], [0, 1]])
    assert sigma_element(canonical_basis_element(A).element) == canonical_basis_element(
        A.transpose()
    ).element


# -- staircase splits -------------------------------------------------------------------


def test_staircase_region_counts():
    assert len(staircase_regions(1)) == 2
    assert len(staircase_regions(2)) == 6
    assert len(staircase_regions(3)) == 20


def test_staircase_regions_are_northwest_closed():
    for cells in staircase_regions(3):
        for (i, j) in cells:
            if i > 1:
                assert (i - 1, j) in cells
            if j > 1:
                assert (i, j - 1) in cells


def test_split_by_region():
    A = ExpMatrix([[1, 1], [1, 0]])
    upper, lower = split_by_region(A, {(1, 1), (1, 2)})
    assert upper.rows == ((1, 1), (0, 0))
    assert lower.rows == ((0, 0), (1, 0))
    assert upper.add(lower) == A


def test_non_staircase_region_rejected():
    with pytest.raises(BadRegion):
        verify_broken_line(ExpMatrix.zero(2), {(2, 2)})
    with pytest.raises(BadRegion):
        verify_broken_line(ExpMatrix.zero(2), {(1, 1), (2, 2)})
    with pytest.raises(BadRegion):
        verify_broken_line(ExpMatrix.zero(2), {(1, 1), (0, 5)})


def test_broken_line_exponent():
    up = ExpMatrix([[1, 1], [0, 0]])
    lo = ExpMatrix([[0, 0], [1, 1]])
    # shared columns contribute c+ * c- per column
    assert broken_line_exponent(up, lo) == 2
    assert broken_line_exponent(ExpMatrix([[0, 1], [0, 0]]), ExpMatrix([[0, 0], [1, 0]])) == 0


def test_broken_line_commuting_case():
    # antidiagonal split: both factors single letters, q-commuting
    A = ExpMatrix([[0, 1], [1, 0]])
    rep = verify_broken_line(A, {(1, 1), (1, 2)})
    assert rep["pass"]
    assert rep["detail"]["q_commuting"] is True
    assert rep["detail"]["product_in_basis"] is True
    assert rep["detail"]["exponent"] == 0
    assert rep["detail"]["identity_ok"] is True
    assert rep["detail"]["symmetry_ok"] is True


def test_broken_line_non_commuting_case():
    # diagonal split through the long relation: neither boolean holds
    A = ExpMatrix.identity(2)
    rep = verify_broken_line(A, {(1, 1)})
    assert rep["pass"]
    assert rep["detail"]["q_commuting"] is False
    assert rep["detail"]["product_in_basis"] is False
    assert rep["detail"]["biconditional_ok"] is True


@pytest.mark.parametrize("n,cap", [(2, 3), (3, 2)])
def test_broken_line_sweep(n, cap):
    for A in matrices_up_to_degree(n, cap):
        for cells in staircase_regions(n):
            assert verify_broken_line(A, cells)["pass"], (A, sorted(cells))


# -- ladder factorization -----------------------------------------------------------------


def test_ladder_minor_factors_cover_matrix():
    A = ExpMatrix([[2, 1], [1, 1]])
    factors = ladder_minor_factors(A)
    total = ExpMatrix.zero(2)
    for rows, cols, e in factors:
        assert e > 0
        sub = ExpMatrix.zero(2)
        for k in range(len(rows)):
            sub = sub.add(ExpMatrix.unit(2, rows[k], cols[k]))
        for _ in range(e):
            total = total.add(sub)
    assert total == A


def test_predicted_factors_for_ascending_diagonal():
    # ascending diagonals factor through trailing principal minors
    factors = predicted_factors(ExpMatrix.diagonal((1, 2)))
    assert len(factors) == 2


def test_predicted_factors_rejects_non_ladder():
    with pytest.raises(NotALadder):
        predicted_factors(ExpMatrix([[0, 1], [1, 1]]))


@pytest.mark.parametrize("n", [2, 3])
def test_ladder_factorization_sweep(n):
    count = 0
    for A in matrices_up_to_degree(n, 4):
        if A.is_ladder() and max(max(r) for r in A.rows) <= 2:
            assert verify_ladder_factorization(A), A
            count += 1
    assert count > 0


def test_striped_matrices_are_ladders():
    for A in matrices_up_to_degree(3, 4):
        if A.is_striped():
            assert A.is_ladder()


# -- cross products landing in the basis -------------------------------------------------


def test_q_commuting_pairs_report():
    # Z12 * Z21 is the ordered monomial Z^[[0,1],[1,0]], itself basis
    b1 = enumerate_block((1, 0), (0, 1))
    b2 = enumerate_block((0, 1), (1, 0))
    rep = verify_q_commuting_pairs(b1, b2)
    assert rep["pass"]
    assert rep["detail"]["landed"] == 1
    entry = rep["detail"]["pairs"][0]
    assert entry["in_basis"] and entry["symmetry_ok"]
    assert entry["exponent"] == 0


def test_non_landing_pair_is_reported():
    # Z11 * Z22 is not equivalent to any basis element
    b1 = enumerate_block((1, 0), (1, 0))
    b2 = enumerate_block((0, 1), (0, 1))
    rep = verify_q_commuting_pairs(b1, b2)
    assert rep["pass"]
    assert rep["detail"]["landed"] == 0
    assert rep["detail"]["pairs"][0]["in_basis"] is False


# -- the independent oracle ----------------------------------------------------------------


@pytest.mark.parametrize(
    "R,C",
    [((1, 1), (1, 1)), ((2, 1), (1, 2)), ((1, 1, 1), (1, 1, 1))],
)
def test_oracle_matches_triangular_solve(R, C):
    block = enumerate_block(R, C)
    assert oracle_unique_ic(block) == canonical_basis_block(R, C)


def test_oracle_rejects_oversized_block():
    with pytest.raises(PreconditionViolation):
        oracle_unique_ic(enumerate_block((2, 2, 2), (2, 2, 2)))


# -- configuration ----------------------------------------------------------------------


def test_default_config():
    assert DEFAULT_CONFIG.degree_cap(2) == 4
    assert DEFAULT_CONFIG.degree_cap(3) == 4
    assert DEFAULT_CONFIG.degree_cap(4) == 3
    assert DEFAULT_CONFIG.ladder_entry_cap == 2
    cfg = VerifyConfig(degree_caps=((2, 1),))
    assert cfg.degree_cap(2) == 1


def test_canon_element_json_schema():
    ce = canonical_basis_element(ExpMatrix.identity(2))
    data = ce.to_json_dict()
    assert set(data) == {"n", "terms", "index", "h"}
    assert data["index"] == [[1, 0], [0, 1]]
