"""Exact computer algebra for quantum matrices and their canonical basis.

The package computes in the quantized coordinate ring of n-by-n matrices
over Z[q, q^-1], constructs the dual canonical basis by a triangular
bar-invariance solve, passes to the unit-determinant quotient, applies
the quantized enveloping algebra bimodule action, and mechanically
verifies the multiplicative identities the basis satisfies.
"""

from .laurent import (
    LaurentPoly,
    ParseError,
    PreconditionViolation,
    antisymmetric_split,
    bar_q,
    parse_poly,
    poly_to_str,
    quantum_integer,
)
from .qmatrix import (
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
from .canon import (
    BadRegion,
    Block,
    CanonElement,
    DEFAULT_CONFIG,
    DegreeBoundExceeded,
    InternalInconsistency,
    NotALadder,
    VerifyConfig,
    basis_membership,
    broken_line_exponent,
    canonical_basis_block,
    canonical_basis_element,
    clear_basis_cache,
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
from .slquotient import (
    SLElement,
    divide_by_det,
    phi,
    reduce_index,
    sl_basis_element,
    sl_from_algebra,
    sl_generator,
)
from .uqaction import (
    AS_PRINTED,
    ActionConvention,
    BadGeneratorIndex,
    CONVENTIONS,
    STANDARD,
    WeightVector,
    act,
    alpha_alpha_pairing,
    check_bimodule_axioms,
    check_relation_preservation,
    highest_weight_check,
    monomial_weight,
    parse_generator,
    select_convention,
)

__version__ = "0.1.0"

__all__ = [
    "AS_PRINTED",
    "ActionConvention",
    "AlgebraElement",
    "BadGeneratorIndex",
    "BadIndexSet",
    "BadRegion",
    "Block",
    "CONVENTIONS",
    "CanonElement",
    "DEFAULT_CONFIG",
    "DegreeBoundExceeded",
    "ExpMatrix",
    "InternalInconsistency",
    "LaurentPoly",
    "NotALadder",
    "ParseError",
    "PreconditionViolation",
    "STANDARD",
    "SLElement",
    "SizeMismatch",
    "VerifyConfig",
    "WeightVector",
    "Word",
    "act",
    "alpha_alpha_pairing",
    "antisymmetric_split",
    "bar_element",
    "bar_q",
    "basis_membership",
    "broken_line_exponent",
    "canonical_basis_block",
    "canonical_basis_element",
    "check_bimodule_axioms",
    "check_relation_preservation",
    "clear_basis_cache",
    "corner_minor",
    "corner_minor_transposed",
    "d_exponent",
    "denormalize",
    "diagonal_product",
    "divide_by_det",
    "element_power_ratio",
    "enumerate_block",
    "equiv_up_to_q_power",
    "highest_weight_check",
    "ladder_minor_factors",
    "margin_vectors",
    "matrices_up_to_degree",
    "minor_exponent",
    "monomial_weight",
    "multiply",
    "normal_order",
    "normalize",
    "oracle_unique_ic",
    "parse_generator",
    "parse_poly",
    "phi",
    "poly_to_str",
    "pr_statistic",
    "predicted_factors",
    "quantum_determinant",
    "quantum_integer",
    "quantum_minor",
    "reduce_index",
    "region_commutation_report",
    "region_exponent",
    "scaled_monomial",
    "select_convention",
    "sigma_element",
    "sl_basis_element",
    "sl_from_algebra",
    "sl_generator",
    "split_by_region",
    "staircase_regions",
    "support_closure",
    "trailing_principal_minor",
    "verify_broken_line",
    "verify_det_multiplication",
    "verify_ladder_factorization",
    "verify_minor_multiplication",
    "verify_q_commuting_pairs",
    "verify_transpose_symmetry",
]
