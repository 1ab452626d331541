"""The quantum special linear coordinate ring as a determinant quotient.

Setting the (central, bar-fixed) quantum determinant to one identifies two
algebra elements exactly when they differ by determinant factors.  Elements
are therefore carried as a pair (rep, shift): an ordinary quantum-matrix
element with every full determinant power divided out, plus the count of
powers removed.  Equality in the quotient compares normal-form reps; the
shift is bookkeeping.  The basis of the quotient is indexed by matrices
whose smallest diagonal entry is zero, one per determinant-shift coset.
"""

from __future__ import annotations

from dataclasses import dataclass

from .laurent import LaurentPoly, q_power
from .qmatrix import (
    AlgebraElement,
    ExpMatrix,
    SizeMismatch,
    bar_element,
    d_exponent,
    quantum_determinant,
    scaled_monomial,
)
from .canon import canonical_basis_element


def divide_by_det(x: AlgebraElement):
    """The exact quotient x / det_q, or None when det_q does not divide x.

    Multiplication by det_q is unitriangular on normalized monomials
    (Z(B - I) det_q = Z(B) plus lex-lower terms), so greedy elimination
    from the lex-largest support matrix downward either terminates at zero
    or hits an index with a zero diagonal entry, proving indivisibility.
    """
    n = x.n
    det = quantum_determinant(n)
    identity = ExpMatrix.identity(n)
    quotient = AlgebraElement.zero(n)
    residue = x
    while not residue.is_zero():
        B = residue.lex_max()
        if B.min_diag() < 1:
            return None
        piece = scaled_monomial(B.sub(identity)).scale(
            residue.coeff(B).shifted(d_exponent(B))
        )
        quotient = quotient + piece
        residue = residue - piece * det
    return quotient


class SLElement:
    """An element of the determinant-one quotient, in normal form."""

    __slots__ = ("rep", "shift")

    def __init__(self, rep: AlgebraElement, shift: int = 0):
        if rep.is_zero():
            shift = 0
        else:
            while True:
                divided = divide_by_det(rep)
                if divided is None:
                    break
                rep = divided
                shift += 1
        object.__setattr__(self, "rep", rep)
        object.__setattr__(self, "shift", shift)

    def __setattr__(self, name, value):
        raise AttributeError("SLElement is immutable")

    @property
    def n(self) -> int:
        return self.rep.n

    def _check(self, other):
        if not isinstance(other, SLElement):
            raise TypeError(f"expected SLElement, got {type(other).__name__}")
        if other.n != self.n:
            raise SizeMismatch(f"mixed sizes {self.n} and {other.n}")

    def __eq__(self, other):
        # quotient equality: determinant powers act trivially
        if not isinstance(other, SLElement):
            return NotImplemented
        return self.rep == other.rep

    def __hash__(self):
        return hash(("SLElement", self.rep))

    def __add__(self, other):
        self._check(other)
        return SLElement(self.rep + other.rep)

    def __sub__(self, other):
        self._check(other)
        return SLElement(self.rep - other.rep)

    def __mul__(self, other):
        if isinstance(other, SLElement):
            self._check(other)
            return SLElement(self.rep * other.rep, self.shift + other.shift)
        return SLElement(self.rep * other, self.shift)

    def __rmul__(self, other):
        return SLElement(self.rep.scale(other), self.shift)

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def __str__(self):
        if self.shift:
            return f"{self.rep} (det shift {self.shift})"
        return str(self.rep)

    def __repr__(self):
        return f"SLElement({self.rep!r}, shift={self.shift})"

    def to_json_dict(self) -> dict:
        data = self.rep.to_json_dict()
        data["det_shift"] = self.shift
        return data


def sl_generator(n: int, i: int, j: int) -> SLElement:
    """The matrix coefficient X_ij, the image of the plain generator."""
    return SLElement(AlgebraElement.generator(n, i, j))


def sl_from_algebra(x: AlgebraElement) -> SLElement:
    """The image of a quantum-matrix element in the quotient."""
    return SLElement(x)


def reduce_index(A: ExpMatrix):
    """(A - k I, k) with k the smallest diagonal entry of A.

    The first component is the canonical representative of the coset
    A + Z I with minimum diagonal entry zero.
    """
    k = A.min_diag()
    return A.shift_diag(-k), k


def sl_basis_element(A: ExpMatrix) -> SLElement:
    """The quotient basis element at the coset of A.

    Determinant multiplication shifts basis indices by the identity
    matrix, so the image of b(A) depends only on the coset of A; the
    stored rep is b of the reduced representative.
    """
    A0, k = reduce_index(A)
    return SLElement(canonical_basis_element(A0).element, k)


def phi(x: SLElement) -> SLElement:
    """The induced anti-automorphism: bar on reps, shift preserved.

    Well-defined on the quotient because bar fixes the quantum
    determinant; it fixes every matrix coefficient X_ij.
    """
    return SLElement(bar_element(x.rep), x.shift)
