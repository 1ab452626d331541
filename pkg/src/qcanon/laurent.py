"""Exact arithmetic in Z[q, q^-1].

Every coefficient in this package is an integer Laurent polynomial in a
single variable q.  Arithmetic is exact (python ints, so no overflow),
and the module provides the involution q -> q^-1 together with the
splitting step h - bar(h) = g used by the triangular basis solver.
"""

from __future__ import annotations

import re


class PreconditionViolation(ValueError):
    """An argument failed a documented precondition."""


class ParseError(ValueError):
    """Malformed polynomial text."""


class LaurentPoly:
    """Sparse Laurent polynomial with integer coefficients.

    Backed by a dict {exponent: coefficient}; zero coefficients are never
    stored, the empty dict is the zero polynomial.  Instances are treated
    as immutable (nothing mutates .terms after construction).
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            self.terms = {}
        elif isinstance(terms, int):
            self.terms = {0: terms} if terms else {}
        elif isinstance(terms, dict):
            self.terms = {e: c for e, c in terms.items() if c}
        else:
            raise TypeError(f"cannot build LaurentPoly from {type(terms).__name__}")
        self._hash = None

    # -- constructors ------------------------------------------------

    @staticmethod
    def q_power(k: int) -> "LaurentPoly":
        """The monomial q^k."""
        return LaurentPoly({k: 1})

    # -- queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def min_exp(self) -> int:
        if not self.terms:
            raise PreconditionViolation("zero polynomial has no minimal exponent")
        return min(self.terms)

    def max_exp(self) -> int:
        if not self.terms:
            raise PreconditionViolation("zero polynomial has no maximal exponent")
        return max(self.terms)

    def as_pure_power(self):
        """Exponent k if self == q^k (coefficient exactly 1), else None."""
        if len(self.terms) != 1:
            return None
        (e, c), = self.terms.items()
        return e if c == 1 else None

    def coeff(self, e: int) -> int:
        return self.terms.get(e, 0)

    def in_q_zq(self) -> bool:
        """True when every exponent is >= 1 (member of qZ[q]); zero counts."""
        return all(e >= 1 for e in self.terms)

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return _wrap(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) - c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return _wrap(out)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return _wrap({e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return ZERO
        if len(a) == 1:
            (ea, ca), = a.items()
            return _wrap({ea + e: ca * c for e, c in b.items()})
        if len(b) == 1:
            (eb, cb), = b.items()
            return _wrap({e + eb: c * cb for e, c in a.items()})
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
        return _wrap(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise PreconditionViolation("only nonnegative integer powers")
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shifted(self, k: int) -> "LaurentPoly":
        """Multiply by q^k (cheap exponent shift)."""
        if k == 0:
            return self
        return _wrap({e + k: c for e, c in self.terms.items()})

    def bar(self) -> "LaurentPoly":
        """The involution q -> q^-1."""
        return _wrap({-e: c for e, c in self.terms.items()})

    # -- hashing / comparison ------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- text form ------------------------------------------------------

    def __str__(self):
        return poly_to_str(self)

    def __repr__(self):
        return f"LaurentPoly({self.terms!r})"


def _wrap(terms: dict) -> LaurentPoly:
    p = LaurentPoly.__new__(LaurentPoly)
    p.terms = terms
    p._hash = None
    return p


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly(x)
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly(1)
Q = LaurentPoly.q_power(1)
QINV = LaurentPoly.q_power(-1)
# q^2 - q^-2, the coefficient showing up in the straightening relation
Q2_MINUS_QM2 = LaurentPoly({2: 1, -2: -1})


def q_power(k: int) -> LaurentPoly:
    return LaurentPoly.q_power(k)


def bar_q(p: LaurentPoly) -> LaurentPoly:
    return p.bar()


def as_pure_power(p: LaurentPoly):
    return p.as_pure_power()


def antisymmetric_split(g: LaurentPoly) -> LaurentPoly:
    """The unique h in qZ[q] with h - bar(h) = g.

    Requires bar(g) = -g (so g has no constant term and its exponents
    pair up antisymmetrically).  h is just the positive-exponent part
    of g.
    """
    if g.bar() != -g:
        raise PreconditionViolation(f"not antisymmetric under bar: {g}")
    return _wrap({e: c for e, c in g.terms.items() if e > 0})


def quantum_integer(m: int) -> LaurentPoly:
    """(q^2m - q^-2m) / (q^2 - q^-2) as an explicit Laurent polynomial.

    Equals q^(2m-2) + q^(2m-6) + ... + q^(2-2m) for m > 0, is 0 at m = 0
    and odd under m -> -m.
    """
    if m == 0:
        return ZERO
    if m < 0:
        return -quantum_integer(-m)
    return _wrap({2 * (m - 1 - 2 * k): 1 for k in range(m)})


# -- text round trip ----------------------------------------------------

_TERM_RE = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?:(?P<coeff>\d+)\s*)?(?P<q>q(?:\^(?P<exp>-?\d+))?)?"
)


def poly_to_str(p: LaurentPoly) -> str:
    """Render with terms in ascending exponent order, e.g. '-q^-2 + 3 + q^4'."""
    if not p.terms:
        return "0"
    pieces = []
    for e in sorted(p.terms):
        c = p.terms[e]
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            head = "" if mag == 1 else str(mag)
            body = head + ("q" if e == 1 else f"q^{e}")
        if not pieces:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append(("- " if c < 0 else "+ ") + body)
    return " ".join(pieces)


def parse_poly(text: str) -> LaurentPoly:
    """Inverse of poly_to_str; accepts the same grammar."""
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial text")
    if s == "0":
        return ZERO
    out = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if m is None or (m.group("coeff") is None and m.group("q") is None):
            raise ParseError(f"bad term at position {pos} in {text!r}")
        if not first and m.group("sign") is None:
            raise ParseError(f"missing +/- between terms at position {pos} in {text!r}")
        sign = -1 if m.group("sign") == "-" else 1
        coeff = int(m.group("coeff")) if m.group("coeff") is not None else 1
        if m.group("q") is not None:
            exp = int(m.group("exp")) if m.group("exp") is not None else 1
        else:
            exp = 0
        c = out.get(exp, 0) + sign * coeff
        if c:
            out[exp] = c
        else:
            out.pop(exp, None)
        pos = m.end()
        first = False
    return _wrap(out)
