"""Exact arithmetic in the max-plus semifield over two ordered value domains.

A scalar is either the tropical zero (the neutral element of the semifield
addition) or a finite exact rational.  Two interchangeable value domains are
supported:

* ``additive``       -- rationals under (max, +); the zero is -infinity and
  the unit is the number 0;
* ``multiplicative`` -- positive rationals under (max, *); the zero is the
  number 0 and the unit is 1.

The multiplicative domain exists so that classical instances can be mapped
to tropical ones exactly: every algorithm here only ever compares residuals
``b (/) a``, and those comparisons agree with comparisons of logarithms
while staying inside the rationals.  No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Optional, Sequence, Union

from .errors import DimensionError, DomainMismatchError

ADDITIVE = "additive"
MULTIPLICATIVE = "multiplicative"

Rational = Union[int, Fraction]
#: Raw entry of a vector/matrix; ``None`` encodes the tropical zero.
RawValue = Optional[Rational]

# Residual classification codes, ordered: zero < finite < +infinity.
RES_ZERO, RES_FINITE, RES_INFINITE = 0, 1, 2


def _check_value(value: RawValue, domain: str) -> None:
    if domain not in (ADDITIVE, MULTIPLICATIVE):
        raise ValueError(f"unknown value domain: {domain!r}")
    if value is None:
        return
    if not isinstance(value, (int, Fraction)):
        raise TypeError(f"entries must be int or Fraction, got {type(value).__name__}")
    if domain == MULTIPLICATIVE and value <= 0:
        raise ValueError("finite multiplicative-domain values must be positive")


def _same_domain(a: str, b: str) -> None:
    if a != b:
        raise DomainMismatchError(f"mixed value domains: {a!r} and {b!r}")


@total_ordering
@dataclass(frozen=True, slots=True)
class TropScalar:
    """One semifield element: the tropical zero or a finite rational.

    ``value is None`` encodes the tropical zero of the active domain
    (-infinity in the additive domain, the number 0 in the multiplicative
    one).  Comparison is total with the zero below every finite value.
    """

    value: RawValue
    domain: str = ADDITIVE

    def __post_init__(self) -> None:
        _check_value(self.value, self.domain)

    @property
    def is_zero(self) -> bool:
        return self.value is None

    def __lt__(self, other: "TropScalar") -> bool:
        if not isinstance(other, TropScalar):
            return NotImplemented
        _same_domain(self.domain, other.domain)
        if self.value is None:
            return other.value is not None
        return other.value is not None and self.value < other.value

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        if self.value is None:
            return f"TropScalar(zero, {self.domain})"
        return f"TropScalar({self.value!s}, {self.domain})"


def trop_zero(domain: str = ADDITIVE) -> TropScalar:
    return TropScalar(None, domain)


def trop_unit(domain: str = ADDITIVE) -> TropScalar:
    """Neutral element of the semifield multiplication."""
    return TropScalar(0 if domain == ADDITIVE else 1, domain)


def trop_add(a: TropScalar, b: TropScalar) -> TropScalar:
    """Semifield addition: the maximum in the domain order."""
    _same_domain(a.domain, b.domain)
    return b if a < b else a


def trop_mul(a: TropScalar, b: TropScalar) -> TropScalar:
    """Semifield multiplication, with the zero absorbing."""
    _same_domain(a.domain, b.domain)
    if a.value is None or b.value is None:
        return TropScalar(None, a.domain)
    if a.domain == ADDITIVE:
        return TropScalar(a.value + b.value, ADDITIVE)
    return TropScalar(a.value * b.value, MULTIPLICATIVE)


@total_ordering
@dataclass(frozen=True, slots=True)
class ExtendedScalar:
    """A residual ``b (/) a``: a semifield element or +infinity.

    +infinity arises exactly when the divisor is the tropical zero (also when
    both operands are).  Residuals never enter matrices; they only get
    compared and, when finite-or-zero, converted back with `as_scalar`.
    """

    value: RawValue
    domain: str = ADDITIVE
    infinite: bool = False

    def __post_init__(self) -> None:
        if self.infinite and self.value is not None:
            raise ValueError("an infinite residual carries no finite value")
        _check_value(self.value, self.domain)

    @property
    def code(self) -> int:
        if self.infinite:
            return RES_INFINITE
        return RES_ZERO if self.value is None else RES_FINITE

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def as_scalar(self) -> TropScalar:
        if self.infinite:
            raise ValueError("+infinity is not a semifield element")
        return TropScalar(self.value, self.domain)

    def __lt__(self, other: "ExtendedScalar") -> bool:
        if not isinstance(other, ExtendedScalar):
            return NotImplemented
        _same_domain(self.domain, other.domain)
        a, b = self.code, other.code
        if a != b:
            return a < b
        if a == RES_FINITE:
            return self.value < other.value
        return False


def _exact_div(b: Rational, a: Rational) -> Fraction:
    # int / int would produce a float; route through Fraction instead.
    if type(b) is int and type(a) is int:
        return Fraction(b, a)
    return b / a


def trop_residual(b: TropScalar, a: TropScalar) -> ExtendedScalar:
    """The largest x with ``x (*) a <= b``, i.e. b - a resp. b / a.

    Dividing by the tropical zero yields +infinity, including the case where
    b is itself the zero.
    """
    _same_domain(a.domain, b.domain)
    if a.value is None:
        return ExtendedScalar(None, b.domain, infinite=True)
    if b.value is None:
        return ExtendedScalar(None, b.domain)
    if b.domain == ADDITIVE:
        return ExtendedScalar(b.value - a.value, ADDITIVE)
    return ExtendedScalar(_exact_div(b.value, a.value), MULTIPLICATIVE)


def residual_parts(b: RawValue, a: RawValue, domain: str) -> tuple:
    """Raw-value counterpart of `trop_residual`: returns (code, finite value)."""
    if a is None:
        return RES_INFINITE, None
    if b is None:
        return RES_ZERO, None
    if domain == ADDITIVE:
        return RES_FINITE, b - a
    return RES_FINITE, _exact_div(b, a)


def column_residual_argmin(b_values: Sequence[RawValue],
                           column_values: Sequence[RawValue],
                           domain: str) -> tuple:
    """Minimum residual ``b_k (/) a_k`` down one column and all attaining rows.

    Returns (code, value, rows) where value is None unless code is
    RES_FINITE.  This is the hot primitive behind graph construction, basis
    admissibility and pivoting, so it works on raw values.
    """
    additive = domain == ADDITIVE
    best_code = 3
    best_value = None
    rows: list = []
    for k, a in enumerate(column_values):
        b = b_values[k]
        if a is None:
            code, value = RES_INFINITE, None
        elif b is None:
            code, value = RES_ZERO, None
        elif additive:
            code, value = RES_FINITE, b - a
        else:
            code, value = RES_FINITE, _exact_div(b, a)
        if code < best_code:
            best_code, best_value, rows = code, value, [k]
        elif code == best_code:
            if code != RES_FINITE:
                rows.append(k)
            elif value < best_value:
                best_value, rows = value, [k]
            elif value == best_value:
                rows.append(k)
    return best_code, best_value, tuple(rows)


def _norm_values(values: Iterable, domain: str) -> tuple:
    out = []
    for v in values:
        if isinstance(v, TropScalar):
            _same_domain(v.domain, domain)
            v = v.value
        _check_value(v, domain)
        out.append(v)
    return tuple(out)


@dataclass(frozen=True, slots=True)
class TropVector:
    """Dense vector of semifield elements sharing one domain.

    Storage is raw (`RawValue` per entry); `scalar` builds element views on
    demand.  Instances are immutable and safe to share between threads.
    """

    values: tuple
    domain: str = ADDITIVE

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _norm_values(self.values, self.domain))
        if not self.values:
            raise DimensionError("vectors must have positive length")

    def __len__(self) -> int:
        return len(self.values)

    def scalar(self, i: int) -> TropScalar:
        return TropScalar(self.values[i], self.domain)

    @property
    def scalars(self) -> tuple:
        return tuple(TropScalar(v, self.domain) for v in self.values)

    def support(self) -> tuple:
        """Indices of the entries distinct from the tropical zero."""
        return tuple(i for i, v in enumerate(self.values) if v is not None)

    @classmethod
    def zeros(cls, n: int, domain: str = ADDITIVE) -> "TropVector":
        return cls((None,) * n, domain)

    @classmethod
    def constant(cls, n: int, value: RawValue, domain: str = ADDITIVE) -> "TropVector":
        return cls((value,) * n, domain)


@dataclass(frozen=True, slots=True)
class TropMatrix:
    """Dense matrix of semifield elements sharing one domain."""

    rows: tuple
    domain: str = ADDITIVE

    def __post_init__(self) -> None:
        rows = tuple(_norm_values(row, self.domain) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows or not rows[0]:
            raise DimensionError("matrices must have positive dimensions")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionError("matrix rows must all have the same length")

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0])

    def entry(self, i: int, j: int) -> TropScalar:
        return TropScalar(self.rows[i][j], self.domain)

    def row_values(self, i: int) -> tuple:
        return self.rows[i]

    def column_values(self, j: int) -> tuple:
        return tuple(row[j] for row in self.rows)

    @property
    def scalar_rows(self) -> tuple:
        return tuple(tuple(TropScalar(v, self.domain) for v in row) for row in self.rows)

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int, domain: str = ADDITIVE) -> "TropMatrix":
        return cls(((None,) * n_cols,) * n_rows, domain)

    @classmethod
    def identity(cls, n: int, domain: str = ADDITIVE) -> "TropMatrix":
        unit = 0 if domain == ADDITIVE else 1
        return cls(tuple(tuple(unit if i == j else None for j in range(n))
                         for i in range(n)), domain)

    def hstack(self, other: "TropMatrix") -> "TropMatrix":
        _same_domain(self.domain, other.domain)
        if self.n_rows != other.n_rows:
            raise DimensionError("horizontal stacking needs equal row counts")
        return TropMatrix(tuple(a + b for a, b in zip(self.rows, other.rows)),
                          self.domain)


def trop_matvec(matrix: TropMatrix, vector: TropVector) -> TropVector:
    """Matrix-vector product: component i is ``max_j (M_ij (*) x_j)``."""
    _same_domain(matrix.domain, vector.domain)
    if matrix.n_cols != len(vector):
        raise DimensionError(
            f"cannot apply {matrix.n_rows}x{matrix.n_cols} matrix to "
            f"length-{len(vector)} vector")
    additive = matrix.domain == ADDITIVE
    xs = vector.values
    out = []
    for row in matrix.rows:
        best = None
        for a, x in zip(row, xs):
            if a is None or x is None:
                continue
            t = a + x if additive else a * x
            if best is None or t > best:
                best = t
        out.append(best)
    return TropVector(tuple(out), matrix.domain)


def trop_matmul(left: TropMatrix, right: TropMatrix) -> TropMatrix:
    """Matrix product with (max, +) resp. (max, *) in place of (+, *)."""
    _same_domain(left.domain, right.domain)
    if left.n_cols != right.n_rows:
        raise DimensionError("inner dimensions do not conform")
    additive = left.domain == ADDITIVE
    out = []
    for row in left.rows:
        new_row = []
        for j in range(right.n_cols):
            best = None
            for a, brow in zip(row, right.rows):
                b = brow[j]
                if a is None or b is None:
                    continue
                t = a + b if additive else a * b
                if best is None or t > best:
                    best = t
            new_row.append(best)
        out.append(tuple(new_row))
    return TropMatrix(tuple(out), left.domain)


def trop_dot(u: TropVector, v: TropVector) -> TropScalar:
    """Bilinear pairing ``max_i (u_i (*) v_i)``."""
    _same_domain(u.domain, v.domain)
    if len(u) != len(v):
        raise DimensionError("dot product needs equal lengths")
    additive = u.domain == ADDITIVE
    best = None
    for a, b in zip(u.values, v.values):
        if a is None or b is None:
            continue
        t = a + b if additive else a * b
        if best is None or t > best:
            best = t
    return TropScalar(best, u.domain)
