"""Bases of tropical systems A (*) x = b and the pivot operation on them.

A basis is a size-n column set B together with a row-to-column bijection phi
such that, for every row i, the residual b_i (/) A_{i,phi(i)} is not
+infinity and is minimal down its column.  Degenerate systems are allowed;
nondegeneracy means each such minimum is finite and uniquely attained.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import DimensionError
from .semiring import (RES_FINITE, RES_INFINITE, TropMatrix, TropVector,
                       column_residual_argmin)


@dataclass(frozen=True)
class TropSystem:
    """A tropical feasibility system A (*) x = b."""

    A: TropMatrix
    b: TropVector

    def __post_init__(self) -> None:
        if len(self.b) != self.A.n_rows:
            raise DimensionError("rhs length must match the row count")
        if self.A.domain != self.b.domain:
            raise DimensionError("matrix and rhs must share one domain")

    @property
    def n(self) -> int:
        return self.A.n_rows

    @property
    def d(self) -> int:
        return self.A.n_cols


@dataclass(frozen=True)
class TropBasis:
    """A column set of size n with its row-to-column bijection.

    phi[i] is the column matched to row i; `columns` is the underlying set.
    """

    phi: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "phi", tuple(self.phi))
        if len(set(self.phi)) != len(self.phi):
            raise ValueError("phi must be injective")

    @property
    def columns(self) -> frozenset:
        return frozenset(self.phi)

    def row_of(self, column: int) -> int:
        return self.phi.index(column)


@dataclass(frozen=True)
class PivotResult:
    basis: TropBasis
    entering: int
    leaving: int
    pivot_row: int


def lcp_system(M: TropMatrix, b: TropVector) -> TropSystem:
    """The augmented system (identity | M) x = b used by complementarity
    solvers; columns 0..n-1 are the identity block."""
    identity = TropMatrix.identity(M.n_rows, M.domain)
    return TropSystem(identity.hstack(M), b)


def column_residual(system: TropSystem, j: int) -> tuple:
    """(code, value, argmin rows) of column j's residual minimum."""
    return column_residual_argmin(system.b.values,
                                  system.A.column_values(j),
                                  system.A.domain)


def column_admissible_rows(system: TropSystem, j: int) -> tuple:
    """Rows at which column j may be matched in a basis: the argmin rows,
    provided the minimum is not +infinity."""
    code, _, rows = column_residual(system, j)
    return () if code == RES_INFINITE else rows


def find_basis(system: TropSystem) -> Optional[TropBasis]:
    """Search for a basis via augmenting paths on the admissibility graph.

    Rows are processed in order and columns tried in ascending index, so the
    result is deterministic; returns None when no size-n matching exists.
    """
    n, d = system.n, system.d
    if d < n:
        return None
    admissible = [set(column_admissible_rows(system, j)) for j in range(d)]
    columns_of_row = [[j for j in range(d) if i in admissible[j]]
                      for i in range(n)]
    row_of_col: dict = {}
    col_of_row: dict = {}

    def try_assign(i: int, visited: set) -> bool:
        for j in columns_of_row[i]:
            if j in visited:
                continue
            visited.add(j)
            if j not in row_of_col or try_assign(row_of_col[j], visited):
                row_of_col[j] = i
                col_of_row[i] = j
                return True
        return False

    for i in range(n):
        if not try_assign(i, set()):
            return None
    return TropBasis(tuple(col_of_row[i] for i in range(n)))


def is_valid_basis(system: TropSystem, basis: TropBasis) -> bool:
    """Independent check of the basis property; does not trust phi."""
    if len(basis.phi) != system.n:
        return False
    if any(not 0 <= j < system.d for j in basis.phi):
        return False
    for i, j in enumerate(basis.phi):
        if i not in column_admissible_rows(system, j):
            return False
    return True


def basic_solution(system: TropSystem, basis: TropBasis) -> TropVector:
    """The canonical basic point: x_{phi(i)} is column phi(i)'s residual
    minimum, everything off the basis is the tropical zero."""
    if not is_valid_basis(system, basis):
        raise ValueError("not a basis of this system")
    values = [None] * system.d
    for j in basis.phi:
        code, value, _ = column_residual(system, j)
        values[j] = value if code == RES_FINITE else None
    return TropVector(tuple(values), system.A.domain)


def is_nondegenerate_basis(system: TropSystem, basis: TropBasis) -> bool:
    """True iff each basis column's residual minimum is finite and unique."""
    if not is_valid_basis(system, basis):
        raise ValueError("not a basis of this system")
    for j in basis.phi:
        code, _, rows = column_residual(system, j)
        if code != RES_FINITE or len(rows) != 1:
            return False
    return True


def is_nondegenerate_system(system: TropSystem) -> bool:
    """True iff every column that is not identically zero has a finite,
    uniquely attained residual minimum."""
    for j in range(system.d):
        if all(v is None for v in system.A.column_values(j)):
            continue
        code, _, rows = column_residual(system, j)
        if code != RES_FINITE or len(rows) != 1:
            return False
    return True


def pivot(system: TropSystem, basis: TropBasis, j: int) -> PivotResult:
    """Exchange step: bring column j into the basis.

    The pivot row is the smallest argmin row of column j's residuals (the
    tie-break only matters on degenerate systems, where it matches the
    smallest-row-index pruning used elsewhere).  On nondegenerate systems
    the result is the unique basis inside B + {j} other than B.
    """
    if j in basis.columns:
        raise ValueError(f"column {j} is already in the basis")
    code, _, rows = column_residual(system, j)
    if code == RES_INFINITE:
        raise ValueError(f"column {j} is identically the tropical zero")
    pivot_row = rows[0]
    leaving = basis.phi[pivot_row]
    phi = list(basis.phi)
    phi[pivot_row] = j
    return PivotResult(TropBasis(tuple(phi)), j, leaving, pivot_row)
