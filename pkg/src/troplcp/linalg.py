"""Dense exact-rational Gaussian elimination for the classical-side solvers."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionError


def solve_square(matrix: Sequence[Sequence], rhs: Sequence) -> Optional[tuple]:
    """Solve A x = b exactly; returns None when A is singular.

    Entries may be int or Fraction; the result is a tuple of Fractions.
    """
    n = len(rhs)
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise DimensionError("solve_square needs an n x n matrix and length-n rhs")
    aug = [[Fraction(v) for v in row] + [Fraction(rhs[i])]
           for i, row in enumerate(matrix)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot_row is None:
            return None
        if pivot_row != col:
            aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        pivot = aug[col][col]
        aug[col] = [v / pivot for v in aug[col]]
        base = aug[col]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], base)]
    return tuple(row[n] for row in aug)


def matvec(matrix: Sequence[Sequence], vector: Sequence) -> tuple:
    return tuple(sum((Fraction(a) * Fraction(x) for a, x in zip(row, vector)),
                     Fraction(0))
                 for row in matrix)
