"""Columnwise normalization and the dominance condition.

After scaling rows by 1/b_i and each column by the reciprocal of its largest
scaled entry, the matrix has entries in [0, 1] with at least one 1 per
column.  The dominance condition asks that (a) some n x n submatrix covers a
permutation matrix and (b) every submatrix that does has all row sums below
2.  `check_dominance` decides this in polynomial time: every column must
carry exactly one 1-entry, and for each row the sum of the largest entries
contributed by each 1-entry class must stay below 2.  `brute_force_dominance`
checks items (a) and (b) literally by enumerating submatrices.

Under the condition, the classical feasible bases of A x = b coincide with
the tropical bases of any residual-order-equivalent tropical system, and the
solution supports of a complementarity instance agree with those of its
logarithmic image; `support_correspondence` verifies the latter by brute
force at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .errors import GuardExceededError, ValidationError
from .graph_solver import BLUE, RED
from .instances import (ClassicalSolution, NecpInstance, TropSolution,
                        log_image, require_valid)
from .lemke_howson import LabeledColumn

_BRUTE_COLUMN_GUARD = 12
_SUPPORT_GUARD = 7


@dataclass(frozen=True)
class NormalizedSystem:
    """A columnwise-normal matrix plus the scalings that produced it."""

    A_hat: tuple
    row_scale: tuple
    col_scale: tuple
    one_positions: tuple

    @property
    def n(self) -> int:
        return len(self.A_hat)

    @property
    def d(self) -> int:
        return len(self.A_hat[0])

    @property
    def classes(self) -> tuple:
        """classes[i]: columns whose unique 1-entry sits in row i.  Columns
        with several 1-entries belong to no class (the checker rejects them
        first anyway)."""
        out = [set() for _ in range(self.n)]
        for j, ones in enumerate(self.one_positions):
            if len(ones) == 1:
                out[next(iter(ones))].add(j)
        return tuple(frozenset(s) for s in out)


def normalize(A: Sequence[Sequence], b: Sequence) -> NormalizedSystem:
    """Exact columnwise normalization of a nonnegative system A x = b.

    Feasible bases and basic-solution supports of (A, b) and of the
    normalized system with all-1 right-hand side are the same.
    """
    rows = [tuple(Fraction(v) for v in row) for row in A]
    scale = [Fraction(v) for v in b]
    if any(v <= 0 for v in scale):
        raise ValueError("right-hand side entries must be positive")
    if any(v < 0 for row in rows for v in row):
        raise ValueError("the matrix must be nonnegative")
    n, d = len(rows), len(rows[0])
    scaled = [tuple(v / scale[i] for v in row) for i, row in enumerate(rows)]
    col_scale = []
    for j in range(d):
        top = max(scaled[i][j] for i in range(n))
        if top == 0:
            raise ValueError(f"column {j} is identically zero")
        col_scale.append(top)
    a_hat = tuple(tuple(scaled[i][j] / col_scale[j] for j in range(d))
                  for i in range(n))
    ones = tuple(frozenset(i for i in range(n) if a_hat[i][j] == 1)
                 for j in range(d))
    return NormalizedSystem(a_hat, tuple(scale), tuple(col_scale), ones)


@dataclass(frozen=True)
class DominanceVerdict:
    holds: bool
    witness: Optional[str] = None
    row: Optional[int] = None
    column: Optional[int] = None


def check_dominance(ns: NormalizedSystem) -> DominanceVerdict:
    """Two-step polynomial test; the witness pinpoints the first failure."""
    for j, ones in enumerate(ns.one_positions):
        if len(ones) != 1:
            return DominanceVerdict(
                False, f"column {j + 1} carries {len(ones)} unit entries "
                       "instead of exactly one", column=j)
    classes = ns.classes
    for i, cls in enumerate(classes):
        if not cls:
            return DominanceVerdict(
                False, f"no column has its unit entry in row {i + 1}", row=i)
    for i in range(ns.n):
        total = sum(max(ns.A_hat[i][j] for j in cls) for cls in classes)
        if total >= 2:
            return DominanceVerdict(
                False, f"row {i + 1} accumulates {total} >= 2 over the "
                       "classwise maxima", row=i)
    return DominanceVerdict(True)


def _covers_permutation(ns: NormalizedSystem, cols: Tuple[int, ...]) -> bool:
    # entries are <= 1, so covering a permutation matrix means a perfect
    # matching on the 1-entries of the selected columns
    match_row: dict = {}

    def assign(idx: int, visited: set) -> bool:
        for i in ns.one_positions[cols[idx]]:
            if i in visited:
                continue
            visited.add(i)
            if i not in match_row or assign(match_row[i], visited):
                match_row[i] = idx
                return True
        return False

    return all(assign(k, set()) for k in range(len(cols)))


def covering_column_subsets(ns: NormalizedSystem) -> List[Tuple[int, ...]]:
    """All n-column subsets whose submatrix covers a permutation matrix."""
    if ns.d > _BRUTE_COLUMN_GUARD:
        raise GuardExceededError(
            f"brute-force enumeration is guarded at d <= {_BRUTE_COLUMN_GUARD}")
    if ns.n > ns.d:
        return []
    return [cols for cols in combinations(range(ns.d), ns.n)
            if _covers_permutation(ns, cols)]


def brute_force_dominance(ns: NormalizedSystem) -> bool:
    """Items (a) and (b) checked literally over all n x n submatrices."""
    covering = covering_column_subsets(ns)
    if not covering:
        return False
    for cols in covering:
        for i in range(ns.n):
            if sum(ns.A_hat[i][j] for j in cols) >= 2:
                return False
    return True


# ---------------------------------------------------------------------------
# complementarity instances and their supports


def necp_system(c: NecpInstance) -> tuple:
    """The augmented system (identity | -M) with right-hand side q."""
    n = c.n
    rows = tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n))
        + tuple(Fraction(-c.M[i][j]) for j in range(n))
        for i in range(n))
    return rows, tuple(Fraction(v) for v in c.q)


def necp_dominance(c: NecpInstance) -> DominanceVerdict:
    require_valid(c)
    A, b = necp_system(c)
    return check_dominance(normalize(A, b))


def classical_support(sol: ClassicalSolution) -> frozenset:
    return frozenset(
        [LabeledColumn(i, BLUE) for i, v in enumerate(sol.w) if v != 0]
        + [LabeledColumn(j, RED) for j, v in enumerate(sol.z) if v != 0])


def tropical_support(sol: TropSolution) -> frozenset:
    return frozenset(
        [LabeledColumn(i, BLUE) for i in sol.w.support()]
        + [LabeledColumn(j, RED) for j in sol.z.support()])


@dataclass(frozen=True)
class SupportCorrespondence:
    matches: bool
    supports: tuple             # the common support family, canonically sorted
    classical_only: tuple
    tropical_only: tuple


def _sorted_supports(supports) -> tuple:
    return tuple(sorted(supports,
                        key=lambda s: sorted((c.label, c.color) for c in s)))


def support_correspondence(c: NecpInstance) -> SupportCorrespondence:
    """Brute-force both worlds and compare the families of solution supports.

    Requires the dominance condition (checked first) and n within the
    brute-force guard.
    """
    from .oracles import brute_lcp, brute_tnecp
    verdict = necp_dominance(c)
    if not verdict.holds:
        raise ValidationError(
            f"dominance condition fails: {verdict.witness}")
    if c.n > _SUPPORT_GUARD:
        raise GuardExceededError(
            f"support comparison is guarded at n <= {_SUPPORT_GUARD}")
    classical = {classical_support(sol) for sol in brute_lcp(c)}
    tropical = {tropical_support(sol) for sol in brute_tnecp(log_image(c))}
    return SupportCorrespondence(
        classical == tropical,
        _sorted_supports(classical & tropical),
        _sorted_supports(classical - tropical),
        _sorted_supports(tropical - classical))
