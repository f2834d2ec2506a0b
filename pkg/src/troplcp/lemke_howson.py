"""The complementary pivot loop over labeled columns, in two worlds.

Columns of the augmented system (identity | M) carry labels 1..n in two
colors: blue for the identity block (the w side) and red for the matrix
block (the z side).  Starting from the all-blue basis, the loop repeatedly
brings in a column, evicts the unique exchangeable one, and next brings in
the evicted column's twin, until all labels are present again.

The tropical run works on residual argmins (with the smallest-row-index
symbolic perturbation when minima tie); the classical run maintains an
exact rational tableau.  Under the dominance condition the two runs visit
the same basis sequence, which `compare_traces` checks step by step.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Tuple

from .errors import (DegenerateInstanceError, InternalError, ValidationError)
from .graph_solver import (BLUE, RED, build_graph, lowest_row_index,
                           prune_representatives)
from .instances import (ClassicalSolution, NecpInstance, TnecpInstance,
                        TropSolution, check_lcp_solution,
                        check_tnecp_solution, log_image, require_valid)
from .semiring import TropVector


class LabeledColumn(NamedTuple):
    label: int
    color: str


def twin(column: LabeledColumn) -> LabeledColumn:
    """Same label, other color."""
    return LabeledColumn(column.label, RED if column.color == BLUE else BLUE)


@dataclass(frozen=True)
class LhStep:
    """One pivot: the basis it started from, who came in, who left, and the
    row whose residual/ratio minimum decided the exchange."""

    basis: frozenset
    entering: LabeledColumn
    leaving: LabeledColumn
    pivot_row: int


@dataclass(frozen=True)
class LhTrace:
    j_star: int
    steps: tuple
    final_basis: frozenset

    @property
    def basis_sequence(self) -> tuple:
        """Visited bases in order, ending with the final one."""
        return tuple(s.basis for s in self.steps) + (self.final_basis,)

    @property
    def pivot_rows(self) -> tuple:
        return tuple(s.pivot_row for s in self.steps)

    def __len__(self) -> int:
        return len(self.steps)


def _fully_labeled(basis) -> bool:
    labels = {c.label for c in basis}
    return len(labels) == len(basis)


def lh_tropical(t: TnecpInstance, j_star: int = 0,
                prune_rule=lowest_row_index) -> Tuple[TropSolution, LhTrace]:
    """Pivot loop over tropical bases of (identity | M_minus), rhs q_plus.

    Degenerate instances are handled by the symbolic perturbation: each
    column's residual argmin set is replaced by one representative row
    before the loop starts, which never changes the basic-point values.
    Terminates within 2n - 1 pivots; exceeding that signals a bug.
    """
    require_valid(t)
    n = t.n
    if not 0 <= j_star < n:
        raise ValueError(f"j_star must lie in 0..{n - 1}")
    g = build_graph(t)
    reps = prune_representatives(g, prune_rule)

    phi: List[LabeledColumn] = [LabeledColumn(i, BLUE) for i in range(n)]
    basis = set(phi)
    entering = LabeledColumn(j_star, RED)
    steps = []
    while True:
        pivot_row = reps[entering.label] if entering.color == RED \
            else entering.label
        leaving = phi[pivot_row]
        before = frozenset(basis)
        basis.discard(leaving)
        basis.add(entering)
        phi[pivot_row] = entering
        steps.append(LhStep(before, entering, leaving, pivot_row))
        if _fully_labeled(basis):
            break
        if len(steps) >= 2 * n - 1:
            raise InternalError(
                "pivot count exceeded 2n - 1 without a fully labeled basis")
        entering = twin(leaving)

    w = [None] * n
    z = [None] * n
    for col in basis:
        if col.color == BLUE:
            w[col.label] = t.q_plus.values[col.label]
        else:
            z[col.label] = g.col_values[col.label]
    solution = TropSolution(TropVector(tuple(w), t.domain),
                            TropVector(tuple(z), t.domain))
    if not check_tnecp_solution(t, solution):
        raise InternalError("final basic point fails the solution check")
    return solution, LhTrace(j_star, tuple(steps), frozenset(basis))


class ClassicalTableau:
    """The system (identity | -M) x = q kept in basis-reduced rational form.

    phi[i] names the basic column whose reduced column is the i-th unit
    vector; rhs holds the basic values, which stay positive on
    nondegenerate instances.  Each run owns its tableau; nothing is shared.
    """

    def __init__(self, instance: NecpInstance):
        require_valid(instance)
        self.instance = instance
        n = instance.n
        self.n = n
        self.T = [[Fraction(1) if i == j else Fraction(0) for j in range(n)]
                  + [Fraction(-instance.M[i][j]) for j in range(n)]
                  for i in range(n)]
        self.rhs = [Fraction(v) for v in instance.q]
        self.phi: List[LabeledColumn] = [LabeledColumn(i, BLUE)
                                         for i in range(n)]

    @property
    def basis(self) -> frozenset:
        return frozenset(self.phi)

    def column_index(self, col: LabeledColumn) -> int:
        return col.label if col.color == BLUE else self.n + col.label

    def pivot(self, entering: LabeledColumn) -> Tuple[LabeledColumn, int]:
        """Minimum-ratio exchange; ties or zero basic values mean the
        instance is degenerate, which this solver rejects."""
        c = self.column_index(entering)
        best: Optional[Fraction] = None
        rows: List[int] = []
        for k in range(self.n):
            d = self.T[k][c]
            if d > 0:
                ratio = self.rhs[k] / d
                if best is None or ratio < best:
                    best, rows = ratio, [k]
                elif ratio == best:
                    rows.append(k)
        if best is None:
            raise InternalError(
                "unbounded pivot direction; impossible when every matrix "
                "column is nonpositive")
        if len(rows) > 1:
            raise DegenerateInstanceError(
                "classical instance degenerate: ratio test tie")
        row = rows[0]
        pivot_value = self.T[row][c]
        self.T[row] = [v / pivot_value for v in self.T[row]]
        self.rhs[row] /= pivot_value
        base_row = self.T[row]
        base_rhs = self.rhs[row]
        for k in range(self.n):
            if k != row and self.T[k][c]:
                f = self.T[k][c]
                self.T[k] = [v - f * w for v, w in zip(self.T[k], base_row)]
                self.rhs[k] -= f * base_rhs
        if any(v <= 0 for v in self.rhs):
            raise DegenerateInstanceError(
                "classical instance degenerate: a basic value hit zero")
        leaving = self.phi[row]
        self.phi[row] = entering
        return leaving, row

    def basic_solution(self) -> ClassicalSolution:
        w = [Fraction(0)] * self.n
        z = [Fraction(0)] * self.n
        for i, col in enumerate(self.phi):
            if col.color == BLUE:
                w[col.label] = self.rhs[i]
            else:
                z[col.label] = self.rhs[i]
        return ClassicalSolution(tuple(w), tuple(z))


def lh_classical(c: NecpInstance, j_star: int = 0
                 ) -> Tuple[ClassicalSolution, LhTrace]:
    """Exact-rational pivot loop; rejects degenerate instances outright."""
    require_valid(c)
    n = c.n
    if not 0 <= j_star < n:
        raise ValueError(f"j_star must lie in 0..{n - 1}")
    tableau = ClassicalTableau(c)
    entering = LabeledColumn(j_star, RED)
    steps = []
    visited = {tableau.basis}
    while True:
        before = tableau.basis
        leaving, row = tableau.pivot(entering)
        steps.append(LhStep(before, entering, leaving, row))
        basis = tableau.basis
        if _fully_labeled(basis):
            break
        if basis in visited:
            raise InternalError("a basis was revisited; pivoting is broken")
        visited.add(basis)
        entering = twin(leaving)
    solution = tableau.basic_solution()
    if not check_lcp_solution(c, solution):
        raise InternalError("final basic point fails the solution check")
    return solution, LhTrace(j_star, tuple(steps), tableau.basis)


@dataclass(frozen=True)
class TraceComparison:
    identical: bool
    first_divergence: Optional[int]
    classical: LhTrace
    tropical: LhTrace


def compare_traces(c: NecpInstance, j_star: int = 0) -> TraceComparison:
    """Run both worlds with the same entering label and compare the basis
    sequences step by step.

    Only meaningful under the dominance condition, which is verified first;
    instances failing it are rejected rather than judged.
    """
    from .dominance import necp_dominance
    verdict = necp_dominance(c)
    if not verdict.holds:
        raise ValidationError(
            f"dominance condition fails ({verdict.witness}); "
            "trace comparison is only defined under it")
    _, classical = lh_classical(c, j_star)
    _, tropical = lh_tropical(log_image(c), j_star)
    a, b = classical.basis_sequence, tropical.basis_sequence
    first = next((k for k in range(max(len(a), len(b)))
                  if k >= len(a) or k >= len(b) or a[k] != b[k]), None)
    return TraceComparison(first is None, first, classical, tropical)
