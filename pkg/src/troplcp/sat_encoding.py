"""CNF formulas encoded as signed tropical complementarity instances.

A formula with n variables and p clauses maps to a (2n + p + 2)-dimensional
instance whose negative matrix and positive right-hand side are identically
the tropical zero.  Index layout (0-based):

    0            a guard pair forcing w_0 to the zero and z_0 to 0
    1 .. n       the positive literals      (z_i finite <=> x_i true)
    n+1 .. 2n    the negated literals
    2n+1 .. 2n+p one row per clause
    2n+p+1       the closing guard row

Row 0 says the 2n literal variables stay below 0; each clause row says some
of its literals' z-variables reaches 0.  For this family, solvability can be
decided by searching assignments whose entries are the tropical zero or 0:
a satisfying assignment always produces such a solution, and any solution
decodes to a satisfying assignment, so nothing outside that grid matters.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .errors import (GuardExceededError, MalformedInputError, ValidationError)
from .instances import TlcpInstance, TropSolution
from .semiring import ADDITIVE, TropMatrix, TropVector

_SEARCH_GUARD = 34  # bound on 2 * dimension


@dataclass(frozen=True)
class CnfFormula:
    """Clauses as sets of signed 1-based literals: +i is x_i, -i its negation."""

    n: int
    clauses: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses",
                           tuple(frozenset(cl) for cl in self.clauses))
        if self.n < 1:
            raise ValidationError("formulas need at least one variable")
        if not self.clauses:
            raise ValidationError("formulas need at least one clause")
        for cl in self.clauses:
            for lit in cl:
                if not isinstance(lit, int) or lit == 0 or abs(lit) > self.n:
                    raise ValidationError(f"literal {lit!r} is out of range")

    @property
    def p(self) -> int:
        return len(self.clauses)


def parse_dimacs(text: str) -> CnfFormula:
    """Standard DIMACS cnf: a 'p cnf n p' header, clauses terminated by 0."""
    n = expected = None
    clauses: List[set] = []
    current: set = set()
    for line_no, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise MalformedInputError(f"bad problem line: {line!r}")
            try:
                n, expected = int(parts[2]), int(parts[3])
            except ValueError:
                raise MalformedInputError(f"bad problem line: {line!r}") \
                    from None
            continue
        if n is None:
            raise MalformedInputError("clause data before the problem line")
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise MalformedInputError(
                    f"line {line_no}: bad literal {token!r}") from None
            if lit == 0:
                clauses.append(current)
                current = set()
            else:
                current.add(lit)
    if n is None:
        raise MalformedInputError("missing 'p cnf' problem line")
    if current:
        clauses.append(current)  # tolerate a missing final 0
    if expected is not None and len(clauses) != expected:
        raise MalformedInputError(
            f"header announced {expected} clauses, found {len(clauses)}")
    return CnfFormula(n, tuple(clauses))


def encode(f: CnfFormula) -> TlcpInstance:
    """The (2n + p + 2)-dimensional instance described in the module doc."""
    n, p = f.n, f.p
    dim = 2 * n + p + 2
    m_plus = [[None] * dim for _ in range(dim)]
    q_minus: List[Optional[int]] = [None] * dim
    q_minus[0] = 0
    for i in range(1, 2 * n + 1):
        m_plus[0][i] = 0
    for i in range(1, n + 1):
        m_plus[i][n + i] = 0
        m_plus[n + i][i] = 0
    for gamma, clause in enumerate(f.clauses, 1):
        row = 2 * n + gamma
        q_minus[row] = 0
        for lit in clause:
            m_plus[row][lit if lit > 0 else n - lit] = 0
    q_minus[dim - 1] = 0
    m_plus[dim - 1][0] = 0
    return TlcpInstance(
        TropMatrix.zeros(dim, dim, ADDITIVE),
        TropMatrix(tuple(tuple(r) for r in m_plus), ADDITIVE),
        TropVector(tuple(q_minus), ADDITIVE),
        TropVector((None,) * dim, ADDITIVE))


def _encoded_structure(t: TlcpInstance):
    """Row supports of M+ as bitmasks plus the finite rows of q-.

    Rejects instances outside the all-zero-M-/q+ family with 0/1-free
    coefficients, for which the 0/zero search below is complete.
    """
    dim = t.n
    if any(v is not None for row in t.M_minus.rows for v in row):
        raise ValidationError("the oracle needs M_minus identically zero")
    if any(v is not None for v in t.q_plus.values):
        raise ValidationError("the oracle needs q_plus identically zero")
    if any(v is not None and v != 0
           for row in t.M_plus.rows for v in row):
        raise ValidationError("the oracle needs 0/zero coefficients in M_plus")
    if any(v is not None and v != 0 for v in t.q_minus.values):
        raise ValidationError("the oracle needs 0/zero entries in q_minus")
    supports = []
    for i in range(dim):
        mask = 0
        for j, v in enumerate(t.M_plus.rows[i]):
            if v is not None:
                mask |= 1 << j
        supports.append(mask)
    q_finite = [v is not None for v in t.q_minus.values]
    return supports, q_finite


def brute_force_encoded_tlcp(t: TlcpInstance) -> Optional[TropSolution]:
    """Search all (w, z) with entries in {zero, 0}; None when unsolvable.

    z ranges over all 2^dim patterns; w is then forced row by row, choosing
    the zero whenever both values work (any solution with w_i = 0 in such a
    row stays one with w_i = zero, so no solvable pattern is missed).
    """
    dim = t.n
    if 2 * dim > _SEARCH_GUARD:
        raise GuardExceededError(
            f"oracle search is guarded at 2 * dim <= {_SEARCH_GUARD}")
    supports, q_finite = _encoded_structure(t)
    indices = range(dim)
    for mask in range(1 << dim):
        w: List[Optional[int]] = [None] * dim
        ok = True
        for i in indices:
            rhs_finite = bool(supports[i] & mask)
            z_finite = bool(mask >> i & 1)
            if q_finite[i]:
                if not rhs_finite:
                    ok = False
                    break
                # w_i stays zero: max(w_i, 0) = 0 either way
            else:
                if rhs_finite:
                    if z_finite:
                        ok = False  # complementarity would break
                        break
                    w[i] = 0
        if ok:
            z = tuple(0 if mask >> i & 1 else None for i in indices)
            return TropSolution(TropVector(tuple(w), ADDITIVE),
                                TropVector(z, ADDITIVE))
    return None


def decode(sol: TropSolution, n: int) -> Tuple[bool, ...]:
    """x_i is true exactly when the positive-literal variable z_i reaches 0."""
    return tuple(sol.z.values[i] is not None for i in range(1, n + 1))


def assignment_to_solution(f: CnfFormula, assignment) -> TropSolution:
    """The constructive witness for a satisfying assignment."""
    n, p = f.n, f.p
    dim = 2 * n + p + 2
    w: List[Optional[int]] = [None] * dim
    z: List[Optional[int]] = [None] * dim
    for i, true in enumerate(assignment, 1):
        if true:
            z[i] = 0
            w[n + i] = 0
        else:
            z[n + i] = 0
            w[i] = 0
    z[0] = 0
    return TropSolution(TropVector(tuple(w), ADDITIVE),
                        TropVector(tuple(z), ADDITIVE))


def check_tlcp_solution(t: TlcpInstance, sol: TropSolution) -> bool:
    """Direct check of the two signed-instance conditions."""
    dim = t.n
    w, z = sol.w.values, sol.z.values
    if len(w) != dim or len(z) != dim:
        return False
    for i in range(dim):
        lhs = _row_value(t.M_minus.rows[i], z, t.q_minus.values[i], w[i])
        rhs = _row_value(t.M_plus.rows[i], z, t.q_plus.values[i], None)
        if lhs != rhs:
            return False
    return not any(a is not None and b is not None for a, b in zip(w, z))


def _row_value(row, z, q, w):
    best = w
    if q is not None and (best is None or q > best):
        best = q
    for a, v in zip(row, z):
        if a is None or v is None:
            continue
        prod = a + v
        if best is None or prod > best:
            best = prod
    return best


def gen_random_cnf(n: int, p: int, seed) -> CnfFormula:
    """Random formula with clause widths 1..3 over n variables."""
    rng = random.Random(seed)
    clauses = []
    for _ in range(p):
        width = rng.randint(1, min(3, n))
        variables = rng.sample(range(1, n + 1), width)
        clauses.append(frozenset(v if rng.random() < 0.5 else -v
                                 for v in variables))
    return CnfFormula(n, tuple(clauses))
