"""Brute-force reference implementations that certify the real solvers.

Nothing here is tuned; each oracle enumerates a finite candidate space
exhaustively behind a hard size guard and double-checks its own output, so
agreement with a solver is meaningful evidence.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import List

from .bases import TropBasis, TropSystem, column_admissible_rows, is_valid_basis
from .errors import (DegenerateInstanceError, GuardExceededError,
                     InternalError)
from .graph_solver import (BLUE, RED, Edge, alpha, build_graph,
                           is_nondegenerate)
from .instances import (ClassicalSolution, NecpInstance, TnecpInstance,
                        TropSolution, check_lcp_solution,
                        check_tnecp_solution, require_valid)
from .lemke_howson import ClassicalTableau, LabeledColumn
from .linalg import solve_square

_LCP_GUARD = 12
_TNECP_GUARD = 7
_STEP_GUARD = 5


def brute_lcp(c: NecpInstance) -> List[ClassicalSolution]:
    """All solutions with z != 0, by trying every complementary support
    pattern and solving the resulting square system exactly.

    Patterns with singular subsystems are skipped (they carry no basic
    solution); duplicates across patterns are removed exactly.
    """
    require_valid(c)
    n = c.n
    if n > _LCP_GUARD:
        raise GuardExceededError(f"brute_lcp is guarded at n <= {_LCP_GUARD}")
    out: List[ClassicalSolution] = []
    seen = set()
    for mask in range(1, 1 << n):
        z_side = [i for i in range(n) if mask >> i & 1]
        sub = [[c.M[i][j] for j in z_side] for i in z_side]
        rhs = [-c.q[i] for i in z_side]
        part = solve_square(sub, rhs) if z_side else None
        if part is None:
            continue
        if any(v < 0 for v in part):
            continue
        z = [Fraction(0)] * n
        for i, v in zip(z_side, part):
            z[i] = v
        w = [sum(Fraction(c.M[i][j]) * z[j] for j in range(n)) + c.q[i]
             for i in range(n)]
        if any(v < 0 for v in w):
            continue
        if all(v == 0 for v in z):
            continue
        key = (tuple(w), tuple(z))
        if key in seen:
            continue
        seen.add(key)
        sol = ClassicalSolution(tuple(w), tuple(z))
        if not check_lcp_solution(c, sol):
            raise InternalError("oracle produced an invalid candidate")
        out.append(sol)
    return out


def enumerate_perfect_matchings(graph) -> List[frozenset]:
    """Every perfect matching of the blue/red graph, parallel edges counted
    separately, in a deterministic backtracking order."""
    n = graph.n
    red_cols_of_row = [[] for _ in range(n)]
    for j, rows in enumerate(graph.red_rows):
        for i in rows:
            red_cols_of_row[i].append(j)
    matchings: List[frozenset] = []
    chosen: List[Edge] = []
    used = [False] * n

    def backtrack(i: int) -> None:
        if i == n:
            matchings.append(frozenset(chosen))
            return
        if not used[i]:
            used[i] = True
            chosen.append(Edge(i, i, BLUE))
            backtrack(i + 1)
            chosen.pop()
            used[i] = False
        for j in red_cols_of_row[i]:
            if not used[j]:
                used[j] = True
                chosen.append(Edge(i, j, RED))
                backtrack(i + 1)
                chosen.pop()
                used[j] = False

    backtrack(0)
    return matchings


def _solution_sort_key(sol: TropSolution):
    def key(v):
        return (0,) if v is None else (1, v)
    return tuple(key(v) for v in sol.w.values + sol.z.values)


def brute_tnecp(t: TnecpInstance) -> List[TropSolution]:
    """The complete solution set of a nondegenerate instance, via perfect
    matchings with at least one red edge."""
    require_valid(t)
    if t.n > _TNECP_GUARD:
        raise GuardExceededError(
            f"brute_tnecp is guarded at n <= {_TNECP_GUARD}")
    if not is_nondegenerate(t):
        raise DegenerateInstanceError(
            "brute_tnecp requires a nondegenerate instance")
    g = build_graph(t)
    out = []
    for matching in enumerate_perfect_matchings(g):
        if not any(e.color == RED for e in matching):
            continue
        sol = alpha(g, matching, t)
        if not check_tnecp_solution(t, sol):
            raise InternalError("matching mapped to an invalid point")
        out.append(sol)
    out.sort(key=_solution_sort_key)
    return out


def _tropical_basis_on(system: TropSystem, cols) -> TropBasis | None:
    """Perfect matching of rows onto the given columns, or None."""
    admissible = {j: column_admissible_rows(system, j) for j in cols}
    column_of_row: dict = {}

    def assign(j: int, visited: set) -> bool:
        for i in admissible[j]:
            if i in visited:
                continue
            visited.add(i)
            if i not in column_of_row or assign(column_of_row[i], visited):
                column_of_row[i] = j
                return True
        return False

    for j in cols:
        if not assign(j, set()):
            return None
    return TropBasis(tuple(column_of_row[i] for i in range(system.n)))


def enumerate_tropical_bases(system: TropSystem) -> List[TropBasis]:
    """Every basis, by testing all size-n column subsets for a row matching."""
    if system.d > 2 * _LCP_GUARD:
        raise GuardExceededError("basis enumeration is guarded at d <= 24")
    out = []
    for cols in combinations(range(system.d), system.n):
        basis = _tropical_basis_on(system, cols)
        if basis is not None:
            out.append(basis)
    return out


def enumerate_classical_feasible_bases(A, b) -> List[frozenset]:
    """Column sets whose square subsystem is nonsingular with a nonnegative
    solution; returned as frozensets of column indices."""
    n, d = len(A), len(A[0])
    if d > 2 * _LCP_GUARD:
        raise GuardExceededError("basis enumeration is guarded at d <= 24")
    out = []
    for cols in combinations(range(d), n):
        sub = [[A[i][j] for j in cols] for i in range(n)]
        x = solve_square(sub, b)
        if x is not None and all(v >= 0 for v in x):
            out.append(frozenset(cols))
    return out


def brute_lh_step(system, basis, entering):
    """Next pivot state found by exhaustive search instead of a residual or
    ratio test: try every size-n subset of B + {entering}.

    For a `TropSystem`, basis is a TropBasis and the result is the unique
    other TropBasis.  For a `ClassicalTableau`, basis is a frozenset of
    labeled columns and the result is the unique other feasible one.
    """
    if isinstance(system, TropSystem):
        if system.n > _STEP_GUARD:
            raise GuardExceededError(
                f"brute_lh_step is guarded at n <= {_STEP_GUARD}")
        pool = sorted(basis.columns | {entering})
        found = []
        for cols in combinations(pool, system.n):
            if frozenset(cols) == basis.columns:
                continue
            candidate = _tropical_basis_on(system, cols)
            if candidate is not None:
                found.append(candidate)
        if len(found) != 1:
            raise InternalError(
                f"expected exactly one adjacent basis, found {len(found)}")
        return found[0]
    if isinstance(system, ClassicalTableau):
        n = system.n
        if n > _STEP_GUARD:
            raise GuardExceededError(
                f"brute_lh_step is guarded at n <= {_STEP_GUARD}")
        from .dominance import necp_system
        A, b = necp_system(system.instance)
        pool = sorted(basis | {entering})
        found = []
        for cols in combinations(pool, n):
            if frozenset(cols) == basis:
                continue
            idx = [system.column_index(col) for col in cols]
            sub = [[A[i][j] for j in idx] for i in range(n)]
            x = solve_square(sub, b)
            if x is not None and all(v >= 0 for v in x):
                found.append(frozenset(cols))
        if len(found) != 1:
            raise InternalError(
                f"expected exactly one adjacent basis, found {len(found)}")
        return found[0]
    raise TypeError(f"unsupported system type {type(system).__name__}")
