"""Bimatrix games, classical and tropical, and their complementarity
embeddings.

A classical game embeds into a complementarity instance by shifting both
payoff matrices so their minimum entry is 1, negating them into an
antidiagonal block matrix, and taking the all-1 right-hand side; solutions
project onto Nash equilibria after rescaling each player's part onto the
probability simplex.  A tropical game embeds the same way with tropical
zero blocks and the all-0 right-hand side, and the rescaling lands on the
tropical simplex (maximum entry 0).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from . import graph_solver
from .dominance import necp_dominance, necp_system
from .errors import (DegenerateInstanceError, DimensionError, InternalError,
                     ValidationError)
from .graph_solver import BLUE, RED, build_graph
from .instances import (NecpInstance, TnecpInstance, log_image,
                        require_valid, _rational_grid)
from .lemke_howson import LabeledColumn
from .linalg import solve_square
from .semiring import ADDITIVE, TropMatrix, TropVector, trop_matvec

CLASSICAL = "classical"
TROPICAL = "tropical"


@dataclass(frozen=True)
class BimatrixGame:
    """Payoff matrices of the row and column player.

    Classical games store rational grids; tropical games store additive-
    domain matrices (entries may be the tropical zero).
    """

    P: object
    Q: object
    kind: str

    def __post_init__(self) -> None:
        if self.kind not in (CLASSICAL, TROPICAL):
            raise ValueError(f"unknown game kind {self.kind!r}")
        tropical = isinstance(self.P, TropMatrix)
        if tropical != (self.kind == TROPICAL) or \
                tropical != isinstance(self.Q, TropMatrix):
            raise TypeError("payoff containers do not match the game kind")
        shape = (self.r, self.s)
        q_shape = (len(self.Q.rows), len(self.Q.rows[0])) if tropical else \
            (len(self.Q), len(self.Q[0]))
        if shape != q_shape:
            raise DimensionError("P and Q must have the same shape")

    @property
    def r(self) -> int:
        return self.P.n_rows if self.kind == TROPICAL else len(self.P)

    @property
    def s(self) -> int:
        return self.P.n_cols if self.kind == TROPICAL else len(self.P[0])


def classical_game(P, Q) -> BimatrixGame:
    return BimatrixGame(_rational_grid(P), _rational_grid(Q), CLASSICAL)


def tropical_game(P, Q) -> BimatrixGame:
    return BimatrixGame(TropMatrix(tuple(tuple(r) for r in P), ADDITIVE),
                        TropMatrix(tuple(tuple(r) for r in Q), ADDITIVE),
                        TROPICAL)


def as_tropical_game(g: BimatrixGame) -> BimatrixGame:
    """Lift rational payoffs into the additive tropical domain unchanged."""
    if g.kind == TROPICAL:
        return g
    return tropical_game(g.P, g.Q)


def validate_game(g: BimatrixGame) -> List[str]:
    """Tropical games need a non-zero entry in every column of P and of the
    transpose of Q; classical games carry no standing assumptions."""
    if g.kind != TROPICAL:
        return []
    problems = []
    for j in range(g.s):
        if all(v is None for v in g.P.column_values(j)):
            problems.append(f"column {j + 1} of P is identically zero")
    for i in range(g.r):
        if all(v is None for v in g.Q.row_values(i)):
            problems.append(f"column {i + 1} of the transpose of Q is "
                            "identically zero")
    return problems


@dataclass(frozen=True)
class StrategyPair:
    """Mixed strategies of the two players, classical or tropical."""

    x: object
    y: object
    kind: str


# ---------------------------------------------------------------------------
# embeddings


def _shifted(grid) -> tuple:
    """Shift all entries by 1 - min so the smallest entry is exactly 1."""
    low = min(v for row in grid for v in row)
    delta = 1 - low
    return tuple(tuple(v + delta for v in row) for row in grid)


def game_to_necp(g: BimatrixGame) -> NecpInstance:
    """Embed a classical game; equilibria are unaffected by the shift."""
    if g.kind != CLASSICAL:
        raise TypeError("game_to_necp expects a classical game")
    P = _shifted(g.P)
    Q = _shifted(g.Q)
    r, s = g.r, g.s
    rows = []
    for i in range(r):
        rows.append(tuple([0] * r) + tuple(-P[i][j] for j in range(s)))
    for j in range(s):
        rows.append(tuple(-Q[i][j] for i in range(r)) + tuple([0] * s))
    instance = NecpInstance(tuple(rows), tuple([1] * (r + s)))
    require_valid(instance)
    return instance


def game_to_tnecp(g: BimatrixGame) -> TnecpInstance:
    """Embed a tropical game; no shift is needed (or possible)."""
    if g.kind != TROPICAL:
        raise TypeError("game_to_tnecp expects a tropical game")
    problems = validate_game(g)
    if problems:
        raise ValidationError("; ".join(problems))
    r, s = g.r, g.s
    rows = []
    for i in range(r):
        rows.append((None,) * r + g.P.row_values(i))
    for j in range(s):
        rows.append(g.Q.column_values(j) + (None,) * s)
    instance = TnecpInstance(TropMatrix(tuple(rows), ADDITIVE),
                             TropVector((0,) * (r + s), ADDITIVE))
    require_valid(instance)
    return instance


# ---------------------------------------------------------------------------
# tropical equilibria


def normalize_strategies(z: TropVector, r: int, s: int) -> StrategyPair:
    """Scale the two parts of z onto the tropical simplex (maximum 0)."""
    if z.domain != ADDITIVE or len(z) != r + s:
        raise DimensionError("expected an additive-domain vector of length r+s")
    parts = []
    for values in (z.values[:r], z.values[r:]):
        finite = [v for v in values if v is not None]
        if not finite:
            raise ValueError("cannot normalize an all-zero strategy part")
        top = max(finite)
        parts.append(TropVector(
            tuple(None if v is None else v - top for v in values), ADDITIVE))
    return StrategyPair(parts[0], parts[1], TROPICAL)


def _max_raw(values) -> Optional[object]:
    best = None
    for v in values:
        if v is not None and (best is None or v > best):
            best = v
    return best


def _best_response_rows(payoff: TropMatrix, strategy: TropVector) -> tuple:
    """(products, indices attaining the maximum) of payoff (*) strategy."""
    products = trop_matvec(payoff, strategy)
    top = _max_raw(products.values)
    attain = tuple(i for i, v in enumerate(products.values) if v == top)
    return products, attain


def is_tropical_nash(g: BimatrixGame, sp: StrategyPair) -> bool:
    """Support condition: every finite strategy entry is a best response."""
    if g.kind != TROPICAL or sp.kind != TROPICAL:
        raise TypeError("expected a tropical game and strategy pair")
    if len(sp.x) != g.r or len(sp.y) != g.s:
        raise DimensionError("strategy lengths do not match the game")
    for vec in (sp.x, sp.y):
        if _max_raw(vec.values) != 0:
            raise ValueError("strategies must lie on the tropical simplex")
    _, best_rows = _best_response_rows(g.P, sp.y)
    if any(v is not None and i not in best_rows
           for i, v in enumerate(sp.x.values)):
        return False
    q_t = TropMatrix(tuple(g.Q.column_values(j) for j in range(g.s)), ADDITIVE)
    _, best_cols = _best_response_rows(q_t, sp.x)
    return not any(v is not None and j not in best_cols
                   for j, v in enumerate(sp.y.values))


def tropical_nash(g: BimatrixGame) -> StrategyPair:
    """One tropical equilibrium, via the polynomial matching solver."""
    sol = graph_solver.solve(game_to_tnecp(g))
    pair = normalize_strategies(sol.z, g.r, g.s)
    if not is_tropical_nash(g, pair):
        raise InternalError("normalized solution fails the equilibrium check")
    return pair


# ---------------------------------------------------------------------------
# classical equilibria


def _simplex_check(vec) -> None:
    if any(v < 0 for v in vec) or sum(vec) != 1:
        raise ValueError("strategies must lie on the probability simplex")


def is_classical_nash(g: BimatrixGame, sp: StrategyPair) -> bool:
    """Exact support condition: positive weight only on best responses."""
    if g.kind != CLASSICAL or sp.kind != CLASSICAL:
        raise TypeError("expected a classical game and strategy pair")
    x, y = sp.x, sp.y
    if len(x) != g.r or len(y) != g.s:
        raise DimensionError("strategy lengths do not match the game")
    _simplex_check(x)
    _simplex_check(y)
    py = [sum(Fraction(g.P[i][j]) * y[j] for j in range(g.s))
          for i in range(g.r)]
    best = max(py)
    if any(x[i] > 0 and py[i] != best for i in range(g.r)):
        return False
    qx = [sum(Fraction(g.Q[i][j]) * x[i] for i in range(g.r))
          for j in range(g.s)]
    best = max(qx)
    return not any(y[j] > 0 and qx[j] != best for j in range(g.s))


def check_spec_poly(g: BimatrixGame) -> bool:
    """Strict columnwise dominance: some entry of each column of P exceeds
    r - 1 times every other entry of that column, and likewise for the
    transpose of Q with s - 1.  Vacuous for single-entry columns."""
    if g.kind != CLASSICAL:
        raise TypeError("check_spec_poly expects a classical game")
    if any(v < 0 for grid in (g.P, g.Q) for row in grid for v in row):
        raise ValueError("the dominance class assumes nonnegative payoffs")
    r, s = g.r, g.s

    def column_ok(col, factor) -> bool:
        if len(col) == 1:
            return True
        top = max(col)
        if col.count(top) > 1:
            return False
        return all(v == top or top > factor * v for v in col)

    for j in range(s):
        if not column_ok([g.P[i][j] for i in range(r)], r - 1):
            return False
    for i in range(r):
        if not column_ok(list(g.Q[i]), s - 1):
            return False
    return True


def solve_game_poly(g: BimatrixGame) -> StrategyPair:
    """Polynomial-time equilibrium for games in the dominance class.

    Solve the logarithmic image of the embedded instance, read off the
    support, solve the classical linear system on that support exactly, and
    rescale the two z-parts onto the simplex.
    """
    if not check_spec_poly(g):
        raise ValidationError("the game is outside the strict-dominance class")
    c = game_to_necp(g)
    verdict = necp_dominance(c)
    if not verdict.holds:
        raise InternalError(
            f"dominance unexpectedly fails for a qualifying game: "
            f"{verdict.witness}")
    sol = graph_solver.solve(log_image(c))
    support = sorted(
        [LabeledColumn(i, BLUE) for i in sol.w.support()]
        + [LabeledColumn(j, RED) for j in sol.z.support()])
    A, b = necp_system(c)
    n = c.n
    idx = [col.label if col.color == BLUE else n + col.label
           for col in support]
    values = solve_square([[A[i][j] for j in idx] for i in range(n)], b)
    if values is None or any(v < 0 for v in values):
        raise InternalError("support does not carry a feasible classical basis")
    z = [Fraction(0)] * n
    for col, v in zip(support, values):
        if col.color == RED:
            z[col.label] = v
    x_part, y_part = z[:g.r], z[g.r:]
    if sum(x_part) == 0 or sum(y_part) == 0:
        raise InternalError("a strategy part vanished; support is broken")
    pair = StrategyPair(tuple(v / sum(x_part) for v in x_part),
                        tuple(v / sum(y_part) for v in y_part), CLASSICAL)
    if not is_classical_nash(g, pair):
        raise InternalError("computed pair fails the equilibrium check")
    return pair


# ---------------------------------------------------------------------------
# equilibrium counting


@dataclass(frozen=True)
class QuintShubikAudit:
    count: int
    bound_ok: bool
    components: int
    equilibria: tuple


def quint_shubik_audit(g: BimatrixGame) -> QuintShubikAudit:
    """Enumerate all tropical equilibria of a square generic game and check
    the count against 2^r - 1 (it equals 2^kappa - 1 for the graph's
    component count kappa)."""
    if g.kind != TROPICAL:
        raise TypeError("quint_shubik_audit expects a tropical game")
    if g.r != g.s:
        raise DimensionError("the audit is defined for square games")
    r = g.r
    for j in range(r):
        col = g.P.column_values(j)
        top = _max_raw(col)
        if top is None or col.count(top) != 1:
            raise DegenerateInstanceError(
                f"column {j + 1} of P lacks a unique maximizing entry")
    for i in range(r):
        row = g.Q.row_values(i)
        top = _max_raw(row)
        if top is None or row.count(top) != 1:
            raise DegenerateInstanceError(
                f"column {i + 1} of the transpose of Q lacks a unique "
                "maximizing entry")
    t = game_to_tnecp(g)
    kappa = graph_solver.component_count(build_graph(t))
    solutions = graph_solver.enumerate_solutions(t, cap=(1 << r))
    pairs = tuple(normalize_strategies(sol.z, r, r) for sol in solutions)
    count = len(pairs)
    if count != (1 << kappa) - 1:
        raise InternalError("enumeration disagrees with the component count")
    return QuintShubikAudit(count, count <= (1 << r) - 1, kappa, pairs)


# ---------------------------------------------------------------------------
# seeded generators


def gen_spec_poly_game(r: int, s: int, seed) -> BimatrixGame:
    """Random game in the strict-dominance class, all entries >= 1.

    Each column gets ordinary entries in 1..4 and one distinguished entry
    beyond (r - 1) (resp. (s - 1)) times the largest of them.
    """
    if r < 1 or s < 1:
        raise ValueError("action counts must be positive")
    rng = random.Random(seed)

    def build(rows, cols, factor):
        grid = [[rng.randint(1, 4) for _ in range(cols)] for _ in range(rows)]
        for j in range(cols):
            grid[rng.randrange(rows)][j] = factor * 4 + rng.randint(1, 4)
        return grid

    P = build(r, s, r - 1)
    q_t = build(s, r, s - 1)
    Q = [[q_t[j][i] for j in range(s)] for i in range(r)]
    game = classical_game(P, Q)
    if not check_spec_poly(game):
        raise InternalError("generator produced a non-qualifying game")
    return game


def gen_random_tropical_game(r: int, s: int, seed,
                             generic: bool = True) -> BimatrixGame:
    """Random tropical game; with `generic`, every payoff column (of P and
    of the transpose of Q) has a unique maximizing entry."""
    if r < 1 or s < 1:
        raise ValueError("action counts must be positive")
    rng = random.Random(seed)
    span = 8 * max(r, s) * max(r, s) + 8

    def column(length):
        while True:
            col = [rng.randint(-span, span) if rng.random() >= 0.2 else None
                   for _ in range(length)]
            finite = [v for v in col if v is not None]
            if not finite:
                continue
            if generic and finite.count(max(finite)) != 1:
                continue
            return col

    p_cols = [column(r) for _ in range(s)]
    q_t_cols = [column(s) for _ in range(r)]
    P = [[p_cols[j][i] for j in range(s)] for i in range(r)]
    Q = [[q_t_cols[i][j] for j in range(s)] for i in range(r)]
    return tropical_game(P, Q)
