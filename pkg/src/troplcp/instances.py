"""Problem instances, their standing assumptions, JSON round-tripping, and
seeded random generators.

Three complementarity-problem kinds are modeled:

* `NecpInstance`  -- classical: find (w, z) >= 0 with w = M z + q, w'z = 0
  and z != 0, where every column of M is nonpositive with a negative entry
  and q is positive;
* `TnecpInstance` -- its tropical analogue over one of the two semifield
  domains, with no all-zero column in the matrix and a zero-free right-hand
  side;
* `TlcpInstance`  -- the general signed tropical problem (two matrices and
  two right-hand sides with disjoint finite supports).

File format: JSON with rationals as strings "p/q" (or integer strings) and
the tropical zero as null.  Canonical serialization is byte-stable: lowest
terms, sorted keys, no whitespace.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Union

from .errors import (DimensionError, InternalError, MalformedInputError,
                     RationalFormatError, ValidationError)
from .semiring import (ADDITIVE, MULTIPLICATIVE, Rational, TropMatrix,
                       TropVector, column_residual_argmin, RES_FINITE,
                       trop_matvec)

_RATIONAL_RE = re.compile(r"-?\d+(/\d+)?")


def _norm_rational(v) -> Rational:
    if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
        return v
    raise TypeError(f"expected an exact rational, got {type(v).__name__}")


def _rational_grid(rows) -> tuple:
    grid = tuple(tuple(_norm_rational(v) for v in row) for row in rows)
    if not grid or not grid[0]:
        raise DimensionError("matrices must have positive dimensions")
    if any(len(r) != len(grid[0]) for r in grid):
        raise DimensionError("matrix rows must all have the same length")
    return grid


@dataclass(frozen=True)
class Violation:
    """One broken standing assumption, pointing at the offending row/column."""

    condition: str
    axis: str            # "row" | "column" | "entry"
    index: object        # 0-based index or (i, j) pair
    message: str

    def __str__(self) -> str:
        if isinstance(self.index, tuple):
            where = "entry ({}, {})".format(*(i + 1 for i in self.index))
        else:
            where = f"{self.axis} {self.index + 1}"
        return f"{self.condition} at {where}: {self.message}"


@dataclass(frozen=True)
class TnecpInstance:
    """Tropical complementarity instance: w (+) M_minus (*) z = q_plus."""

    M_minus: TropMatrix
    q_plus: TropVector

    def __post_init__(self) -> None:
        if self.M_minus.n_rows != self.M_minus.n_cols:
            raise DimensionError("M_minus must be square")
        if len(self.q_plus) != self.M_minus.n_rows:
            raise DimensionError("q_plus length must match the matrix size")
        if self.M_minus.domain != self.q_plus.domain:
            raise DimensionError("matrix and rhs must share one domain")

    @property
    def n(self) -> int:
        return self.M_minus.n_rows

    @property
    def domain(self) -> str:
        return self.M_minus.domain


@dataclass(frozen=True)
class TlcpInstance:
    """Signed tropical instance: w (+) M- (*) z (+) q- = M+ (*) z (+) q+."""

    M_minus: TropMatrix
    M_plus: TropMatrix
    q_minus: TropVector
    q_plus: TropVector

    def __post_init__(self) -> None:
        n = self.M_minus.n_rows
        shapes = (self.M_minus.n_cols, self.M_plus.n_rows, self.M_plus.n_cols,
                  len(self.q_minus), len(self.q_plus))
        if any(s != n for s in shapes):
            raise DimensionError("all parts must be square/size-n of one n")
        domains = {self.M_minus.domain, self.M_plus.domain,
                   self.q_minus.domain, self.q_plus.domain}
        if len(domains) != 1:
            raise DimensionError("all parts must share one domain")

    @property
    def n(self) -> int:
        return self.M_minus.n_rows

    @property
    def domain(self) -> str:
        return self.M_minus.domain


@dataclass(frozen=True)
class NecpInstance:
    """Classical complementarity instance with the trivial solution (q, 0)."""

    M: tuple
    q: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "M", _rational_grid(self.M))
        object.__setattr__(self, "q", tuple(_norm_rational(v) for v in self.q))
        if len(self.M) != len(self.M[0]):
            raise DimensionError("M must be square")
        if len(self.q) != len(self.M):
            raise DimensionError("q length must match the matrix size")

    @property
    def n(self) -> int:
        return len(self.q)


@dataclass(frozen=True)
class RationalSystem:
    """A bare nonnegative system A x = b, as fed to the dominance checker."""

    A: tuple
    b: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "A", _rational_grid(self.A))
        object.__setattr__(self, "b", tuple(_norm_rational(v) for v in self.b))
        if len(self.b) != len(self.A):
            raise DimensionError("b length must match the row count of A")


@dataclass(frozen=True)
class TropSolution:
    """A (w, z) pair over the semifield; solvers only emit verified ones."""

    w: TropVector
    z: TropVector


@dataclass(frozen=True)
class ClassicalSolution:
    """A nonnegative rational (w, z) pair."""

    w: tuple
    z: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "w", tuple(_norm_rational(v) for v in self.w))
        object.__setattr__(self, "z", tuple(_norm_rational(v) for v in self.z))


# ---------------------------------------------------------------------------
# validation of standing assumptions


def validate(instance) -> List[Violation]:
    """Empty list iff every standing assumption of the instance kind holds."""
    if isinstance(instance, TnecpInstance):
        return _validate_tnecp(instance)
    if isinstance(instance, TlcpInstance):
        return _validate_tlcp(instance)
    if isinstance(instance, NecpInstance):
        return _validate_necp(instance)
    raise TypeError(f"cannot validate {type(instance).__name__}")


def _validate_tnecp(t: TnecpInstance) -> List[Violation]:
    out = []
    for j in range(t.n):
        if all(v is None for v in t.M_minus.column_values(j)):
            out.append(Violation("column-support", "column", j,
                                 "every matrix column needs a non-zero entry"))
    for i, v in enumerate(t.q_plus.values):
        if v is None:
            out.append(Violation("rhs-finite", "row", i,
                                 "the right-hand side admits no tropical zero"))
    return out


def _validate_tlcp(t: TlcpInstance) -> List[Violation]:
    out = []
    for i in range(t.n):
        for j in range(t.n):
            if (t.M_minus.rows[i][j] is not None
                    and t.M_plus.rows[i][j] is not None):
                out.append(Violation("signed-support", "entry", (i, j),
                                     "M+ and M- overlap on a finite entry"))
    for i in range(t.n):
        if (t.q_minus.values[i] is not None
                and t.q_plus.values[i] is not None):
            out.append(Violation("signed-support", "row", i,
                                 "q+ and q- overlap on a finite entry"))
    return out


def _validate_necp(c: NecpInstance) -> List[Violation]:
    out = []
    for j in range(c.n):
        col = [c.M[i][j] for i in range(c.n)]
        if any(v > 0 for v in col):
            out.append(Violation("column-nonpositive", "column", j,
                                 "matrix columns must be nonpositive"))
        elif all(v == 0 for v in col):
            out.append(Violation("column-negative-entry", "column", j,
                                 "every matrix column needs a negative entry"))
    for i, v in enumerate(c.q):
        if v <= 0:
            out.append(Violation("rhs-positive", "row", i,
                                 "the right-hand side must be positive"))
    return out


def require_valid(instance) -> None:
    violations = validate(instance)
    if violations:
        raise ValidationError("; ".join(str(v) for v in violations))


# ---------------------------------------------------------------------------
# solution checks


def check_tnecp_solution(t: TnecpInstance, sol: TropSolution) -> bool:
    """The three conditions: feasibility, complementarity, z not all zero."""
    w, z = sol.w, sol.z
    if len(w) != t.n or len(z) != t.n:
        return False
    if w.domain != t.domain or z.domain != t.domain:
        return False
    mz = trop_matvec(t.M_minus, z)
    for i in range(t.n):
        lhs = mz.values[i]
        if w.values[i] is not None and (lhs is None or w.values[i] > lhs):
            lhs = w.values[i]
        if lhs != t.q_plus.values[i]:
            return False
    if any(a is not None and b is not None for a, b in zip(w.values, z.values)):
        return False
    return any(v is not None for v in z.values)


def check_lcp_solution(c: NecpInstance, sol: ClassicalSolution,
                       require_nonzero_z: bool = True) -> bool:
    w, z = sol.w, sol.z
    if len(w) != c.n or len(z) != c.n:
        return False
    if any(v < 0 for v in w) or any(v < 0 for v in z):
        return False
    for i in range(c.n):
        if w[i] != sum(c.M[i][j] * z[j] for j in range(c.n)) + c.q[i]:
            return False
    if any(a * b != 0 for a, b in zip(w, z)):
        return False
    if require_nonzero_z and all(v == 0 for v in z):
        return False
    return True


# ---------------------------------------------------------------------------
# the exact logarithmic image


def log_image(c: NecpInstance) -> TnecpInstance:
    """Map a classical instance to its multiplicative-domain tropical image.

    M_minus entries are -M_ij as positive rationals (0 becomes the tropical
    zero) and q_plus entries are q_i.  Residual comparisons in the image
    agree exactly with comparisons of the classical ratios q_i / (-M_ij),
    which is what every tropical algorithm actually consumes.
    """
    require_valid(c)
    rows = tuple(tuple(None if v == 0 else -v for v in row) for row in c.M)
    return TnecpInstance(TropMatrix(rows, MULTIPLICATIVE),
                         TropVector(c.q, MULTIPLICATIVE))


# ---------------------------------------------------------------------------
# JSON serialization


def _rat_to_doc(v: Rational) -> str:
    return str(v)


def _trop_to_doc(v) -> Optional[str]:
    return None if v is None else str(v)


def _rat_from_doc(v) -> Rational:
    if isinstance(v, bool):
        raise RationalFormatError(f"not a rational: {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, str) and _RATIONAL_RE.fullmatch(v):
        try:
            return Fraction(v)
        except ZeroDivisionError:
            raise RationalFormatError(f"zero denominator: {v!r}") from None
    raise RationalFormatError(
        f"not a rational: {v!r} (use integer strings or 'p/q')")


def _trop_from_doc(v):
    return None if v is None else _rat_from_doc(v)


def _grid_from_doc(doc, key: str, n_rows: int, n_cols: int, tropical: bool):
    rows = doc.get(key)
    if not isinstance(rows, list):
        raise MalformedInputError(f"field {key!r} must be an array of arrays")
    if len(rows) != n_rows or any(not isinstance(r, list) or len(r) != n_cols
                                  for r in rows):
        raise DimensionError(
            f"field {key!r} must be a {n_rows}x{n_cols} array")
    conv = _trop_from_doc if tropical else _rat_from_doc
    return tuple(tuple(conv(v) for v in row) for row in rows)


def _vector_from_doc(doc, key: str, n: int, tropical: bool):
    vec = doc.get(key)
    if not isinstance(vec, list):
        raise MalformedInputError(f"field {key!r} must be an array")
    if len(vec) != n:
        raise DimensionError(f"field {key!r} must have length {n}")
    conv = _trop_from_doc if tropical else _rat_from_doc
    return tuple(conv(v) for v in vec)


def _size_from_doc(doc, key: str) -> int:
    n = doc.get(key)
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MalformedInputError(f"field {key!r} must be a positive integer")
    return n


def _domain_from_doc(doc) -> str:
    domain = doc.get("domain", ADDITIVE)
    if domain not in (ADDITIVE, MULTIPLICATIVE):
        raise MalformedInputError(f"unknown domain {domain!r}")
    return domain


def parse(data: Union[bytes, str]):
    """Parse an instance file; the 'kind' field selects the type.

    Raises MalformedInputError, RationalFormatError, DimensionError or
    ValidationError, in decreasing order of syntactic severity.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "kind" not in doc:
        raise MalformedInputError("instance files are objects with a 'kind'")
    kind = doc["kind"]
    try:
        if kind == "tnecp":
            return _parse_tnecp(doc)
        if kind == "tlcp":
            return _parse_tlcp(doc)
        if kind == "necp":
            return _parse_necp(doc)
        if kind == "bimatrix":
            return _parse_bimatrix(doc)
        if kind == "system":
            return _parse_system(doc)
    except (ValueError, TypeError) as exc:
        # e.g. nonpositive entries in a multiplicative-domain matrix
        if isinstance(exc, (MalformedInputError, RationalFormatError,
                            DimensionError, ValidationError)):
            raise
        raise ValidationError(str(exc)) from None
    raise MalformedInputError(f"unknown instance kind {kind!r}")


def _parse_tnecp(doc) -> TnecpInstance:
    n = _size_from_doc(doc, "n")
    domain = _domain_from_doc(doc)
    inst = TnecpInstance(
        TropMatrix(_grid_from_doc(doc, "M_minus", n, n, True), domain),
        TropVector(_vector_from_doc(doc, "q_plus", n, True), domain))
    require_valid(inst)
    return inst


def _parse_tlcp(doc) -> TlcpInstance:
    n = _size_from_doc(doc, "n")
    domain = _domain_from_doc(doc)
    inst = TlcpInstance(
        TropMatrix(_grid_from_doc(doc, "M_minus", n, n, True), domain),
        TropMatrix(_grid_from_doc(doc, "M_plus", n, n, True), domain),
        TropVector(_vector_from_doc(doc, "q_minus", n, True), domain),
        TropVector(_vector_from_doc(doc, "q_plus", n, True), domain))
    require_valid(inst)
    return inst


def _parse_necp(doc) -> NecpInstance:
    n = _size_from_doc(doc, "n")
    inst = NecpInstance(_grid_from_doc(doc, "M", n, n, False),
                        _vector_from_doc(doc, "q", n, False))
    require_valid(inst)
    return inst


def _parse_bimatrix(doc):
    from .games import classical_game, tropical_game, validate_game
    r = _size_from_doc(doc, "r")
    s = _size_from_doc(doc, "s")
    raw_p = doc.get("P")
    raw_q = doc.get("Q")
    has_null = any(v is None for grid in (raw_p, raw_q)
                   if isinstance(grid, list)
                   for row in grid if isinstance(row, list) for v in row)
    if has_null:
        game = tropical_game(_grid_from_doc(doc, "P", r, s, True),
                             _grid_from_doc(doc, "Q", r, s, True))
        problems = validate_game(game)
        if problems:
            raise ValidationError("; ".join(problems))
        return game
    return classical_game(_grid_from_doc(doc, "P", r, s, False),
                          _grid_from_doc(doc, "Q", r, s, False))


def _parse_system(doc) -> RationalSystem:
    rows = doc.get("A")
    if not isinstance(rows, list) or not rows or not isinstance(rows[0], list):
        raise MalformedInputError("field 'A' must be an array of arrays")
    n, d = len(rows), len(rows[0])
    return RationalSystem(_grid_from_doc(doc, "A", n, d, False),
                          _vector_from_doc(doc, "b", n, False))


def _to_doc(obj) -> dict:
    from .games import BimatrixGame
    if isinstance(obj, TnecpInstance):
        return {"kind": "tnecp", "n": obj.n, "domain": obj.domain,
                "M_minus": [[_trop_to_doc(v) for v in row]
                            for row in obj.M_minus.rows],
                "q_plus": [_trop_to_doc(v) for v in obj.q_plus.values]}
    if isinstance(obj, TlcpInstance):
        return {"kind": "tlcp", "n": obj.n, "domain": obj.domain,
                "M_minus": [[_trop_to_doc(v) for v in row]
                            for row in obj.M_minus.rows],
                "M_plus": [[_trop_to_doc(v) for v in row]
                           for row in obj.M_plus.rows],
                "q_minus": [_trop_to_doc(v) for v in obj.q_minus.values],
                "q_plus": [_trop_to_doc(v) for v in obj.q_plus.values]}
    if isinstance(obj, NecpInstance):
        return {"kind": "necp", "n": obj.n,
                "M": [[_rat_to_doc(v) for v in row] for row in obj.M],
                "q": [_rat_to_doc(v) for v in obj.q]}
    if isinstance(obj, RationalSystem):
        return {"kind": "system",
                "A": [[_rat_to_doc(v) for v in row] for row in obj.A],
                "b": [_rat_to_doc(v) for v in obj.b]}
    if isinstance(obj, BimatrixGame):
        if obj.kind == "tropical":
            p_rows = [[_trop_to_doc(v) for v in row] for row in obj.P.rows]
            q_rows = [[_trop_to_doc(v) for v in row] for row in obj.Q.rows]
        else:
            p_rows = [[_rat_to_doc(v) for v in row] for row in obj.P]
            q_rows = [[_rat_to_doc(v) for v in row] for row in obj.Q]
        return {"kind": "bimatrix", "r": obj.r, "s": obj.s,
                "P": p_rows, "Q": q_rows}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def serialize(obj, canonical: bool = True) -> bytes:
    """Bit-exact canonical JSON (sorted keys, no whitespace, lowest terms)."""
    doc = _to_doc(obj)
    if canonical:
        return json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()
    return (json.dumps(doc, indent=2) + "\n").encode()


def serialize_solution(sol) -> bytes:
    if isinstance(sol, TropSolution):
        doc = {"w": [_trop_to_doc(v) for v in sol.w.values],
               "z": [_trop_to_doc(v) for v in sol.z.values]}
    elif isinstance(sol, ClassicalSolution):
        doc = {"w": [_rat_to_doc(v) for v in sol.w],
               "z": [_rat_to_doc(v) for v in sol.z]}
    else:
        raise TypeError(f"cannot serialize {type(sol).__name__}")
    return json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()


def parse_solution(data: Union[bytes, str], tropical: bool,
                   domain: str = ADDITIVE):
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "w" not in doc or "z" not in doc:
        raise MalformedInputError("solution files carry 'w' and 'z' arrays")
    n = len(doc["w"])
    if tropical:
        return TropSolution(
            TropVector(_vector_from_doc(doc, "w", n, True), domain),
            TropVector(_vector_from_doc(doc, "z", len(doc["z"]), True), domain))
    return ClassicalSolution(_vector_from_doc(doc, "w", n, False),
                             _vector_from_doc(doc, "z", len(doc["z"]), False))


# ---------------------------------------------------------------------------
# seeded generators (deterministic in their parameters)

_MAX_REJECTIONS = 100000


def gen_random_tnecp(n: int, seed, nondegenerate: bool = True) -> TnecpInstance:
    """Random integer instance; rejection-resampled until the conditions hold.

    With the flag set, every column's residual minimum is attained exactly
    once.  The entry span grows with n^2 to keep the rejection rate low.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    span = 64 * n * n + 64
    for _ in range(_MAX_REJECTIONS):
        grid = [[rng.randint(-span, span) if rng.random() >= 0.25 else None
                 for _ in range(n)] for _ in range(n)]
        q = [rng.randint(-span, span) for _ in range(n)]
        cols = list(zip(*grid))
        if any(all(v is None for v in col) for col in cols):
            continue
        if nondegenerate:
            ok = True
            for col in cols:
                code, _, rows = column_residual_argmin(q, col, ADDITIVE)
                if code != RES_FINITE or len(rows) != 1:
                    ok = False
                    break
            if not ok:
                continue
        return TnecpInstance(TropMatrix(tuple(tuple(r) for r in grid)),
                             TropVector(tuple(q)))
    raise InternalError("rejection sampling failed to produce an instance")


def gen_block_diagonal_tnecp(block_sizes, seed) -> TnecpInstance:
    """Nondegenerate instance whose graph has one component per block.

    Inside a block of size k, column l's unique residual minimum sits at row
    l+1 (mod k), so the block's nodes form a single alternating cycle.
    """
    sizes = tuple(block_sizes)
    if not sizes or any(k < 1 for k in sizes):
        raise ValueError("block sizes must be positive")
    rng = random.Random(seed)
    n = sum(sizes)
    q = [rng.randint(-20, 20) for _ in range(n)]
    grid = [[None] * n for _ in range(n)]
    offset = 0
    for k in sizes:
        for local in range(k):
            col = offset + local
            target = offset + (local + 1) % k
            col_min = rng.randint(-10, 10)
            grid[target][col] = q[target] - col_min
            for i in range(offset, offset + k):
                if i != target and rng.random() < 0.5:
                    grid[i][col] = q[i] - (col_min + rng.randint(1, 10))
        offset += k
    return TnecpInstance(TropMatrix(tuple(tuple(r) for r in grid)),
                         TropVector(tuple(q)))


def gen_random_necp(n: int, seed) -> NecpInstance:
    """Random valid classical instance with small integer data."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    cols = []
    for _ in range(n):
        col = [-rng.randint(0, 9) for _ in range(n)]
        if all(v == 0 for v in col):
            col[rng.randrange(n)] = -rng.randint(1, 9)
        cols.append(col)
    rows = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    q = tuple(rng.randint(1, 9) for _ in range(n))
    return NecpInstance(rows, q)


def gen_dominant_necp(r: int, s: int, seed) -> NecpInstance:
    """Instance built from a game with strictly dominant column entries.

    The payoff entries are >= 1, so the embedding shift can only move them
    down, which preserves the strict dominance margins; the result passes
    the dominance check.
    """
    from .games import game_to_necp, gen_spec_poly_game
    return game_to_necp(gen_spec_poly_game(r, s, seed))
