"""The blue/red bipartite multigraph attached to a tropical complementarity
instance, and the polynomial-time solver built on its perfect matchings.

Row node i and column node i are joined by a blue edge; a red edge joins row
i to column j exactly when the residual q_i (/) M_ij is minimal down column
j.  A perfect matching with at least one red edge maps to a solution via
`alpha`; the solver prunes red edges to one per column, finds the alternating
cycle that a 2n-edge graph on 2n nodes must contain, and toggles it against
the all-blue matching.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, List, NamedTuple

from .errors import (DegenerateInstanceError, GuardExceededError,
                     InternalError)
from .instances import TnecpInstance, TropSolution, require_valid
from .semiring import (RES_FINITE, TropVector, column_residual_argmin)

BLUE = "blue"
RED = "red"


class Edge(NamedTuple):
    row: int
    col: int
    color: str


@dataclass(frozen=True)
class ComplementarityGraph:
    """Edge structure plus the residual value carried by each column.

    red_rows[j] lists (ascending) the rows joined to column node j by a red
    edge; col_values[j] is the shared residual value of those edges, always
    finite for valid instances.
    """

    n: int
    domain: str
    red_rows: tuple
    col_values: tuple

    @property
    def blue_edges(self) -> tuple:
        return tuple(Edge(i, i, BLUE) for i in range(self.n))

    @property
    def red_edges(self) -> tuple:
        return tuple(Edge(i, j, RED) for j in range(self.n)
                     for i in self.red_rows[j])

    @property
    def edges(self) -> frozenset:
        return frozenset(self.blue_edges) | frozenset(self.red_edges)


def build_graph(t: TnecpInstance) -> ComplementarityGraph:
    n = t.n
    q = t.q_plus.values
    red_rows = []
    col_values = []
    for j in range(n):
        code, value, rows = column_residual_argmin(
            q, t.M_minus.column_values(j), t.domain)
        if code != RES_FINITE:
            raise InternalError(
                "column residual minimum is not finite; instance invalid?")
        red_rows.append(rows)
        col_values.append(value)
    return ComplementarityGraph(n, t.domain, tuple(red_rows),
                                tuple(col_values))


def is_nondegenerate(t: TnecpInstance) -> bool:
    """True iff every column node carries exactly one red edge."""
    return all(len(rows) == 1 for rows in build_graph(t).red_rows)


def lowest_row_index(col: int, rows: tuple) -> int:
    """Default pruning rule: keep the red edge with the smallest row index."""
    return rows[0]


def prune_representatives(g: ComplementarityGraph,
                          rule: Callable[[int, tuple], int] = lowest_row_index
                          ) -> tuple:
    """One red row per column, chosen by the rule; this is the symbolic
    perturbation that makes degenerate instances behave nondegenerately."""
    reps = []
    for j, rows in enumerate(g.red_rows):
        rep = rule(j, rows)
        if rep not in rows:
            raise ValueError(f"pruning rule picked a non-edge row for column {j}")
        reps.append(rep)
    return tuple(reps)


def alpha(g: ComplementarityGraph, edges: Iterable[Edge],
          t: TnecpInstance) -> TropSolution:
    """Map an edge subset to the point (w, z): w_i = q_i when the blue edge
    at i is present, z_j = the column residual when any red edge enters j."""
    w = [None] * g.n
    z = [None] * g.n
    graph_edges = g.edges
    for e in edges:
        if e not in graph_edges:
            raise ValueError(f"{e} is not an edge of the graph")
        if e.color == BLUE:
            w[e.row] = t.q_plus.values[e.row]
        else:
            z[e.col] = g.col_values[e.col]
    return TropSolution(TropVector(tuple(w), g.domain),
                        TropVector(tuple(z), g.domain))


def _cycle_from(start: int, succ) -> List[int]:
    """Follow the out-degree-one orientation until a node repeats; returns
    the cycle as a node list.  Nodes 0..n-1 are rows, n..2n-1 are columns."""
    path = []
    position = {}
    node = start
    while node not in position:
        position[node] = len(path)
        path.append(node)
        node = succ(node)
    return path[position[node]:]


def _cycle_edges(cycle_nodes: List[int], n: int) -> List[Edge]:
    edges = []
    for a, b in zip(cycle_nodes, cycle_nodes[1:] + cycle_nodes[:1]):
        if a < n:
            edges.append(Edge(a, b - n, BLUE))
        else:
            edges.append(Edge(b, a - n, RED))
    return edges


def solve(t: TnecpInstance,
          prune_rule: Callable[[int, tuple], int] = lowest_row_index
          ) -> TropSolution:
    """Always-successful polynomial-time solve.

    After pruning, blue edges oriented row-to-column and red edges back give
    every node out-degree one, so a cycle exists; it alternates colors, and
    toggling it against the all-blue matching yields a solution.
    """
    require_valid(t)
    g = build_graph(t)
    n = g.n
    reps = prune_representatives(g, prune_rule)

    def succ(node: int) -> int:
        return node + n if node < n else reps[node - n]

    cycle = _cycle_from(0, succ)
    # toggling the cycle against the all-blue matching drops its blue edges
    # and picks up its red ones
    matched = [e for e in _cycle_edges(cycle, n) if e.color == RED]
    cycle_rows = {v for v in cycle if v < n}
    matched.extend(Edge(i, i, BLUE) for i in range(n) if i not in cycle_rows)
    return alpha(g, matched, t)


def components(g: ComplementarityGraph) -> List[frozenset]:
    """Connected components of the full graph (all red edges included),
    as node sets sorted by their smallest row node."""
    parent = list(range(2 * g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for i in range(g.n):
        union(i, g.n + i)
    for j, rows in enumerate(g.red_rows):
        for i in rows:
            union(i, g.n + j)
    groups: dict = {}
    for x in range(2 * g.n):
        groups.setdefault(find(x), set()).add(x)
    return sorted((frozenset(nodes) for nodes in groups.values()),
                  key=min)


def component_count(g: ComplementarityGraph) -> int:
    return len(components(g))


def count_solutions(t: TnecpInstance) -> tuple:
    """(2^kappa - 1, exact?) where kappa counts the graph's components.

    The count is a lower bound in general and exact precisely when the
    instance is nondegenerate.
    """
    require_valid(t)
    g = build_graph(t)
    kappa = component_count(g)
    exact = all(len(rows) == 1 for rows in g.red_rows)
    return (1 << kappa) - 1, exact


def _components_with_cycles(g: ComplementarityGraph):
    """On a nondegenerate graph: components sorted by smallest row node,
    each paired with its unique cycle's edge list."""
    n = g.n
    reps = tuple(rows[0] for rows in g.red_rows)

    def succ(node: int) -> int:
        return node + n if node < n else reps[node - n]

    comp_of = {}
    comps = []
    for start in range(2 * n):
        if start in comp_of:
            continue
        # explore undirected component via blue + red adjacency
        stack, nodes = [start], set()
        while stack:
            v = stack.pop()
            if v in nodes:
                continue
            nodes.add(v)
            if v < n:
                stack.append(v + n)
                stack.extend(n + j for j in range(n) if v == reps[j])
            else:
                stack.append(reps[v - n])
                stack.append(v - n)
        for v in nodes:
            comp_of[v] = len(comps)
        cycle = _cycle_from(min(nodes), succ)
        comps.append((min(v for v in nodes if v < n), nodes,
                      _cycle_edges(cycle, n)))
    comps.sort(key=lambda item: item[0])
    return comps


def enumerate_solutions(t: TnecpInstance, cap: int) -> List[TropSolution]:
    """All 2^kappa - 1 solutions of a nondegenerate instance.

    Each component contributes an independent cycle toggle; the all-blue
    matching (no toggles) is excluded.  Output order: subsets of the
    components (sorted by smallest row index) in binary counting order.
    """
    require_valid(t)
    g = build_graph(t)
    if any(len(rows) != 1 for rows in g.red_rows):
        raise DegenerateInstanceError("enumerate requires nondegeneracy")
    comps = _components_with_cycles(g)
    kappa = len(comps)
    total = (1 << kappa) - 1
    if total > cap:
        raise GuardExceededError(
            f"2^kappa - 1 = {total} solutions exceed the cap {cap} "
            f"(kappa = {kappa})")
    solutions = []
    for mask in range(1, (1 << kappa)):
        toggled_rows = set()
        matched = []
        for b in range(kappa):
            if mask >> b & 1:
                for e in comps[b][2]:
                    matched.append(e)
                    if e.color == BLUE:
                        toggled_rows.add(e.row)
        matched = [e for e in matched if e.color == RED]
        matched.extend(Edge(i, i, BLUE) for i in range(g.n)
                       if i not in toggled_rows)
        solutions.append(alpha(g, matched, t))
    return solutions
