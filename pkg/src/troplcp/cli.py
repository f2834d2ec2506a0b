"""Command-line front end.

Exit codes: 0 success, 1 negative domain verdict (dominance fails, UNSAT,
traces differ), 2 invalid input, 3 size guard exceeded, 4 broken internal
invariant.  All output is deterministic for fixed inputs, except the wall
time column of `bench`.

Indices in files and output (labels, rows, columns, --jstar) are 1-based;
the Python API is 0-based throughout.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

from . import graph_solver, oracles
from .dominance import check_dominance, necp_dominance, normalize
from .errors import (DegenerateInstanceError, DimensionError,
                     GuardExceededError, InternalError, MalformedInputError,
                     RationalFormatError, TroplcpError, ValidationError)
from .games import (BimatrixGame, as_tropical_game, check_spec_poly,
                    game_to_necp, normalize_strategies, quint_shubik_audit,
                    solve_game_poly, tropical_nash)
from .instances import (NecpInstance, RationalSystem, TnecpInstance,
                        TropSolution, gen_dominant_necp, gen_random_tnecp,
                        parse, serialize, serialize_solution)
from .lemke_howson import compare_traces, lh_classical, lh_tropical
from .sat_encoding import (brute_force_encoded_tlcp, decode, encode,
                           parse_dimacs)

_INVALID_INPUT = (MalformedInputError, RationalFormatError, DimensionError,
                  ValidationError, DegenerateInstanceError, ValueError,
                  TypeError, OSError)


def _write(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_json(args, doc) -> None:
    _write(args, json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")


def _read_instance(path: str):
    return parse(Path(path).read_bytes())


def _expect(instance, cls, what: str):
    if not isinstance(instance, cls):
        raise ValidationError(f"this command expects a {what} instance file")
    return instance


def _solution_doc(sol) -> dict:
    return json.loads(serialize_solution(sol).decode())


def _graph_doc(g) -> dict:
    return {"blue": [[i + 1, i + 1] for i in range(g.n)],
            "red": [[e.row + 1, e.col + 1] for e in g.red_edges]}


def _trace_lines(trace) -> str:
    lines = []
    for step_no, step in enumerate(trace.steps, 1):
        lines.append(json.dumps(
            {"step": step_no,
             "enter": [step.entering.label + 1, step.entering.color],
             "leave": [step.leaving.label + 1, step.leaving.color],
             "row": step.pivot_row + 1},
            sort_keys=True, separators=(",", ":")))
    return "".join(line + "\n" for line in lines)


# ---------------------------------------------------------------------------
# handlers


def _cmd_solve(args) -> int:
    inst = _expect(_read_instance(args.file), TnecpInstance, "tnecp")
    if args.dump_graph:
        _emit_json(args, _graph_doc(graph_solver.build_graph(inst)))
        return 0
    _emit_json(args, _solution_doc(graph_solver.solve(inst)))
    return 0


def _cmd_count(args) -> int:
    inst = _expect(_read_instance(args.file), TnecpInstance, "tnecp")
    count, exact = graph_solver.count_solutions(inst)
    _emit_json(args, {"lower_bound": count, "exact": exact})
    return 0


def _cmd_enumerate(args) -> int:
    inst = _expect(_read_instance(args.file), TnecpInstance, "tnecp")
    sols = graph_solver.enumerate_solutions(inst, cap=args.cap)
    _emit_json(args, {"count": len(sols),
                      "solutions": [_solution_doc(s) for s in sols]})
    return 0


def _cmd_lh(args) -> int:
    inst = _read_instance(args.file)
    j_star = args.jstar - 1
    if isinstance(inst, TnecpInstance):
        sol, trace = lh_tropical(inst, j_star)
    elif isinstance(inst, NecpInstance):
        sol, trace = lh_classical(inst, j_star)
    else:
        raise ValidationError("lh expects a tnecp or necp instance file")
    body = _trace_lines(trace) if args.trace else ""
    body += json.dumps(_solution_doc(sol), sort_keys=True,
                       separators=(",", ":")) + "\n"
    _write(args, body)
    return 0


def _cmd_compare(args) -> int:
    inst = _expect(_read_instance(args.file), NecpInstance, "necp")
    result = compare_traces(inst, args.jstar - 1)
    _emit_json(args, {"identical": result.identical,
                      "first_divergence": result.first_divergence})
    return 0 if result.identical else 1


def _cmd_dominance(args) -> int:
    inst = _read_instance(args.file)
    if isinstance(inst, NecpInstance):
        verdict = necp_dominance(inst)
    elif isinstance(inst, RationalSystem):
        verdict = check_dominance(normalize(inst.A, inst.b))
    else:
        raise ValidationError("dominance expects a necp or system file")
    _emit_json(args, {"holds": verdict.holds, "witness": verdict.witness})
    return 0 if verdict.holds else 1


def _strategy_doc(pair) -> dict:
    if pair.kind == "tropical":
        return {"x": [None if v is None else str(v) for v in pair.x.values],
                "y": [None if v is None else str(v) for v in pair.y.values]}
    return {"x": [str(v) for v in pair.x], "y": [str(v) for v in pair.y]}


def _cmd_nash(args) -> int:
    inst = _read_instance(args.file)
    game = _expect(inst, BimatrixGame, "bimatrix")
    if args.tropical or game.kind == "tropical":
        game = as_tropical_game(game)
        if args.enumerate:
            audit = quint_shubik_audit(game)
            _emit_json(args, {"count": audit.count,
                              "equilibria": [_strategy_doc(p)
                                             for p in audit.equilibria]})
        else:
            _emit_json(args, _strategy_doc(tropical_nash(game)))
        return 0
    if args.enumerate or not check_spec_poly(game):
        pairs = _nash_by_brute_force(game)
        if args.enumerate:
            _emit_json(args, {"count": len(pairs),
                              "equilibria": [_strategy_doc(p) for p in pairs]})
        else:
            _emit_json(args, _strategy_doc(pairs[0]))
        return 0
    _emit_json(args, _strategy_doc(solve_game_poly(game)))
    return 0


def _nash_by_brute_force(game):
    from .games import StrategyPair
    sols = oracles.brute_lcp(game_to_necp(game))
    pairs = []
    seen = set()
    for sol in sols:
        x_part, y_part = sol.z[:game.r], sol.z[game.r:]
        x = tuple(v / sum(x_part) for v in x_part)
        y = tuple(v / sum(y_part) for v in y_part)
        if (x, y) not in seen:
            seen.add((x, y))
            pairs.append(StrategyPair(x, y, "classical"))
    if not pairs:
        raise InternalError("a game must have at least one equilibrium")
    return pairs


def _cmd_encode_sat(args) -> int:
    formula = parse_dimacs(Path(args.file).read_text(encoding="utf-8"))
    _write(args, serialize(encode(formula)).decode() + "\n")
    return 0


def _cmd_sat_check(args) -> int:
    formula = parse_dimacs(Path(args.file).read_text(encoding="utf-8"))
    solution = brute_force_encoded_tlcp(encode(formula))
    if solution is None:
        _write(args, "UNSAT\n")
        return 1
    assignment = decode(solution, formula.n)
    literals = " ".join(str(i + 1 if true else -(i + 1))
                        for i, true in enumerate(assignment))
    _write(args, f"SAT\nv {literals} 0\n")
    return 0


def _cmd_oracle(args) -> int:
    inst = _read_instance(args.file)
    if args.method == "lcp":
        sols = oracles.brute_lcp(_expect(inst, NecpInstance, "necp"))
    else:
        sols = oracles.brute_tnecp(_expect(inst, TnecpInstance, "tnecp"))
    _emit_json(args, {"count": len(sols),
                      "solutions": [_solution_doc(s) for s in sols]})
    return 0


def _cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["family", "n", "seed", "pivots_tropical",
                     "pivots_classical", "trace_identical", "wall_time_s"])
    for size in sizes:
        for k in range(args.count):
            seed = args.seed + k
            start = time.perf_counter()
            if args.family == "random-nondegenerate-tnecp":
                inst = gen_random_tnecp(size, seed)
                _, trace = lh_tropical(inst)
                row = [args.family, size, seed, len(trace), "", ""]
            else:
                inst = gen_dominant_necp(size, size, seed)
                result = compare_traces(inst)
                row = [args.family, inst.n, seed, len(result.tropical),
                       len(result.classical), str(result.identical).lower()]
            row.append(f"{time.perf_counter() - start:.6f}")
            writer.writerow(row)
    _write(args, buf.getvalue())
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="troplcp",
        description="exact tropical linear complementarity toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--out", help="write output to this file instead of stdout")

    p = sub.add_parser("solve", parents=[out],
                       help="solve a tnecp instance in polynomial time")
    p.add_argument("file")
    p.add_argument("--dump-graph", action="store_true",
                   help="emit the blue/red edge lists instead of solving")
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser("count", parents=[out],
                       help="solution-count lower bound 2^kappa - 1")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_count)

    p = sub.add_parser("enumerate", parents=[out],
                       help="all solutions of a nondegenerate tnecp instance")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=1024,
                   help="refuse to emit more than this many solutions")
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser("lh", parents=[out],
                       help="complementary pivot run (tnecp or necp file)")
    p.add_argument("file")
    p.add_argument("--jstar", type=int, default=1,
                   help="1-based starting label (default 1)")
    p.add_argument("--trace", action="store_true",
                   help="emit one JSON line per pivot before the solution")
    p.set_defaults(handler=_cmd_lh)

    p = sub.add_parser("compare", parents=[out],
                       help="classical vs tropical pivot traces on a necp file")
    p.add_argument("file")
    p.add_argument("--jstar", type=int, default=1)
    p.set_defaults(handler=_cmd_compare)

    p = sub.add_parser("dominance", parents=[out],
                       help="decide the dominance condition (necp or system)")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_dominance)

    p = sub.add_parser("nash", parents=[out],
                       help="equilibrium of a bimatrix game file")
    p.add_argument("file")
    p.add_argument("--tropical", action="store_true",
                   help="interpret the payoffs tropically")
    p.add_argument("--enumerate", action="store_true",
                   help="emit every equilibrium instead of one")
    p.set_defaults(handler=_cmd_nash)

    p = sub.add_parser("encode-sat", parents=[out],
                       help="encode a DIMACS cnf file as a tlcp instance")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_encode_sat)

    p = sub.add_parser("sat-check", parents=[out],
                       help="decide a cnf file through the tlcp encoding")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_sat_check)

    p = sub.add_parser("oracle", parents=[out],
                       help="brute-force reference solutions")
    p.add_argument("file")
    p.add_argument("--method", choices=["lcp", "tnecp"], required=True)
    p.set_defaults(handler=_cmd_oracle)

    p = sub.add_parser("bench", parents=[out],
                       help="CSV pivot-count report over random instances")
    p.add_argument("--family", required=True,
                   choices=["random-nondegenerate-tnecp", "dominant-necp"])
    p.add_argument("--sizes", required=True,
                   help="comma-separated instance sizes")
    p.add_argument("--count", type=int, default=10,
                   help="instances per size")
    p.add_argument("--seed", type=int, default=0,
                   help="base seed; instance k uses seed + k")
    p.set_defaults(handler=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.handler(args)
    except GuardExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 4
    except _INVALID_INPUT as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TroplcpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
