"""Exact solvers for tropical linear complementarity and bimatrix games.

Everything computes over exact rationals (or the tropical zero); there is
no floating point in any solver path.  See the README for the file formats
and the CLI.
"""

from .semiring import (ADDITIVE, MULTIPLICATIVE, ExtendedScalar, TropMatrix,
                       TropScalar, TropVector, trop_add, trop_dot,
                       trop_matmul, trop_matvec, trop_mul, trop_residual,
                       trop_unit, trop_zero)
from .instances import (ClassicalSolution, NecpInstance, RationalSystem,
                        TlcpInstance, TnecpInstance, TropSolution, Violation,
                        check_lcp_solution, check_tnecp_solution,
                        gen_block_diagonal_tnecp, gen_dominant_necp,
                        gen_random_necp, gen_random_tnecp, log_image, parse,
                        parse_solution, require_valid, serialize,
                        serialize_solution, validate)
from .graph_solver import (BLUE, RED, ComplementarityGraph, Edge, alpha,
                           build_graph, component_count, components,
                           count_solutions, enumerate_solutions,
                           is_nondegenerate, lowest_row_index, solve)
from .bases import (PivotResult, TropBasis, TropSystem, basic_solution,
                    find_basis, is_nondegenerate_basis,
                    is_nondegenerate_system, is_valid_basis, lcp_system,
                    pivot)
from .lemke_howson import (ClassicalTableau, LabeledColumn, LhStep, LhTrace,
                           TraceComparison, compare_traces, lh_classical,
                           lh_tropical, twin)
from .dominance import (DominanceVerdict, NormalizedSystem,
                        SupportCorrespondence, brute_force_dominance,
                        check_dominance, classical_support,
                        covering_column_subsets, necp_dominance, necp_system,
                        normalize, support_correspondence, tropical_support)
from .games import (BimatrixGame, QuintShubikAudit, StrategyPair,
                    as_tropical_game, check_spec_poly, classical_game,
                    game_to_necp, game_to_tnecp, gen_random_tropical_game,
                    gen_spec_poly_game, is_classical_nash, is_tropical_nash,
                    normalize_strategies, quint_shubik_audit, solve_game_poly,
                    tropical_game, tropical_nash, validate_game)
from .sat_encoding import (CnfFormula, assignment_to_solution,
                           brute_force_encoded_tlcp, check_tlcp_solution,
                           decode, encode, gen_random_cnf, parse_dimacs)
from .oracles import (brute_lcp, brute_lh_step, brute_tnecp,
                      enumerate_classical_feasible_bases,
                      enumerate_perfect_matchings, enumerate_tropical_bases)
from . import errors

__version__ = "0.1.0"
