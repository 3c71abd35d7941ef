"""Handelman hierarchy bounds and ranks for max stable set and max-cut, in exact arithmetic."""
from .graphs import (Graph, WeightedGraph, WeightMode, clique_sum, complement, contract_edge,
                     delete_closed_neighborhood, delete_edge, delete_node, format_graph, generate,
                     parse_graph, read_graph, unweighted)
from .handelman import (INF, BoundReport, HandelmanCertificate, RankBounds, RankResult,
                        error_bound_check, handelman_bound, handelman_rank, rank_bounds,
                        stable_set_bound, verify_certificate)
from .hierarchies import (kp_rank, ls_operator_bound, sherali_adams_bound, zeta_by_expansion,
                          zeta_closed_form)
from .maxcut import maxcut_handelman_bound, maxcut_objective_poly, maxcut_rank
from .polynomials import (SquareFreePoly, bernstein, evaluate, expand_basis_term, point_expansion,
                          restrict, stable_set_poly, target_poly)
from .rational_lp import LinearProgram, LpSolution, Sense, Status, check_solution, solve
from .stable_set import (defect, enumerate_cliques, fractional_clique_cover, fractional_stability,
                         max_cut_value, maximum_stable_set, rho, stability_number)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
