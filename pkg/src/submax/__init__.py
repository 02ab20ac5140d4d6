"""Tree and junction-tree upper bounds for submodular maximization.

The library evaluates nonnegative submodular set functions (cuts, coverage,
entropy, modular), builds directed-graph decompositions whose induced
bounds dominate the function everywhere, and solves a convex relaxation
over mixtures of such bounds whose value certifies an upper bound on the
true maximum.  Rounding the relaxation's moment vector recovers good
feasible sets; combinatorial baselines and randomized property suites
round out the toolkit.
"""

from .baselines import brute_force_max, double_greedy, local_search
from .core import (CapacityError, DomainError, GroundSet, LambdaFunction,
                   SetFunction, base_polytope_greedy, bits, check_monotone,
                   check_submodular, mask_of, set_of, value_table)
from .extensions import DifferenceInstance, solve_cardinality, solve_difference
from .graphs import (Dag, DecomposableGraph, NotTriangulatedError, NuVector,
                     best_tree_structure, dag_bound, dag_bound_function,
                     decomposable_bound, junction_tree, nu_from_decomposable,
                     peo_and_check, random_dag, random_directed_tree,
                     random_ktree_nu, reroot_tree, tree_nu)
from .instances import (CoverageInstance, CutInstance, EntropyInstance,
                        ModularInstance, gen_coverage, gen_entropy,
                        gen_instance, gen_modular)
from .io import (ParseError, read_instance, read_trace, write_instance,
                 write_trace)
from .polytopes import (CliqueIndex, enumerate_dk, in_nk, mk_membership,
                        nk_violations, project_simplex)
from .properties import SUITES, SuiteResult, run_suites
from .solver import (SaddleState, SolverConfig, TraceRow, graph_oracle,
                     inner_solve_hull, p_eval, q_eval, round_threshold, solve)

__version__ = "0.1.0"

__all__ = [
    "CapacityError", "CliqueIndex", "CoverageInstance", "CutInstance",
    "Dag", "DecomposableGraph", "DifferenceInstance", "DomainError",
    "EntropyInstance", "GroundSet", "LambdaFunction", "ModularInstance",
    "NotTriangulatedError", "NuVector", "ParseError", "SUITES",
    "SaddleState", "SetFunction", "SolverConfig", "SuiteResult", "TraceRow",
    "base_polytope_greedy", "best_tree_structure", "bits", "brute_force_max",
    "check_monotone", "check_submodular", "dag_bound", "dag_bound_function",
    "decomposable_bound", "double_greedy", "enumerate_dk", "gen_coverage",
    "gen_entropy", "gen_instance", "gen_modular", "graph_oracle", "in_nk",
    "inner_solve_hull", "junction_tree", "local_search", "mask_of",
    "mk_membership", "nk_violations", "nu_from_decomposable", "p_eval",
    "peo_and_check", "project_simplex", "q_eval", "random_dag",
    "random_directed_tree", "random_ktree_nu", "read_instance", "read_trace",
    "reroot_tree", "round_threshold", "run_suites", "set_of", "solve",
    "solve_cardinality", "solve_difference", "tree_nu", "value_table",
    "write_instance", "write_trace",
]
