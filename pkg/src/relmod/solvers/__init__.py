from .base import (
    Limits,
    PatternMismatch,
    SolveRequest,
    SolveResult,
    SolverBudgetExceeded,
    SolverError,
    witness_ok,
)
from .basic import allowed_states, solve_basic_aa, solve_basic_ae
from .brute import solve_brute_force, solve_predicate
from .dispatch import SOLVERS, choose_solver, dispatch_solve, get_solver
from .existential import solve_exists_star, solve_exists_star_forall
from .monadic import element_types, solve_monadic, type_histogram
from .radius import graph_radius, radius_formula, radius_predicate, solve_radius
from .search_tree import solve_fpt_search_tree

__all__ = [
    "Limits", "PatternMismatch", "SolveRequest", "SolveResult", "SolverBudgetExceeded", "SolverError",
    "witness_ok", "allowed_states", "solve_basic_aa", "solve_basic_ae", "solve_brute_force",
    "solve_predicate", "SOLVERS", "choose_solver", "dispatch_solve", "get_solver", "solve_exists_star",
    "solve_exists_star_forall", "element_types", "solve_monadic", "type_histogram", "graph_radius",
    "radius_formula", "radius_predicate", "solve_radius", "solve_fpt_search_tree",
]
