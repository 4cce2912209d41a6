"""Route a request to the most specific applicable solver."""

from __future__ import annotations

from typing import Callable, Optional

from ..structures import StructureType
from .base import Limits, SolveRequest, SolveResult
from .basic import solve_basic_aa, solve_basic_ae
from .brute import solve_brute_force
from .existential import solve_exists_star, solve_exists_star_forall
from .monadic import solve_monadic
from .search_tree import solve_fpt_search_tree

Solver = Callable[..., SolveResult]

SOLVERS: dict[str, Solver] = {
    "brute_force": solve_brute_force,
    "exists_star": solve_exists_star,
    "exists_star_forall": solve_exists_star_forall,
    "fpt_search_tree": solve_fpt_search_tree,
    "basic_ae": solve_basic_ae,
    "basic_aa": solve_basic_aa,
    "monadic": solve_monadic,
}

SOLVER_ALIASES = {"brute": "brute_force", "fpt": "fpt_search_tree", "e*": "exists_star",
                  "e*a": "exists_star_forall"}


def choose_solver(t: "StructureType | str", pattern: str) -> str:
    t = StructureType.parse(t)
    if t is StructureType.MON:
        return "monadic"
    if t is StructureType.BASIC and pattern == "ae":
        return "basic_ae"
    if t is StructureType.BASIC and pattern == "aa":
        return "basic_aa"
    if "a" not in pattern:
        return "exists_star"
    if pattern.count("a") == 1 and pattern.endswith("a"):
        return "exists_star_forall"
    if "ae" not in pattern:
        return "fpt_search_tree"
    return "brute_force"


def get_solver(name: str) -> Solver:
    name = SOLVER_ALIASES.get(name, name)
    try:
        return SOLVERS[name]
    except KeyError:
        raise ValueError(f"unknown solver {name!r}; choose from {', '.join(sorted(SOLVERS))}") from None


def dispatch_solve(req: SolveRequest, limits: Optional[Limits] = None, solver: str = "auto") -> SolveResult:
    if solver == "auto":
        solver = choose_solver(req.structure_type, req.pattern)
    return get_solver(solver)(req, limits)
