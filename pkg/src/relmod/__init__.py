"""Relation modification: classify, solve and cross-check first-order modification problems."""

from .catalog import catalog_formula, formula_catalog
from .classifier import ComplexityVerdict, classify
from .formula import Formula, format_formula, parse_formula, pattern_of
from .kernels import BACKEND
from .modelcheck import model_check
from .modification import Modulator, OperationKind, apply, complement_formula, complement_structure, norm, validate
from .solvers import Limits, SolveRequest, SolveResult, dispatch_solve, solve_brute_force
from .structures import Structure, StructureType, Vocabulary, check_structure_type, graph

__version__ = "0.1.0"

__all__ = [
    "catalog_formula", "formula_catalog", "ComplexityVerdict", "classify", "Formula", "format_formula",
    "parse_formula", "pattern_of", "BACKEND", "model_check", "Modulator", "OperationKind", "apply",
    "complement_formula", "complement_structure", "norm", "validate", "Limits", "SolveRequest", "SolveResult",
    "dispatch_solve", "solve_brute_force", "Structure", "StructureType", "Vocabulary", "check_structure_type",
    "graph",
]
