"""Exhaustive search over all valid modulators up to the budget."""

from __future__ import annotations

import itertools
from math import comb
from typing import Callable, Optional

from ..modelcheck import CompiledFormula, DenseStructure
from ..modification import Modulator, OperationKind, legal_units, modulator_from_units, unit_tuples
from ..structures import Structure, StructureType
from .base import Limits, Meter, SolveRequest, SolveResult, SolverBudgetExceeded


def search_space_size(num_units: int, k: int) -> int:
    return sum(comb(num_units, i) for i in range(min(k, num_units) + 1))


def search_modulators(s: Structure, k: int, kind: OperationKind, t: StructureType,
                      accept: Callable[[DenseStructure], bool], meter: Meter) -> Optional[Modulator]:
    """First modulator (by size, then unit order) whose result passes ``accept``.

    Instances whose full search space is larger than the node budget are
    refused up front, so the oracle never gives a partial answer.
    """
    units = legal_units(s, kind, t)
    total = search_space_size(len(units), k)
    if total > meter.limits.node_budget:
        raise SolverBudgetExceeded(
            f"{total} candidate modulators exceed the node budget of {meter.limits.node_budget}")
    dense = DenseStructure.from_structure(s)
    data = dense.data
    positions = [[dense.index(u[0], tup) for tup in unit_tuples(u, t)] for u in units]
    for size in range(min(k, len(units)) + 1):
        for combo in itertools.combinations(range(len(units)), size):
            meter.tick()
            for i in combo:
                for p in positions[i]:
                    data[p] ^= 1
            ok = accept(dense)
            for i in combo:
                for p in positions[i]:
                    data[p] ^= 1
            if ok:
                return modulator_from_units((units[i] for i in combo), t)
    return None


def solve_brute_force(req: SolveRequest, limits: Optional[Limits] = None) -> SolveResult:
    meter = Meter(limits)
    compiled = CompiledFormula(req.formula, req.structure.vocabulary, req.structure.n)
    witness = search_modulators(req.structure, req.k, req.kind, req.structure_type, compiled.holds, meter)
    return SolveResult(witness is not None, witness, "brute_force", meter.nodes)


def solve_predicate(s: Structure, t: "StructureType | str", k: int, kind: "OperationKind | str",
                    predicate: Callable[[DenseStructure], bool], name: str = "brute_force",
                    limits: Optional[Limits] = None) -> SolveResult:
    """Brute force against an arbitrary property of the modified structure."""
    meter = Meter(limits)
    witness = search_modulators(s, k, OperationKind.parse(kind), StructureType.parse(t), predicate, meter)
    return SolveResult(witness is not None, witness, name, meter.nodes)
