"""Requests, results, resource limits and helpers shared by all solvers."""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from typing import Optional

from ..formula import Formula, FormulaError, atoms
from ..modelcheck import model_check
from ..modification import Modulator, OperationKind, apply, norm, validate
from ..structures import Structure, StructureError, StructureType, check_structure_type

DEFAULT_NODE_BUDGET = 1_000_000


class SolverError(RuntimeError):
    pass


class PatternMismatch(SolverError, ValueError):
    pass


class SolverBudgetExceeded(SolverError):
    """The configured node or time budget ran out before a decision was reached."""


@dataclass(frozen=True)
class Limits:
    node_budget: int = DEFAULT_NODE_BUDGET
    time_budget: Optional[float] = None

    def __post_init__(self) -> None:
        if self.node_budget <= 0:
            raise ValueError("node budget must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time budget must be positive")

    @classmethod
    def from_env(cls) -> "Limits":
        nodes = os.environ.get("RELMOD_NODE_BUDGET")
        secs = os.environ.get("RELMOD_TIME_BUDGET")
        return cls(int(nodes) if nodes else DEFAULT_NODE_BUDGET, float(secs) if secs else None)


class Meter:
    """Counts search nodes against a budget and checks the clock every so often."""

    __slots__ = ("limits", "nodes", "start")

    def __init__(self, limits: Optional[Limits] = None):
        self.limits = limits or Limits.from_env()
        self.nodes = 0
        self.start = time.monotonic()

    def tick(self, amount: int = 1) -> None:
        self.nodes += amount
        if self.nodes > self.limits.node_budget:
            raise SolverBudgetExceeded(f"node budget of {self.limits.node_budget} exceeded")
        if self.limits.time_budget is not None and self.nodes % 1024 == 0:
            if time.monotonic() - self.start > self.limits.time_budget:
                raise SolverBudgetExceeded(f"time budget of {self.limits.time_budget}s exceeded")


@dataclass(frozen=True)
class SolveRequest:
    structure: Structure
    structure_type: StructureType
    formula: Formula
    k: int
    kind: OperationKind

    def __post_init__(self) -> None:
        object.__setattr__(self, "structure_type", StructureType.parse(self.structure_type))
        object.__setattr__(self, "kind", OperationKind.parse(self.kind))
        if self.k < 0:
            raise ValueError("budget k must be non-negative")
        if not check_structure_type(self.structure, self.structure_type):
            raise StructureError(f"structure is not of type {self.structure_type.value}")
        voc = self.structure.vocabulary
        for a in atoms(self.formula.matrix):
            if a.rel not in voc or voc.arity(a.rel) != len(a.args):
                raise FormulaError(f"atom {a.rel}/{len(a.args)} does not match the structure's vocabulary")

    @property
    def pattern(self) -> str:
        return self.formula.pattern

    def with_budget(self, k: int) -> "SolveRequest":
        return SolveRequest(self.structure, self.structure_type, self.formula, k, self.kind)


@dataclass(frozen=True)
class SolveResult:
    decision: bool
    witness: Optional[Modulator]
    solver_used: str
    nodes_explored: int = 0
    notes: tuple[str, ...] = field(default_factory=tuple)

    def to_json_dict(self, req: Optional[SolveRequest] = None) -> dict:
        out = {"decision": self.decision, "solver_used": self.solver_used,
               "nodes_explored": self.nodes_explored}
        if self.witness is not None:
            out["witness"] = self.witness.to_json_dict()
            if req is not None:
                out["witness"]["kind"] = req.kind.value
                out["witness"]["norm"] = norm(self.witness, req.structure_type)
                out["witness"]["result_digest"] = apply(req.structure, self.witness).digest()
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def witness_ok(req: SolveRequest, witness: Modulator) -> bool:
    """Independent re-check: valid for the kind and type, within budget, and a model."""
    if not validate(req.structure, witness, req.kind, req.structure_type):
        return False
    if norm(witness, req.structure_type) > req.k:
        return False
    return model_check(apply(req.structure, witness), req.formula)

