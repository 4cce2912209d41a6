"""Check reductions against brute force on both the source and the target side."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from ..modification import Modulator, OperationKind
from ..solvers.base import Limits, SolverBudgetExceeded
from ..solvers.brute import solve_brute_force, solve_predicate
from ..solvers.radius import radius_predicate
from .gadgets import FLAGGED_MAJORITY_VARIANTS, ReductionOutput, build, canonical_name, source_kind
from .sources import (
    SetCoverInstance,
    SourceInstance,
    VertexCoverInstance,
    all_majority_instances,
    all_set_cover_instances,
    all_vertex_cover_instances,
    load_source,
    solve_source,
)


@dataclass(frozen=True)
class KindCheck:
    kind: OperationKind
    source: bool
    target: Optional[bool]
    witness: Optional[Modulator] = None
    nodes: int = 0
    reason: str = ""

    @property
    def inconclusive(self) -> bool:
        return self.target is None

    @property
    def equivalent(self) -> bool:
        return self.target is not None and self.target == self.source

    def to_json_dict(self) -> dict:
        out = {"kind": self.kind.value, "source": self.source, "target": self.target,
               "equivalent": self.equivalent, "inconclusive": self.inconclusive, "nodes": self.nodes}
        if self.witness is not None:
            out["witness"] = self.witness.to_json_dict()
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass(frozen=True)
class VerificationReport:
    reduction: str
    source: SourceInstance
    directed: bool
    budget: int
    vertices: int
    checks: tuple[KindCheck, ...]
    flagged: bool = False
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.equivalent for c in self.checks)

    @property
    def inconclusive(self) -> bool:
        return any(c.inconclusive for c in self.checks)

    def to_json_dict(self) -> dict:
        return {"reduction": self.reduction, "source": self.source.to_json_dict(), "directed": self.directed,
                "budget": self.budget, "vertices": self.vertices, "passed": self.passed,
                "flagged": self.flagged, "checks": [c.to_json_dict() for c in self.checks],
                "notes": list(self.notes)}


def check_target(out: ReductionOutput, kind: "OperationKind | str", limits: Optional[Limits] = None):
    """Decide the target instance by exhaustive search; radius r > 2 uses breadth-first distances."""
    req = out.request(kind)
    if out.radius is not None and out.radius > 2:
        return solve_predicate(out.structure, out.structure_type, out.budget, req.kind,
                               radius_predicate(out.radius), "radius_brute_force", limits)
    return solve_brute_force(req, limits)


def verify_output(out: ReductionOutput, source: SourceInstance,
                  kinds: Optional[Iterable["OperationKind | str"]] = None,
                  limits: Optional[Limits] = None) -> VerificationReport:
    expected = solve_source(source)
    chosen = out.kinds if kinds is None else tuple(OperationKind.parse(k) for k in kinds)
    checks = []
    for kind in chosen:
        try:
            res = check_target(out, kind, limits)
        except SolverBudgetExceeded as exc:
            checks.append(KindCheck(kind, expected, None, reason=str(exc)))
            continue
        checks.append(KindCheck(kind, expected, res.decision, res.witness, res.nodes_explored))
    flagged = out.name in {f"majority_{v}" for v in FLAGGED_MAJORITY_VARIANTS}
    return VerificationReport(out.name, source, out.directed, out.budget, out.structure.n, tuple(checks),
                              flagged, out.notes)


def verify_reduction(name: str, instance: SourceInstance, kinds: Optional[Iterable] = None,
                     directed: bool = False, limits: Optional[Limits] = None, **options) -> VerificationReport:
    out = build(name, instance, directed, **options)
    return verify_output(out, instance, kinds, limits)


def source_instances(name: str, max_sets: int = 3, max_universe: int = 2, max_vertices: int = 4,
                     max_length: int = 6, max_k: int = 1) -> Iterator[SourceInstance]:
    """Every source instance for ``name`` within the given limits, in a fixed order."""
    cls = source_kind(name)
    if cls is SetCoverInstance:
        return all_set_cover_instances(max_sets, max_universe, max_k)
    if cls is VertexCoverInstance:
        return all_vertex_cover_instances(max_vertices, max_k)
    return all_majority_instances(max_length)


def _verify_job(job) -> dict:
    name, data, kinds, directed, node_budget, options = job
    rep = verify_reduction(name, load_source(data), kinds, directed, Limits(node_budget), **options)
    return rep.to_json_dict()


def verify_exhaustive(name: str, *, kinds: Optional[Sequence] = None, directed: bool = False,
                      limits: Optional[Limits] = None, workers: int = 1, options: Optional[dict] = None,
                      **bounds) -> list[VerificationReport]:
    """Verify every source instance within ``bounds``; reports keep the enumeration order."""
    name = canonical_name(name)
    options = options or {}
    instances = list(source_instances(name, **bounds))
    if workers <= 1:
        return [verify_reduction(name, i, kinds, directed, limits, **options) for i in instances]
    budget = (limits or Limits.from_env()).node_budget
    kind_values = None if kinds is None else [OperationKind.parse(k).value for k in kinds]
    jobs = [(name, i.to_json_dict(), kind_values, directed, budget, options) for i in instances]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        dicts = list(pool.map(_verify_job, jobs, chunksize=8))
    return [_report_from_dict(d, i) for d, i in zip(dicts, instances)]


def _report_from_dict(d: dict, source: SourceInstance) -> VerificationReport:
    checks = tuple(
        KindCheck(OperationKind.parse(c["kind"]), c["source"], c["target"],
                  Modulator.from_json_dict(c["witness"]) if "witness" in c else None,
                  c["nodes"], c.get("reason", ""))
        for c in d["checks"])
    return VerificationReport(d["reduction"], source, d["directed"], d["budget"], d["vertices"], checks,
                              d["flagged"], tuple(d["notes"]))


def summarize(reports: Sequence[VerificationReport]) -> dict:
    """Per-kind pass counts over a batch of reports."""
    table: dict[str, dict[str, int]] = {}
    for rep in reports:
        for c in rep.checks:
            row = table.setdefault(c.kind.value, {"pass": 0, "fail": 0, "inconclusive": 0})
            row["inconclusive" if c.inconclusive else "pass" if c.equivalent else "fail"] += 1
    return table


__all__ = ["KindCheck", "VerificationReport", "check_target", "verify_output", "verify_reduction",
           "source_instances", "verify_exhaustive", "summarize"]
