"""Modification towards radius at most r on basic graphs."""

from __future__ import annotations

from collections import deque
from typing import Optional

from ..formula import Formula, parse_formula
from ..modelcheck import DenseStructure
from ..modification import Modulator, OperationKind
from ..structures import Structure, StructureError, StructureType, check_structure_type, graph_symbol, neighbours
from .base import Limits, SolveResult
from .brute import solve_predicate


def radius_formula(r: int) -> Formula:
    """Sentence saying some vertex reaches every vertex by a walk of length at most r."""
    if r < 1:
        raise ValueError("radius must be at least 1")
    if r == 1:
        return parse_formula("exists c forall x (x = c | x ~ c)")
    mids = ["y"] if r == 2 else [f"y{i}" for i in range(1, r)]
    paths = ["x = c", "x ~ c"]
    for length in range(2, r + 1):
        chain = ["x"] + mids[:length - 1] + ["c"]
        paths.append("(" + " & ".join(f"{a} ~ {b}" for a, b in zip(chain, chain[1:])) + ")")
    quants = " ".join(f"exists {m}" for m in mids)
    return parse_formula(f"exists c forall x {quants} ({' | '.join(paths)})")


def eccentricities(n: int, adj: list) -> list[float]:
    out = []
    for c in range(n):
        dist = {c: 0}
        queue = deque([c])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        out.append(max(dist.values()) if len(dist) == n else float("inf"))
    return out


def graph_radius(s: Structure) -> float:
    return min(eccentricities(s.n, neighbours(s)))


def radius_predicate(r: int):
    """Breadth-first check of ``radius <= r`` on a dense graph."""

    def accept(d: DenseStructure) -> bool:
        n, data = d.n, d.data
        adj = [[v for v in range(n) if data[u * n + v]] for u in range(n)]
        return min(eccentricities(n, adj)) <= r

    return accept


def solve_radius(s: Structure, r: int, k: int, kind: "OperationKind | str",
                 limits: Optional[Limits] = None) -> SolveResult:
    kind = OperationKind.parse(kind)
    if r < 1:
        raise ValueError("radius must be at least 1")
    if not check_structure_type(s, StructureType.BASIC):
        raise StructureError("radius modification is defined on basic graphs")
    if r >= 2:
        result = solve_predicate(s, StructureType.BASIC, k, kind, radius_predicate(r),
                                 "radius_brute_force", limits)
        return SolveResult(result.decision, result.witness, result.solver_used, result.nodes_explored,
                           ("radius >= 2 has no tractable algorithm; exhaustive search used",))
    nbrs = neighbours(s)
    missing = [[v for v in range(s.n) if v != c and v not in nbrs[c]] for c in range(s.n)]
    center = min(range(s.n), key=lambda c: len(missing[c]))
    need = missing[center]
    if not need:
        return SolveResult(True, Modulator.empty(), "radius")
    if kind is OperationKind.DEL or len(need) > k:
        return SolveResult(False, None, "radius")
    rel = graph_symbol(s)
    tuples = {p for v in need for p in ((center, v), (v, center))}
    return SolveResult(True, Modulator({rel: tuples}), "radius")
