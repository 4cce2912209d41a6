"""Closed-form solvers for two-variable patterns (ae, aa) on basic graphs.

On a basic graph the relationship between two vertices x, y is one of three
states: equal, adjacent, or distinct and non-adjacent. After folding the
reflexive atoms the matrix is a condition on this state alone, so the
problem reduces to counting isolated vertices, universal vertices, edges or
missing edges.
"""

from __future__ import annotations

from typing import Optional

from ..formula import FALSE, TRUE, Atom, Eq, Matrix, Not, map_leaves, to_dnf
from ..modification import Modulator, OperationKind
from ..structures import StructureType, edge_pairs, graph_symbol, neighbours
from .base import Limits, PatternMismatch, SolveRequest, SolveResult
from .brute import solve_brute_force

SAME, ADJ, NONADJ = "same", "adjacent", "nonadjacent"
ALL_STATES = frozenset((SAME, ADJ, NONADJ))


def allowed_states(matrix: Matrix, x: str, y: str) -> frozenset:
    """States of the pair (x, y) in which the matrix holds."""

    def fold(leaf: Matrix) -> Matrix:
        if isinstance(leaf, Eq):
            if leaf.left == leaf.right:
                return TRUE
            return Eq(x, y)
        if isinstance(leaf, Atom):
            a, b = leaf.args
            if a == b:
                return FALSE
            return Atom(leaf.rel, (x, y))
        return leaf

    states: set = set()
    for clause in to_dnf(map_leaves(matrix, fold)):
        possible = set(ALL_STATES)
        for lit in clause:
            positive = not isinstance(lit, Not)
            base = lit.arg if isinstance(lit, Not) else lit
            if isinstance(base, Eq):
                possible &= {SAME} if positive else {ADJ, NONADJ}
            else:
                possible &= {ADJ} if positive else {SAME, NONADJ}
        states |= possible
    return frozenset(states)


def _check_request(req: SolveRequest, pattern: str) -> None:
    if req.structure_type is not StructureType.BASIC:
        raise PatternMismatch("this solver only handles basic graphs")
    if req.pattern != pattern:
        raise PatternMismatch(f"expected pattern {pattern!r}, got {req.pattern!r}")


def _pairs_modulator(rel: str, pairs) -> Modulator:
    tuples = set()
    for u, v in pairs:
        tuples.update({(u, v), (v, u)})
    return Modulator({rel: tuples})


def _constant(req: SolveRequest, name: str) -> SolveResult:
    """Patterns a and e: the matrix folds to a constant."""
    var = req.formula.prefix[0][1]
    states = allowed_states(req.formula.matrix, var, var)
    holds = SAME in states
    return SolveResult(holds, Modulator.empty() if holds else None, name)


def _tiny(req: SolveRequest, name: str, limits: Optional[Limits]) -> SolveResult:
    r = solve_brute_force(req, limits)
    return SolveResult(r.decision, r.witness, name, r.nodes_explored,
                       ("fewer than two vertices; exhaustive search used",))


def _pair_up(vertices: list[int], n: int) -> list[tuple[int, int]]:
    pairs = [(vertices[i], vertices[i + 1]) for i in range(0, len(vertices) - 1, 2)]
    if len(vertices) % 2:
        last = vertices[-1]
        pairs.append((last, 0 if last != 0 else 1))
    return pairs


def solve_basic_ae(req: SolveRequest, limits: Optional[Limits] = None) -> SolveResult:
    if req.structure_type is StructureType.BASIC and req.pattern in ("a", "e"):
        return _constant(req, "basic_ae")
    _check_request(req, "ae")
    s, kind, k = req.structure, req.kind, req.k
    name = "basic_ae"
    if s.n < 2:
        return _tiny(req, name, limits)
    x, y = (v for _, v in req.formula.prefix)
    states = allowed_states(req.formula.matrix, x, y)
    if SAME in states or {ADJ, NONADJ} <= states:
        return SolveResult(True, Modulator.empty(), name)
    if not states:
        return SolveResult(False, None, name)
    nbrs = neighbours(s)
    if states == {ADJ}:
        isolated = [v for v in range(s.n) if not nbrs[v]]
        if not isolated:
            return SolveResult(True, Modulator.empty(), name)
        if kind is OperationKind.DEL or len(isolated) > 2 * k:
            return SolveResult(False, None, name)
        return SolveResult(True, _pairs_modulator(graph_symbol(s), _pair_up(isolated, s.n)), name)
    universal = [v for v in range(s.n) if len(nbrs[v]) == s.n - 1]
    if not universal:
        return SolveResult(True, Modulator.empty(), name)
    if kind is OperationKind.ADD or len(universal) > 2 * k:
        return SolveResult(False, None, name)
    return SolveResult(True, _pairs_modulator(graph_symbol(s), _pair_up(universal, s.n)), name)


def solve_basic_aa(req: SolveRequest, limits: Optional[Limits] = None) -> SolveResult:
    _check_request(req, "aa")
    s, kind, k = req.structure, req.kind, req.k
    name = "basic_aa"
    if s.n < 2:
        return _tiny(req, name, limits)
    x, y = (v for _, v in req.formula.prefix)
    states = allowed_states(req.formula.matrix, x, y)
    if SAME not in states:
        return SolveResult(False, None, name)
    if {ADJ, NONADJ} <= states:
        return SolveResult(True, Modulator.empty(), name)
    if ADJ in states:
        missing = [(u, v) for u in range(s.n) for v in range(u + 1, s.n) if (u, v) not in s[graph_symbol(s)]]
        if not missing:
            return SolveResult(True, Modulator.empty(), name)
        if kind is OperationKind.DEL or len(missing) > k:
            return SolveResult(False, None, name)
        return SolveResult(True, _pairs_modulator(graph_symbol(s), missing), name)
    if NONADJ in states:
        edges = sorted(edge_pairs(s))
        if not edges:
            return SolveResult(True, Modulator.empty(), name)
        if kind is OperationKind.ADD or len(edges) > k:
            return SolveResult(False, None, name)
        return SolveResult(True, _pairs_modulator(graph_symbol(s), edges), name)
    return SolveResult(False, None, name)
