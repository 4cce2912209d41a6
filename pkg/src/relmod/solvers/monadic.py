"""Solver for monadic structures via element types.

The type of an element is the set of unary relations containing it, stored
as a bitmask in vocabulary order. Elements of equal type are interchangeable,
so a modulator is determined up to isomorphism by how many elements of each
source type are moved to each target type. For every such retyping multiset
within budget we build one representative (using the smallest elements of
each source type) and model check it.
"""

from __future__ import annotations

from typing import Iterator, Optional

from ..modelcheck import CompiledFormula, DenseStructure
from ..modification import Modulator, OperationKind
from ..structures import StructureType
from .base import Limits, Meter, PatternMismatch, SolveRequest, SolveResult
from .common import Toggler


def element_types(s) -> list[int]:
    types = [0] * s.n
    for i, name in enumerate(s.vocabulary.names):
        for (e,) in s[name]:
            types[e] |= 1 << i
    return types


def type_histogram(s) -> dict[int, int]:
    hist: dict[int, int] = {}
    for t in element_types(s):
        hist[t] = hist.get(t, 0) + 1
    return hist


def _retypings(kind: OperationKind, present: list[int], width: int) -> list[tuple[int, int, int]]:
    out = []
    for t1 in present:
        for t2 in range(1 << width):
            if t1 == t2:
                continue
            if kind is OperationKind.DEL and t2 & ~t1:
                continue
            if kind is OperationKind.ADD and t1 & ~t2:
                continue
            out.append((bin(t1 ^ t2).count("1"), t1, t2))
    out.sort()
    return out


def _multisets(moves, budget: int, available: dict[int, int]) -> Iterator[list]:
    chosen: list = []

    def rec(start: int, left: int) -> Iterator[list]:
        yield chosen
        for j in range(start, len(moves)):
            cost, t1, _ = moves[j]
            if cost > left:
                break
            if available[t1] == 0:
                continue
            available[t1] -= 1
            chosen.append(moves[j])
            yield from rec(j, left - cost)
            chosen.pop()
            available[t1] += 1

    yield from rec(0, budget)


def solve_monadic(req: SolveRequest, limits: Optional[Limits] = None) -> SolveResult:
    if req.structure_type is not StructureType.MON:
        raise PatternMismatch("the monadic solver needs a monadic structure")
    s, kind = req.structure, req.kind
    meter = Meter(limits)
    names = s.vocabulary.names
    types = element_types(s)
    members: dict[int, list[int]] = {}
    for e, t in enumerate(types):
        members.setdefault(t, []).append(e)
    moves = _retypings(kind, sorted(members), len(names))
    compiled = CompiledFormula(req.formula, s.vocabulary, s.n)
    dense = DenseStructure.from_structure(s)
    toggler = Toggler(dense, StructureType.MON)
    available = {t: len(v) for t, v in members.items()}

    for chosen in _multisets(moves, req.k, available):
        meter.tick()
        units = []
        used: dict[int, int] = {}
        for _, t1, t2 in chosen:
            e = members[t1][used.get(t1, 0)]
            used[t1] = used.get(t1, 0) + 1
            diff = t1 ^ t2
            units.extend((names[i], (e,)) for i in range(len(names)) if diff >> i & 1)
        toggler.flip(units)
        ok = compiled.holds(dense)
        toggler.flip(units)
        if ok:
            rels: dict[str, set] = {}
            for rel, tup in units:
                rels.setdefault(rel, set()).add(tup)
            return SolveResult(True, Modulator(rels), "monadic", meter.nodes)
    return SolveResult(False, None, "monadic", meter.nodes)
