"""Small pieces shared by the fragment solvers."""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from ..formula import Atom, Formula, Quantifier, atoms
from ..modelcheck import DenseStructure
from ..modification import OperationKind, Unit, unit_allowed, unit_of, unit_tuples, units_over
from ..structures import Structure, StructureType


def matrix_atoms(f: Formula) -> list[Atom]:
    return list(dict.fromkeys(atoms(f.matrix)))


def matrix_relations(f: Formula) -> list[str]:
    return sorted({a.rel for a in atoms(f.matrix)})


def split_prefix(f: Formula) -> tuple[list[str], list[str]]:
    """Leading existential block and the rest (for e*a* patterns: the universal block)."""
    exist, rest = [], []
    for q, v in f.prefix:
        if q is Quantifier.EXISTS and not rest:
            exist.append(v)
        else:
            rest.append(v)
    return exist, rest


def local_units(s: Structure, kind: OperationKind, t: StructureType, elements: Iterable[int],
                relations: Sequence[str], containing: Optional[int] = None) -> list[Unit]:
    """Legal units over ``elements`` (optionally only those mentioning ``containing``)."""
    out = []
    for u in units_over(s, t, elements, relations):
        if containing is not None and containing not in u[1]:
            continue
        if unit_allowed(s, u, kind, t):
            out.append(u)
    return out


def instantiate(atom_list: Sequence[Atom], env: Mapping[str, int], t: StructureType) -> list[Unit]:
    return list(dict.fromkeys(unit_of(a.rel, tuple(env[v] for v in a.args), t) for a in atom_list))


class Toggler:
    """Flips units in a dense structure and remembers their byte positions."""

    def __init__(self, dense: DenseStructure, t: StructureType):
        self.dense = dense
        self.t = t
        self._pos: dict[Unit, tuple[int, ...]] = {}

    def positions(self, unit: Unit) -> tuple[int, ...]:
        pos = self._pos.get(unit)
        if pos is None:
            pos = tuple(self.dense.index(unit[0], tup) for tup in unit_tuples(unit, self.t))
            self._pos[unit] = pos
        return pos

    def flip(self, units: Iterable[Unit]) -> None:
        data = self.dense.data
        for u in units:
            for p in self.positions(u):
                data[p] ^= 1


def subsets_by_size(items: Sequence, max_size: int) -> Iterator[tuple]:
    for size in range(min(max_size, len(items)) + 1):
        yield from itertools.combinations(items, size)
