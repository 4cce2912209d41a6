"""Modulators: application, norms, legality, complement duality, enumeration."""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .formula import And, Atom, Eq, Formula, Matrix, Not, map_leaves
from .structures import Structure, StructureType, check_structure_type


class ModificationError(ValueError):
    pass


class OperationKind(str, enum.Enum):
    DEL = "del"
    ADD = "add"
    EDIT = "edit"

    @classmethod
    def parse(cls, value: "str | OperationKind") -> "OperationKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ModificationError(f"unknown operation kind {value!r}") from None


@dataclass(frozen=True, eq=False)
class Modulator:
    """Per-symbol sets of tuples to toggle."""

    relations: Mapping[str, frozenset]

    def __post_init__(self) -> None:
        rels = {name: frozenset(tuple(int(c) for c in t) for t in tuples)
                for name, tuples in self.relations.items()}
        object.__setattr__(self, "relations", MappingProxyType({k: v for k, v in rels.items() if v}))

    @classmethod
    def empty(cls) -> "Modulator":
        return cls({})

    def __getitem__(self, name: str) -> frozenset:
        return self.relations.get(name, frozenset())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Modulator):
            return NotImplemented
        return dict(self.relations) == dict(other.relations)

    def __hash__(self) -> int:
        return hash(tuple(sorted((k, tuple(sorted(v))) for k, v in self.relations.items())))

    def __bool__(self) -> bool:
        return bool(self.relations)

    def __repr__(self) -> str:
        return f"Modulator({ {k: sorted(v) for k, v in sorted(self.relations.items())} })"

    def tuples(self) -> Iterator[tuple[str, tuple]]:
        for name in sorted(self.relations):
            for t in sorted(self.relations[name]):
                yield name, t

    def union(self, other: "Modulator") -> "Modulator":
        names = set(self.relations) | set(other.relations)
        return Modulator({k: self[k] | other[k] for k in names})

    def to_json_dict(self) -> dict:
        return {"relations": {k: [list(t) for t in sorted(v)] for k, v in sorted(self.relations.items())}}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_dict(), **kwargs)

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "Modulator":
        try:
            return cls({k: [tuple(t) for t in v] for k, v in data["relations"].items()})
        except (KeyError, TypeError, AttributeError) as exc:
            raise ModificationError(f"malformed modulator JSON: {exc}") from None


def _check_shape(s: Structure, m: Modulator) -> None:
    for name, tuples in m.relations.items():
        if name not in s.vocabulary:
            raise ModificationError(f"modulator names unknown symbol {name!r}")
        arity = s.vocabulary.arity(name)
        for t in tuples:
            if len(t) != arity:
                raise ModificationError(f"tuple {t} has wrong arity for {name}/{arity}")
            if any(c < 0 or c >= s.n for c in t):
                raise ModificationError(f"tuple {t} of {name} is outside the universe")


def apply(s: Structure, m: Modulator) -> Structure:
    """Per-relation symmetric difference."""
    _check_shape(s, m)
    return Structure(s.vocabulary, s.n, {name: s[name] ^ m[name] for name in s.vocabulary.names})


def norm(m: Modulator, t: "StructureType | str") -> int:
    t = StructureType.parse(t)
    if t.counts_pairs:
        return sum(len({frozenset(p) for p in tuples}) for tuples in m.relations.values())
    return sum(len(tuples) for tuples in m.relations.values())


def validate(s: Structure, m: Modulator, kind: "OperationKind | str", t: "StructureType | str") -> bool:
    kind = OperationKind.parse(kind)
    try:
        result = apply(s, m)
    except ModificationError:
        return False
    for name, tuples in m.relations.items():
        if kind is OperationKind.DEL and not tuples <= s[name]:
            return False
        if kind is OperationKind.ADD and tuples & s[name]:
            return False
    return check_structure_type(result, t)


def complement_structure(s: Structure, t: "StructureType | str" = StructureType.ARB) -> Structure:
    """Complement every relation; for basic graphs the diagonal stays empty."""
    t = StructureType.parse(t)
    relations = {}
    for name, arity in s.vocabulary.symbols:
        full = itertools.product(range(s.n), repeat=arity)
        if t is StructureType.BASIC:
            full = (p for p in full if p[0] != p[1])
        relations[name] = set(full) - s[name]
    return Structure(s.vocabulary, s.n, relations)


def complement_formula(f: Formula, t: "StructureType | str" = StructureType.ARB) -> Formula:
    t = StructureType.parse(t)

    def swap(leaf: Matrix) -> Matrix:
        if not isinstance(leaf, Atom):
            return leaf
        if t is StructureType.BASIC:
            x, y = leaf.args
            return And((Not(Eq(x, y)), Not(leaf)))
        return Not(leaf)

    return Formula(f.prefix, map_leaves(f.matrix, swap))


# -- edit units ----------------------------------------------------------------
#
# A unit is the smallest legal modification: one tuple, or for undirected and
# basic graphs one unordered pair (both orientations toggled together). Units
# are written (symbol, tuple) with pair units normalised to u <= v, so every
# valid modulator is a set of units and its norm is the number of units.


Unit = tuple[str, tuple]


def unit_of(rel: str, tup: tuple, t: StructureType) -> Unit:
    if t.counts_pairs:
        u, v = tup
        return rel, (min(u, v), max(u, v))
    return rel, tuple(tup)


def unit_tuples(unit: Unit, t: StructureType) -> tuple[tuple, ...]:
    rel, tup = unit
    if t.counts_pairs and tup[0] != tup[1]:
        return tup, (tup[1], tup[0])
    return (tup,)


def units_over(s: Structure, t: StructureType, elements: Iterable[int] | None = None,
               relations: Iterable[str] | None = None) -> list[Unit]:
    """All type-legal units whose components lie in ``elements`` (default: the universe)."""
    elems = sorted(set(range(s.n) if elements is None else elements))
    rel_names = s.vocabulary.names if relations is None else [r for r in s.vocabulary.names if r in set(relations)]
    out = []
    for name in rel_names:
        arity = s.vocabulary.arity(name)
        for tup in itertools.product(elems, repeat=arity):
            if t.counts_pairs:
                if tup[0] > tup[1] or (t is StructureType.BASIC and tup[0] == tup[1]):
                    continue
            out.append((name, tup))
    return out


def unit_allowed(s: Structure, unit: Unit, kind: OperationKind, t: StructureType) -> bool:
    rel, tup = unit
    if t is StructureType.BASIC and tup[0] == tup[1]:
        return False
    present = tup in s[rel]
    if kind is OperationKind.DEL:
        return present
    if kind is OperationKind.ADD:
        return not present
    return True


def modulator_from_units(units: Iterable[Unit], t: StructureType) -> Modulator:
    rels: dict[str, set] = {}
    for unit in units:
        rels.setdefault(unit[0], set()).update(unit_tuples(unit, t))
    return Modulator(rels)


def legal_units(s: Structure, kind: "OperationKind | str", t: "StructureType | str") -> list[Unit]:
    kind, t = OperationKind.parse(kind), StructureType.parse(t)
    return [u for u in units_over(s, t) if unit_allowed(s, u, kind, t)]


def enumerate_modulators(s: Structure, k: int, kind: "OperationKind | str",
                         t: "StructureType | str") -> Iterator[Modulator]:
    """Every valid modulator of norm at most ``k``, by size then lexicographically."""
    t = StructureType.parse(t)
    units = legal_units(s, kind, t)
    for size in range(min(k, len(units)) + 1):
        for combo in itertools.combinations(units, size):
            yield modulator_from_units(combo, t)
