"""Relational vocabularies and finite structures over the universe 0..n-1."""

from __future__ import annotations

import enum
import hashlib
import json
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

GRAPH_SYMBOL = "E"


class StructureError(ValueError):
    """Raised for malformed vocabularies, structures and structure files."""


class StructureType(str, enum.Enum):
    ARB = "arb"
    DIR = "dir"
    UNDIR = "undir"
    BASIC = "basic"
    MON = "mon"

    @classmethod
    def parse(cls, value: "str | StructureType") -> "StructureType":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise StructureError(f"unknown structure type {value!r}") from None

    @property
    def is_graph(self) -> bool:
        return self in (StructureType.DIR, StructureType.UNDIR, StructureType.BASIC)

    @property
    def counts_pairs(self) -> bool:
        """Whether the modification norm counts unordered pairs instead of tuples."""
        return self in (StructureType.UNDIR, StructureType.BASIC)


@dataclass(frozen=True)
class Vocabulary:
    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        symbols = tuple((str(name), int(arity)) for name, arity in self.symbols)
        object.__setattr__(self, "symbols", symbols)
        seen = set()
        for name, arity in symbols:
            if not name:
                raise StructureError("relation symbol names must be nonempty")
            if name in seen:
                raise StructureError(f"duplicate relation symbol {name!r}")
            if arity < 1:
                raise StructureError(f"symbol {name!r} has arity {arity} < 1")
            seen.add(name)

    @classmethod
    def graph(cls) -> "Vocabulary":
        return cls(((GRAPH_SYMBOL, 2),))

    @classmethod
    def monadic(cls, *names: str) -> "Vocabulary":
        return cls(tuple((name, 1) for name in names))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.symbols)

    def arity(self, name: str) -> int:
        for sym, arity in self.symbols:
            if sym == name:
                return arity
        raise StructureError(f"symbol {name!r} not in vocabulary")

    def index(self, name: str) -> int:
        return self.names.index(name)

    def __contains__(self, name: object) -> bool:
        return name in self.names

    def __len__(self) -> int:
        return len(self.symbols)

    @property
    def is_monadic(self) -> bool:
        return all(arity == 1 for _, arity in self.symbols)

    @property
    def is_graph(self) -> bool:
        return len(self.symbols) == 1 and self.symbols[0][1] == 2


@dataclass(frozen=True, eq=False)
class Structure:
    """A finite structure: vocabulary, universe size ``n`` and one tuple set per symbol."""

    vocabulary: Vocabulary
    universe_size: int
    relations: Mapping[str, frozenset] = field(default_factory=dict)

    def __post_init__(self) -> None:
        n = int(self.universe_size)
        if n < 1:
            raise StructureError("universe must be nonempty")
        object.__setattr__(self, "universe_size", n)
        rels = {}
        for name, arity in self.vocabulary.symbols:
            tuples = frozenset(tuple(int(c) for c in t) for t in self.relations.get(name, ()))
            for t in tuples:
                if len(t) != arity:
                    raise StructureError(f"tuple {t} has wrong arity for {name}/{arity}")
                if any(c < 0 or c >= n for c in t):
                    raise StructureError(f"tuple {t} of {name} is outside universe 0..{n - 1}")
            rels[name] = tuples
        extra = set(self.relations) - set(rels)
        if extra:
            raise StructureError(f"relations for unknown symbols: {sorted(extra)}")
        object.__setattr__(self, "relations", MappingProxyType(rels))

    @property
    def n(self) -> int:
        return self.universe_size

    def __getitem__(self, name: str) -> frozenset:
        return self.relations[name]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Structure):
            return NotImplemented
        return (
            self.vocabulary == other.vocabulary
            and self.universe_size == other.universe_size
            and dict(self.relations) == dict(other.relations)
        )

    def __hash__(self) -> int:
        return hash((self.vocabulary, self.universe_size,
                     tuple(sorted((k, tuple(sorted(v))) for k, v in self.relations.items()))))

    def __repr__(self) -> str:
        rels = ", ".join(f"{k}={sorted(v)}" for k, v in self.relations.items())
        return f"Structure(n={self.universe_size}, {rels})"

    def with_relations(self, relations: Mapping[str, Iterable]) -> "Structure":
        merged = dict(self.relations)
        merged.update({k: frozenset(map(tuple, v)) for k, v in relations.items()})
        return Structure(self.vocabulary, self.universe_size, merged)

    def permuted(self, perm: "list[int] | tuple[int, ...]") -> "Structure":
        """Image of the structure under the element bijection ``i -> perm[i]``."""
        if sorted(perm) != list(range(self.universe_size)):
            raise StructureError("not a permutation of the universe")
        return Structure(
            self.vocabulary,
            self.universe_size,
            {k: {tuple(perm[c] for c in t) for t in v} for k, v in self.relations.items()},
        )

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "universe": self.universe_size,
            "relations": {
                name: {"arity": arity, "tuples": [list(t) for t in sorted(self.relations[name])]}
                for name, arity in self.vocabulary.symbols
            },
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_dict(), **kwargs)

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "Structure":
        try:
            n = data["universe"]
            rel_data = data.get("relations", {})
            symbols = []
            relations = {}
            for name, spec in rel_data.items():
                arity = int(spec["arity"])
                symbols.append((name, arity))
                relations[name] = [tuple(t) for t in spec.get("tuples", [])]
        except (KeyError, TypeError, AttributeError) as exc:
            raise StructureError(f"malformed structure JSON: {exc}") from None
        if isinstance(n, bool) or not isinstance(n, int):
            raise StructureError("'universe' must be an integer")
        return cls(Vocabulary(tuple(symbols)), n, relations)

    @classmethod
    def from_json(cls, text: str) -> "Structure":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise StructureError(f"invalid JSON: {exc}") from None
        return cls.from_json_dict(data)

    def digest(self) -> str:
        return hashlib.sha256(self.to_json(sort_keys=True).encode()).hexdigest()[:16]


# -- graph conveniences ------------------------------------------------------


def graph(n: int, edges: Iterable = (), *, symmetric: bool = True, loops: Iterable[int] = ()) -> Structure:
    """Graph structure over the vocabulary {E/2}.

    With ``symmetric`` each given pair is inserted in both orientations.
    """
    tuples = set()
    for u, v in edges:
        tuples.add((u, v))
        if symmetric:
            tuples.add((v, u))
    for v in loops:
        tuples.add((v, v))
    return Structure(Vocabulary.graph(), n, {GRAPH_SYMBOL: tuples})


def graph_symbol(s: Structure) -> str:
    if not s.vocabulary.is_graph:
        raise StructureError("structure is not a graph")
    return s.vocabulary.names[0]


def edge_pairs(s: Structure) -> set[tuple[int, int]]:
    """Unordered edges ``(u, v)`` with ``u <= v`` of a graph structure."""
    return {(min(u, v), max(u, v)) for u, v in s[graph_symbol(s)]}


def neighbours(s: Structure) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(s.n)]
    for u, v in s[graph_symbol(s)]:
        adj[u].add(v)
    return adj


def check_structure_type(s: Structure, t: "StructureType | str") -> bool:
    t = StructureType.parse(t)
    if t is StructureType.ARB:
        return True
    if t is StructureType.MON:
        return s.vocabulary.is_monadic
    if not s.vocabulary.is_graph:
        return False
    if t is StructureType.DIR:
        return True
    rel = s.relations[s.vocabulary.names[0]]
    if any((v, u) not in rel for u, v in rel):
        return False
    if t is StructureType.UNDIR:
        return True
    return all(u != v for u, v in rel)
