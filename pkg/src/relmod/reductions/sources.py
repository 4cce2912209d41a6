"""Source problems of the hardness reductions and exact solvers for them."""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass
from typing import Iterator, Mapping, Union

from ..structures import Structure, StructureError, StructureType, check_structure_type, edge_pairs, graph


class SourceError(ValueError):
    pass


def _digest(payload: dict) -> str:
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()[:16]


@dataclass(frozen=True)
class SetCoverInstance:
    """Bipartite incidence form: choose at most k sets dominating every element."""

    sets: tuple[str, ...]
    universe: tuple[str, ...]
    edges: frozenset
    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "sets", tuple(str(s) for s in self.sets))
        object.__setattr__(self, "universe", tuple(str(u) for u in self.universe))
        object.__setattr__(self, "edges", frozenset((str(s), str(u)) for s, u in self.edges))
        if len(set(self.sets)) != len(self.sets) or len(set(self.universe)) != len(self.universe):
            raise SourceError("set and element ids must be unique")
        if set(self.sets) & set(self.universe):
            raise SourceError("set ids and element ids must be disjoint")
        for s, u in self.edges:
            if s not in self.sets or u not in self.universe:
                raise SourceError(f"incidence ({s}, {u}) references an undeclared id")
        if self.k < 0:
            raise SourceError("budget must be non-negative")

    def members(self, s: str) -> list[str]:
        return [u for u in self.universe if (s, u) in self.edges]

    def to_json_dict(self) -> dict:
        return {"sets": list(self.sets), "universe": list(self.universe),
                "edges": sorted([s, u] for s, u in self.edges), "k": self.k}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "SetCoverInstance":
        try:
            return cls(tuple(data["sets"]), tuple(data["universe"]),
                       frozenset(tuple(e) for e in data["edges"]), int(data["k"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise SourceError(f"malformed set-cover instance: {exc}") from None

    def digest(self) -> str:
        return _digest(self.to_json_dict())


@dataclass(frozen=True)
class VertexCoverInstance:
    graph: Structure
    k: int

    def __post_init__(self) -> None:
        if not check_structure_type(self.graph, StructureType.BASIC):
            raise SourceError("vertex cover instances must be basic graphs")
        if self.k < 0:
            raise SourceError("budget must be non-negative")

    def to_json_dict(self) -> dict:
        return {**self.graph.to_json_dict(), "k": self.k}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "VertexCoverInstance":
        try:
            return cls(Structure.from_json_dict(data), int(data["k"]))
        except (KeyError, TypeError, ValueError, StructureError) as exc:
            raise SourceError(f"malformed vertex-cover instance: {exc}") from None

    def digest(self) -> str:
        return _digest(self.to_json_dict())


@dataclass(frozen=True)
class MajorityInstance:
    bits: str

    def __post_init__(self) -> None:
        if not self.bits or set(self.bits) - {"0", "1"}:
            raise SourceError("majority input must be a nonempty bitstring")
        if len(self.bits) % 2:
            raise SourceError("majority input must have even length so that |s|/2 is an integer")

    @property
    def k(self) -> int:
        return len(self.bits) // 2

    def to_json_dict(self) -> dict:
        return {"bits": self.bits}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "MajorityInstance":
        try:
            return cls(str(data["bits"]))
        except (KeyError, TypeError) as exc:
            raise SourceError(f"malformed majority instance: {exc}") from None

    def digest(self) -> str:
        return _digest(self.to_json_dict())


SourceInstance = Union[SetCoverInstance, VertexCoverInstance, MajorityInstance]


def set_cover_witness(i: SetCoverInstance):
    for size in range(min(i.k, len(i.sets)) + 1):
        for combo in itertools.combinations(i.sets, size):
            if all(any((s, u) in i.edges for s in combo) for u in i.universe):
                return combo
    return None


def vertex_cover_witness(i: VertexCoverInstance):
    edges = edge_pairs(i.graph)
    for size in range(min(i.k, i.graph.n) + 1):
        for combo in itertools.combinations(range(i.graph.n), size):
            if all(u in combo or v in combo for u, v in edges):
                return combo
    return None


def solve_source(i: SourceInstance) -> bool:
    if isinstance(i, SetCoverInstance):
        return set_cover_witness(i) is not None
    if isinstance(i, VertexCoverInstance):
        return vertex_cover_witness(i) is not None
    if isinstance(i, MajorityInstance):
        return 2 * i.bits.count("1") >= len(i.bits)
    raise TypeError(f"unknown source instance {i!r}")


# -- exhaustive enumeration for the verifier -----------------------------------


def all_set_cover_instances(max_sets: int, max_universe: int, max_k: int) -> Iterator[SetCoverInstance]:
    for ns in range(1, max_sets + 1):
        sets = tuple(f"s{i + 1}" for i in range(ns))
        for nu in range(max_universe + 1):
            universe = tuple(f"u{j + 1}" for j in range(nu))
            cells = [(s, u) for s in sets for u in universe]
            for mask in range(1 << len(cells)):
                edges = frozenset(c for b, c in enumerate(cells) if mask >> b & 1)
                for k in range(max_k + 1):
                    yield SetCoverInstance(sets, universe, edges, k)


def all_vertex_cover_instances(max_vertices: int, max_k: int) -> Iterator[VertexCoverInstance]:
    for n in range(1, max_vertices + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            g = graph(n, [p for b, p in enumerate(pairs) if mask >> b & 1])
            for k in range(max_k + 1):
                yield VertexCoverInstance(g, k)


def all_majority_instances(max_length: int) -> Iterator[MajorityInstance]:
    for length in range(2, max_length + 1, 2):
        for bits in itertools.product("01", repeat=length):
            yield MajorityInstance("".join(bits))


def load_source(data: Mapping) -> SourceInstance:
    """Recognise a source instance from its JSON form."""
    if "bits" in data:
        return MajorityInstance.from_json_dict(data)
    if "sets" in data:
        return SetCoverInstance.from_json_dict(data)
    if "universe" in data and "relations" in data:
        return VertexCoverInstance.from_json_dict(data)
    raise SourceError("unrecognised source instance")
