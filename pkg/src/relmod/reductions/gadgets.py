"""Constructions mapping source instances to relation modification instances."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Callable, Optional

from ..catalog import catalog_formula
from ..formula import Formula, format_formula, parse_formula
from ..modification import OperationKind
from ..solvers.base import SolveRequest
from ..solvers.radius import radius_formula
from ..structures import Structure, StructureType, Vocabulary, check_structure_type, edge_pairs
from .sources import MajorityInstance, SetCoverInstance, SourceError, SourceInstance, VertexCoverInstance

DEL, ADD, EDIT = OperationKind.DEL, OperationKind.ADD, OperationKind.EDIT


@dataclass(frozen=True)
class ReductionOutput:
    name: str
    structure: Structure
    structure_type: StructureType
    formula: Formula
    budget: int
    kinds: tuple[OperationKind, ...]
    source_digest: str
    construction: str
    directed: bool = False
    labels: tuple[str, ...] = ()
    radius: Optional[int] = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if not check_structure_type(self.structure, self.structure_type):
            raise AssertionError(f"{self.name} built a structure that is not {self.structure_type.value}")

    @property
    def target(self) -> SolveRequest:
        return self.request(self.kinds[0])

    def request(self, kind: "OperationKind | str") -> SolveRequest:
        return SolveRequest(self.structure, self.structure_type, self.formula, self.budget, kind)

    def meta(self) -> dict:
        out = {"reduction": self.name, "budget": self.budget, "kinds": [k.value for k in self.kinds],
               "type": self.structure_type.value, "directed": self.directed,
               "construction": self.construction, "source_digest": self.source_digest,
               "pattern": self.formula.pattern, "vertices": self.structure.n, "labels": list(self.labels)}
        if self.radius is not None:
            out["radius"] = self.radius
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def save(self, directory: str) -> None:
        os.makedirs(directory, exist_ok=True)
        with open(os.path.join(directory, "structure.json"), "w") as fh:
            fh.write(self.structure.to_json(indent=1) + "\n")
        with open(os.path.join(directory, "formula.fo"), "w") as fh:
            fh.write(format_formula(self.formula) + "\n")
        with open(os.path.join(directory, "meta.json"), "w") as fh:
            json.dump(self.meta(), fh, indent=1)
            fh.write("\n")

    @classmethod
    def load(cls, directory: str) -> "ReductionOutput":
        with open(os.path.join(directory, "structure.json")) as fh:
            s = Structure.from_json(fh.read())
        with open(os.path.join(directory, "formula.fo")) as fh:
            f = parse_formula(fh.read())
        with open(os.path.join(directory, "meta.json")) as fh:
            meta = json.load(fh)
        return cls(meta["reduction"], s, StructureType.parse(meta["type"]), f, meta["budget"],
                   tuple(OperationKind.parse(k) for k in meta["kinds"]), meta["source_digest"],
                   meta["construction"], meta["directed"], tuple(meta.get("labels", ())),
                   meta.get("radius"), tuple(meta.get("notes", ())))


class _GraphBuilder:
    def __init__(self) -> None:
        self.labels: list[str] = []
        self.index: dict[str, int] = {}
        self.tuples: set[tuple[int, int]] = set()

    def vertex(self, label: str) -> int:
        if label not in self.index:
            self.index[label] = len(self.labels)
            self.labels.append(label)
        return self.index[label]

    def edge(self, a: str, b: str) -> None:
        u, v = self.vertex(a), self.vertex(b)
        self.tuples.update({(u, v), (v, u)})

    def arc(self, a: str, b: str) -> None:
        self.tuples.add((self.vertex(a), self.vertex(b)))

    def loop(self, a: str) -> None:
        v = self.vertex(a)
        self.tuples.add((v, v))

    def build(self) -> Structure:
        return Structure(Vocabulary.graph(), len(self.labels), {"E": self.tuples})


def _require(instance, cls) -> None:
    if not isinstance(instance, cls):
        raise SourceError(f"expected a {cls.__name__}, got {type(instance).__name__}")


def _copies(u: str, count: int) -> list[str]:
    return [f"{u}#{i}" for i in range(1, count + 1)]


def _output(name, b: _GraphBuilder, t, formula, budget, kinds, source, construction, directed=False,
            radius=None, notes=()) -> ReductionOutput:
    if not b.labels:
        b.vertex("pad")
        notes = tuple(notes) + ("padding vertex added: universes are nonempty",)
    return ReductionOutput(name, b.build(), StructureType.parse(t), formula, budget, tuple(kinds),
                           source.digest(), construction, directed, tuple(b.labels), radius, tuple(notes))


# -- set cover sources ----------------------------------------------------------


def reduce_setcover_ae_undir(i: SetCoverInstance, directed: bool = False, literal: bool = False) -> ReductionOutput:
    """Looped set vertices; 2k+1 loop-free copies of each element joined to its sets.

    The directed variant keeps both arcs of every copy-set edge. With
    ``literal=True`` only the arc from the copy to the set is kept; a set whose
    loop was deleted then has no out-neighbour, so that form is not equivalent.
    """
    _require(i, SetCoverInstance)
    b = _GraphBuilder()
    for s in i.sets:
        b.vertex(s)
    for u in i.universe:
        for c in _copies(u, 2 * i.k + 1):
            b.vertex(c)
    for s in i.sets:
        b.loop(s)
    for s, u in sorted(i.edges):
        for c in _copies(u, 2 * i.k + 1):
            (b.arc if directed and literal else b.edge)(c, s)
    notes = ("copy-to-set arcs only",) if directed and literal else ()
    return _output("ae_undir", b, StructureType.DIR if directed else StructureType.UNDIR,
                   catalog_formula("loopfree-neighbour"), i.k, (DEL, EDIT), i,
                   "set cover: remove the loop of every chosen set", directed, notes=notes)


def reduce_setcover_aea_basic(i: SetCoverInstance, directed: bool = False) -> ReductionOutput:
    """A 4-cycle per set; element copies form a triangle with s and s'."""
    _require(i, SetCoverInstance)
    b = _GraphBuilder()
    for s in i.sets:
        ring = [s, s + "'", s + "''", s + "'''"]
        for a, c in zip(ring, ring[1:] + ring[:1]):
            b.edge(a, c)
    for u in i.universe:
        for c in _copies(u, 2 * i.k + 1):
            b.vertex(c)
    for s, u in sorted(i.edges):
        for c in _copies(u, 2 * i.k + 1):
            b.edge(c, s)
            b.edge(c, s + "'")
    if directed:
        return _output("aea_basic", b, StructureType.DIR, catalog_formula("no-common-triangle-dir"),
                       2 * i.k, (DEL, EDIT), i, "set cover: delete both arcs s-s' of every chosen set",
                       True)
    return _output("aea_basic", b, StructureType.BASIC, catalog_formula("no-common-triangle"), i.k,
                   (DEL, EDIT), i, "set cover: delete the edge s-s' of every chosen set")


def reduce_setcover_aee_basic(i: SetCoverInstance, directed: bool = False) -> ReductionOutput:
    """Two triangles per set; element copies join the first corner of each."""
    _require(i, SetCoverInstance)
    b = _GraphBuilder()
    for s in i.sets:
        for prime in ("", "'"):
            tri = [f"{s}{prime}.{j}" for j in (1, 2, 3)]
            for a, c in zip(tri, tri[1:] + tri[:1]):
                b.edge(a, c)
    for u in i.universe:
        for c in _copies(u, 2 * i.k + 1):
            b.vertex(c)
    for s, u in sorted(i.edges):
        for c in _copies(u, 2 * i.k + 1):
            b.edge(c, f"{s}.1")
            b.edge(c, f"{s}'.1")
    name = "on-triangle-dir" if directed else "on-triangle"
    return _output("aee_basic", b, StructureType.DIR if directed else StructureType.BASIC,
                   catalog_formula(name), i.k, (ADD, EDIT), i,
                   "set cover: join the two triangle corners of every chosen set", directed)


def reduce_setcover_aae_basic(i: SetCoverInstance, directed: bool = False, literal: bool = False) -> ReductionOutput:
    """Edge s-s' per set, hub c joined to every element copy, copies joined to s and s'.

    Sets without elements are left out: their edge s-s' would lie on no
    triangle and cost extra budget that the set cover side never pays. The
    directed formula also forbids loops; ``literal=True`` drops that conjunct,
    and then one loop at c satisfies every hub edge.
    """
    _require(i, SetCoverInstance)
    b = _GraphBuilder()
    used = [s for s in i.sets if i.members(s)]
    for s in used:
        b.edge(s, s + "'")
    b.vertex("c")
    for u in i.universe:
        for c in _copies(u, 2 * i.k + 1):
            b.edge(c, "c")
    for s, u in sorted(i.edges):
        for c in _copies(u, 2 * i.k + 1):
            b.edge(c, s)
            b.edge(c, s + "'")
    notes = ("sets without elements omitted",) if len(used) < len(i.sets) else ()
    if directed:
        name = "triangle-edge-cover-dir-loops" if literal else "triangle-edge-cover-dir"
        return _output("aae_basic", b, StructureType.DIR, catalog_formula(name),
                       2 * i.k, (ADD, EDIT), i, "set cover: join the hub to every chosen set by both arcs",
                       True, notes=notes)
    return _output("aae_basic", b, StructureType.BASIC, catalog_formula("triangle-edge-cover"), i.k,
                   (ADD, EDIT), i, "set cover: join the hub c to every chosen set", notes=notes)


def reduce_setcover_eae_basic(i: SetCoverInstance, directed: bool = False, r: int = 2) -> ReductionOutput:
    """Radius-r gadget: centre c, pendant paths of length r, k+1 element copies.

    For r > 2 every element copy starts a private path of r-2 extra vertices
    whose far end is joined to each set containing the element.
    """
    _require(i, SetCoverInstance)
    if r < 2:
        raise SourceError("the radius reduction needs r >= 2")
    b = _GraphBuilder()
    for s in i.sets:
        b.edge(s, s + "'")
    b.vertex("c")
    for s in i.sets:
        b.edge(s + "'", "c")
    for j in range(1, 2 * i.k + 2):
        chain = ["c"] + [f"c{j}^{d}" for d in range(1, r + 1)]
        for a, c in zip(chain, chain[1:]):
            b.edge(a, c)
    for u in i.universe:
        for copy in _copies(u, i.k + 1):
            path = [copy] + [f"{copy}^{d}" for d in range(1, r - 1)]
            for a, c in zip(path, path[1:]):
                b.edge(a, c)
            b.vertex(path[-1])
    for s, u in sorted(i.edges):
        for copy in _copies(u, i.k + 1):
            end = copy if r == 2 else f"{copy}^{r - 2}"
            b.edge(end, s)
    formula = catalog_formula("radius-2") if r == 2 else radius_formula(r)
    t = StructureType.DIR if directed else StructureType.BASIC
    return _output("eae_basic", b, t, formula, i.k, (ADD, EDIT), i,
                   f"set cover: join every chosen set to the centre (radius {r})", directed, radius=r)


# -- vertex cover sources --------------------------------------------------------


def reduce_vertexcover_aa_undir(i: VertexCoverInstance) -> ReductionOutput:
    """Same graph; a chosen cover vertex receives a self-loop."""
    _require(i, VertexCoverInstance)
    b = _GraphBuilder()
    for v in range(i.graph.n):
        b.vertex(f"v{v}")
    for u, v in sorted(edge_pairs(i.graph)):
        b.edge(f"v{u}", f"v{v}")
    return _output("vertexcover_aa", b, StructureType.UNDIR, catalog_formula("looped-endpoint"), i.k,
                   (ADD, EDIT), i, "vertex cover: add a loop at every cover vertex")


def reduce_vertexcover_eaa_basic(i: VertexCoverInstance) -> ReductionOutput:
    """Hub c joined to all of V plus a (k+2)-clique joined to all of V (not to c)."""
    _require(i, VertexCoverInstance)
    b = _GraphBuilder()
    for v in range(i.graph.n):
        b.vertex(f"v{v}")
    for u, v in sorted(edge_pairs(i.graph)):
        b.edge(f"v{u}", f"v{v}")
    for v in range(i.graph.n):
        b.edge("c", f"v{v}")
    clique = [f"K{j}" for j in range(1, i.k + 3)]
    for a in range(len(clique)):
        for c in range(a + 1, len(clique)):
            b.edge(clique[a], clique[c])
        for v in range(i.graph.n):
            b.edge(clique[a], f"v{v}")
    return _output("vertexcover_eaa", b, StructureType.BASIC, catalog_formula("misses-an-endpoint"), i.k,
                   (DEL, EDIT), i, "vertex cover: cut c from every cover vertex")


# -- majority sources ---------------------------------------------------------------


MAJORITY_VARIANTS = ("undir_a_del", "basic_ae_add", "basic_ea_add", "basic_aa", "monadic_del")
FLAGGED_MAJORITY_VARIANTS = ("basic_ea_add", "basic_aa")


def reduce_majority(i: MajorityInstance, variant: str, kind: "OperationKind | str" = DEL) -> ReductionOutput:
    """Majority to a counting modification problem with budget |s|/2.

    Every variant also contributes a harmless gadget for each 1-bit so the
    universe is never empty.
    """
    _require(i, MajorityInstance)
    b = _GraphBuilder()
    name = f"majority_{variant}"
    zeros = [j for j, c in enumerate(i.bits) if c == "0"]
    ones = [j for j, c in enumerate(i.bits) if c == "1"]
    if variant == "undir_a_del":
        for j in zeros:
            b.loop(f"b{j}")
        for j in ones:
            b.vertex(f"b{j}")
        return _output(name, b, StructureType.UNDIR, catalog_formula("loop-free"), i.k, (DEL,), i,
                       "majority: one looped vertex per 0-bit")
    if variant == "basic_ae_add":
        for j in zeros:
            b.vertex(f"b{j}a")
            b.vertex(f"b{j}b")
        for j in ones:
            b.edge(f"b{j}a", f"b{j}b")
        return _output(name, b, StructureType.BASIC, catalog_formula("no-isolated"), i.k, (ADD,), i,
                       "majority: two isolated vertices per 0-bit")
    if variant == "basic_ea_add":
        b.vertex("c")
        for j in range(len(i.bits)):
            b.vertex(f"b{j}")
        for j in ones:
            b.edge("c", f"b{j}")
        return _output(name, b, StructureType.UNDIR, catalog_formula("universal-vertex"), i.k, (ADD,), i,
                       "majority: hub adjacent to the 1-bits",
                       notes=("formula needs a loop at the chosen vertex; run on undirected graphs",))
    if variant == "basic_aa":
        kind = OperationKind.parse(kind)
        for j in zeros:
            b.edge(f"b{j}a", f"b{j}b")
        for j in ones:
            b.vertex(f"b{j}")
        return _output(name, b, StructureType.BASIC, catalog_formula("edgeless"), i.k, (kind,), i,
                       "majority: one edge per 0-bit",
                       notes=(f"operation {kind.value} chosen by the caller",))
    if variant == "monadic_del":
        voc = Vocabulary.monadic("R")
        s = Structure(voc, len(i.bits), {"R": [(j,) for j in zeros]})
        return ReductionOutput(name, s, StructureType.MON, catalog_formula("empty-unary"), i.k, (DEL,),
                               i.digest(), "majority: one R-element per 0-bit", False,
                               tuple(f"b{j}" for j in range(len(i.bits))))
    raise SourceError(f"unknown majority variant {variant!r}; choose from {', '.join(MAJORITY_VARIANTS)}")


Constructor = Callable[..., ReductionOutput]

SETCOVER_REDUCTIONS: dict[str, Constructor] = {
    "ae_undir": reduce_setcover_ae_undir,
    "aea_basic": reduce_setcover_aea_basic,
    "aee_basic": reduce_setcover_aee_basic,
    "aae_basic": reduce_setcover_aae_basic,
    "eae_basic": reduce_setcover_eae_basic,
}
VERTEXCOVER_REDUCTIONS: dict[str, Constructor] = {
    "vertexcover_aa": reduce_vertexcover_aa_undir,
    "vertexcover_eaa": reduce_vertexcover_eaa_basic,
}
ALIASES = {"aa_undir": "vertexcover_aa", "eaa_basic": "vertexcover_eaa"}


def reduction_names() -> list[str]:
    return (list(SETCOVER_REDUCTIONS) + list(VERTEXCOVER_REDUCTIONS)
            + [f"majority_{v}" for v in MAJORITY_VARIANTS])


def canonical_name(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in reduction_names():
        raise SourceError(f"unknown reduction {name!r}")
    return name


def build(name: str, instance: SourceInstance, directed: bool = False, **options) -> ReductionOutput:
    name = canonical_name(name)
    if name in SETCOVER_REDUCTIONS:
        return SETCOVER_REDUCTIONS[name](instance, directed, **options)
    if directed:
        raise SourceError(f"{name} has no directed variant")
    if name in VERTEXCOVER_REDUCTIONS:
        return VERTEXCOVER_REDUCTIONS[name](instance, **options)
    return reduce_majority(instance, name[len("majority_"):], **options)


def source_kind(name: str) -> type:
    name = canonical_name(name)
    if name in SETCOVER_REDUCTIONS:
        return SetCoverInstance
    if name in VERTEXCOVER_REDUCTIONS:
        return VertexCoverInstance
    return MajorityInstance
