"""Named sentences used throughout the library, with the pattern each one has."""

from __future__ import annotations

from dataclasses import dataclass

from .formula import Formula, parse_formula


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    formula: Formula
    location: str

    @property
    def pattern(self) -> str:
        return self.formula.pattern


_SOURCES = [
    ("basic", "forall x forall y (x ~ y -> (y ~ x & x != y))",
     "definition of basic graphs"),
    ("undirected", "forall x forall y (x ~ y -> y ~ x)",
     "definition of undirected graphs"),
    ("degree-2", "forall x exists y1 exists y2 (x ~ y1 & x ~ y2 & y1 != y2)",
     "minimum degree at least two"),
    ("radius-1", "exists c forall x (x = c | x ~ c)",
     "radius at most 1 (a dominating vertex exists)"),
    ("radius-2", "exists c forall x exists y (x = c | x ~ c | (x ~ y & y ~ c))",
     "radius at most 2; target of the set-cover reduction with pattern eae"),
    ("clusters", "forall x forall y forall z ((x ~ y & y ~ z & x != z) -> x ~ z)",
     "cluster graphs (no induced path on three vertices)"),
    ("triangle-edge-cover", "forall x forall x2 exists y (x ~ x2 -> (x ~ y & x2 ~ y))",
     "every edge lies on a triangle; target of the set-cover reduction with pattern aae"),
    ("diam-2", "forall x forall y exists z (x = y | x ~ y | (x ~ z & z ~ y))",
     "diameter at most 2"),
    ("loopfree-neighbour", "forall x exists y (~x ~ x -> (x ~ y & ~y ~ y))",
     "every loop-free vertex has a loop-free neighbour; set-cover reduction target, pattern ae"),
    ("no-common-triangle", "forall x exists y forall z (x ~ y & ~(x ~ z & y ~ z))",
     "every vertex has a neighbour it shares no triangle with; set-cover reduction target, pattern aea"),
    ("no-common-triangle-dir",
     "forall x exists y forall z (x ~ y & ~(x ~ z & y ~ z) & (x ~ z -> z ~ x))",
     "directed form of no-common-triangle"),
    ("on-triangle", "forall x exists y exists y2 (x ~ y & x ~ y2 & y ~ y2)",
     "every vertex lies on a triangle; set-cover reduction target, pattern aee"),
    ("on-triangle-dir", "forall x exists y exists y2 (x ~ y & x ~ y2 & (y ~ y2 | y2 ~ y))",
     "directed form of on-triangle"),
    ("triangle-edge-cover-dir",
     "forall x forall x2 exists y ((x ~ x2 -> (x ~ y & x2 ~ y)) & (x ~ y -> y ~ x) & ~x ~ x)",
     "directed form of triangle-edge-cover; loops are ruled out so a looped hub cannot fake triangles"),
    ("triangle-edge-cover-dir-loops",
     "forall x forall x2 exists y ((x ~ x2 -> (x ~ y & x2 ~ y)) & (x ~ y -> y ~ x))",
     "directed form of triangle-edge-cover with only the symmetry conjunct (admits loop repairs)"),
    ("looped-endpoint", "forall x1 forall x2 (x1 ~ x2 -> (x1 ~ x1 | x2 ~ x2))",
     "every edge has a looped endpoint; vertex-cover reduction target, pattern aa"),
    ("misses-an-endpoint",
     "exists c forall x forall y ((x ~ y & x != c & y != c) -> (x !~ c | y !~ c))",
     "some vertex misses an endpoint of every other edge; vertex-cover reduction target, pattern eaa"),
    ("loop-free", "forall x ~x ~ x", "no self-loops; majority reduction target, pattern a"),
    ("no-isolated", "forall x exists y x ~ y", "no isolated vertex; majority reduction target, pattern ae"),
    ("universal-vertex", "exists x forall y x ~ y",
     "some vertex adjacent to every vertex; majority reduction target, pattern ea"),
    ("edgeless", "forall x forall y x !~ y", "no edges; majority reduction target, pattern aa"),
    ("empty-unary", "forall x ~R(x)", "unary relation R is empty; monadic majority reduction target"),
]


def formula_catalog() -> list[CatalogEntry]:
    return [CatalogEntry(name, parse_formula(text), loc) for name, text, loc in _SOURCES]


def lookup(name: str) -> CatalogEntry:
    for entry in formula_catalog():
        if entry.name == name:
            return entry
    raise KeyError(f"no catalog formula named {name!r}")


def catalog_formula(name: str) -> Formula:
    return lookup(name).formula
