"""Seeded random structures and formulas for experiments and tests."""

from __future__ import annotations

import itertools
import random
from typing import Optional, Sequence

from .formula import And, Atom, Const, Eq, Formula, Matrix, Not, Or, Quantifier
from .structures import Structure, StructureType, Vocabulary


def default_vocabulary(t: "StructureType | str", rng: Optional[random.Random] = None) -> Vocabulary:
    t = StructureType.parse(t)
    if t.is_graph:
        return Vocabulary.graph()
    if t is StructureType.MON:
        count = 2 if rng is None else rng.randint(1, 3)
        return Vocabulary.monadic(*"PQR"[:count])
    return Vocabulary((("E", 2), ("P", 1)))


def random_structure(rng: random.Random, t: "StructureType | str", n: int,
                     vocabulary: Optional[Vocabulary] = None, density: Optional[float] = None) -> Structure:
    t = StructureType.parse(t)
    voc = vocabulary or default_vocabulary(t, rng)
    p = rng.uniform(0.15, 0.7) if density is None else density
    relations = {}
    for name, arity in voc.symbols:
        if t in (StructureType.UNDIR, StructureType.BASIC):
            tuples = set()
            for u in range(n):
                for v in range(u, n):
                    if (u == v and t is StructureType.BASIC) or rng.random() >= p:
                        continue
                    tuples.update({(u, v), (v, u)})
        else:
            tuples = {tup for tup in itertools.product(range(n), repeat=arity) if rng.random() < p}
        relations[name] = tuples
    return Structure(voc, n, relations)


def _random_literal(rng: random.Random, variables: Sequence[str], voc: Vocabulary) -> Matrix:
    if len(variables) > 1 and rng.random() < 0.25:
        a, b = rng.sample(list(variables), 2)
        leaf: Matrix = Eq(a, b)
    else:
        name, arity = rng.choice(voc.symbols)
        leaf = Atom(name, tuple(rng.choice(variables) for _ in range(arity)))
    return Not(leaf) if rng.random() < 0.4 else leaf


def random_matrix(rng: random.Random, variables: Sequence[str], voc: Vocabulary, depth: int = 2) -> Matrix:
    if depth == 0 or rng.random() < 0.3:
        return _random_literal(rng, variables, voc)
    width = rng.randint(2, 3)
    args = tuple(random_matrix(rng, variables, voc, depth - 1) for _ in range(width))
    node = And(args) if rng.random() < 0.5 else Or(args)
    return Not(node) if rng.random() < 0.15 else node


def random_pattern(rng: random.Random, max_length: int = 3, min_length: int = 1) -> str:
    return "".join(rng.choice("ae") for _ in range(rng.randint(min_length, max_length)))


def random_formula(rng: random.Random, voc: Vocabulary, pattern: Optional[str] = None,
                   max_vars: int = 3, depth: int = 2) -> Formula:
    if pattern is None:
        pattern = random_pattern(rng, max_vars)
    names = ["x", "y", "z", "w", "u", "v"][:len(pattern)] if len(pattern) <= 6 else \
        [f"x{i}" for i in range(len(pattern))]
    prefix = tuple((Quantifier.FORALL if c == "a" else Quantifier.EXISTS, v) for c, v in zip(pattern, names))
    if not names:
        return Formula(prefix, Const(rng.random() < 0.5))
    return Formula(prefix, random_matrix(rng, names, voc, depth))
