"""Bounded search tree for patterns in e*a*.

After fixing the existential block to v and choosing which tuples among the
elements of v to change, the universal block is checked by finding the
lexicographically first violating assignment w. Any solution must change a
tuple that some atom reads at (v, w) and that is not already decided, so we
branch on those tuples. Each branch spends one unit of budget, which bounds
the depth of the tree by k.
"""

from __future__ import annotations

import itertools
from array import array
from typing import Optional

from .. import kernels
from ..modelcheck import CompiledFormula, DenseStructure
from ..modification import Unit, modulator_from_units, unit_allowed
from .base import Limits, Meter, PatternMismatch, SolveRequest, SolveResult
from .common import Toggler, instantiate, matrix_atoms, split_prefix, subsets_by_size


def solve_fpt_search_tree(req: SolveRequest, limits: Optional[Limits] = None) -> SolveResult:
    if "ae" in req.pattern:
        raise PatternMismatch(f"pattern {req.pattern!r} is not within e*a*")
    s, t, kind, f, k = req.structure, req.structure_type, req.kind, req.formula, req.k
    meter = Meter(limits)
    compiled = CompiledFormula(f, s.vocabulary, s.n)
    dense = DenseStructure.from_structure(s)
    toggler = Toggler(dense, t)
    exist, univ = split_prefix(f)
    m = len(exist)
    atom_list = matrix_atoms(f)
    uslots = array("i", range(m, m + len(univ)))
    assign = array("q", [0] * (m + len(univ)))

    def legal(u: Unit) -> bool:
        return unit_allowed(s, u, kind, t)

    for cert in itertools.product(range(s.n), repeat=m):
        inside = sorted(set(cert))
        base_env = dict(zip(exist, cert))
        initial = set()
        for ws in itertools.product(inside, repeat=len(univ)):
            env = {**base_env, **dict(zip(univ, ws))}
            initial.update(u for u in instantiate(atom_list, env, t) if legal(u))
        seen: set[frozenset] = set()
        chosen: list[Unit] = []
        inside_set = set(inside)

        def branch(budget: int) -> bool:
            key = frozenset(chosen)
            if key in seen:
                return False
            seen.add(key)
            meter.tick()
            for i, c in enumerate(cert):
                assign[i] = c
            if not kernels.first_violation(dense.data, s.n, compiled.prog, uslots, assign):
                return True
            if budget == 0:
                return False
            env = {**base_env, **{v: assign[m + j] for j, v in enumerate(univ)}}
            options = [u for u in instantiate(atom_list, env, t)
                       if legal(u) and u not in key and not set(u[1]) <= inside_set]
            for u in sorted(options):
                toggler.flip((u,))
                chosen.append(u)
                if branch(budget - 1):
                    return True
                chosen.pop()
                toggler.flip((u,))
            return False

        for config in subsets_by_size(sorted(initial), k):
            toggler.flip(config)
            chosen[:] = list(config)
            if branch(k - len(config)):
                witness = modulator_from_units(chosen, t)
                return SolveResult(True, witness, "fpt_search_tree", meter.nodes)
            toggler.flip(config)
    return SolveResult(False, None, "fpt_search_tree", meter.nodes)
