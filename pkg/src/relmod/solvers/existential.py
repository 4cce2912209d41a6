"""Solvers for patterns in e* and e*a.

For e* a modulator only has to fix the matrix at one assignment, so it can be
restricted to tuples over the assigned elements. For e*a the certificate set
A' is fixed first; each element outside A' then needs its own local repair,
and these repairs touch disjoint tuples, so their minimal costs simply add up.
"""

from __future__ import annotations

import itertools
from typing import Optional

from ..formula import Quantifier
from ..modelcheck import CompiledFormula, DenseStructure
from ..modification import modulator_from_units
from .base import Limits, Meter, PatternMismatch, SolveRequest, SolveResult
from .common import Toggler, local_units, matrix_relations, subsets_by_size


def _in_e_star_a(p: str) -> bool:
    return p.count("a") <= 1 and ("a" not in p or p.endswith("a"))


def solve_exists_star(req: SolveRequest, limits: Optional[Limits] = None) -> SolveResult:
    if "a" in req.pattern:
        raise PatternMismatch(f"pattern {req.pattern!r} is not within e*")
    return _solve(req, limits, "exists_star")


def solve_exists_star_forall(req: SolveRequest, limits: Optional[Limits] = None) -> SolveResult:
    if not _in_e_star_a(req.pattern):
        raise PatternMismatch(f"pattern {req.pattern!r} is not within e*a")
    return _solve(req, limits, "exists_star_forall")


def _solve(req: SolveRequest, limits: Optional[Limits], name: str) -> SolveResult:
    s, t, kind, f = req.structure, req.structure_type, req.kind, req.formula
    meter = Meter(limits)
    compiled = CompiledFormula(f, s.vocabulary, s.n)
    dense = DenseStructure.from_structure(s)
    toggler = Toggler(dense, t)
    rels = matrix_relations(f)
    exist = [v for q, v in f.prefix if q is Quantifier.EXISTS]
    universal = next((v for q, v in f.prefix if q is Quantifier.FORALL), None)

    best: Optional[list] = None
    for cert in itertools.product(range(s.n), repeat=len(exist)):
        limit = req.k if best is None else len(best) - 1
        if limit < 0:
            break
        inside = sorted(set(cert))
        env = dict(zip(exist, cert))
        config_units = local_units(s, kind, t, inside, rels)
        for config in subsets_by_size(config_units, limit):
            meter.tick()
            toggler.flip(config)
            try:
                found = _complete(compiled, dense, toggler, req, env, inside, universal, config,
                                  limit, rels, meter)
            finally:
                toggler.flip(config)
            if found is not None and (best is None or len(found) < len(best)):
                best = found
                limit = len(best) - 1
                if limit < 0:
                    break
    if best is None:
        return SolveResult(False, None, name, meter.nodes)
    return SolveResult(True, modulator_from_units(best, t), name, meter.nodes)


def _complete(compiled, dense, toggler, req, env, inside, universal, config, limit, rels, meter):
    """Extend a certificate configuration by minimal local repairs, or None."""
    if universal is None:
        return list(config) if compiled.holds(dense, env) else None
    for a in inside:
        if not compiled.holds(dense, {**env, universal: a}):
            return None
    chosen = list(config)
    s, t, kind = req.structure, req.structure_type, req.kind
    for v in range(s.n):
        if v in env.values():
            continue
        point = {**env, universal: v}
        budget = limit - len(chosen)
        if compiled.holds(dense, point):
            continue
        if budget <= 0:
            return None
        candidates = local_units(s, kind, t, inside + [v], rels, containing=v)
        repair = None
        for size in range(1, min(budget, len(candidates)) + 1):
            for combo in itertools.combinations(candidates, size):
                meter.tick()
                toggler.flip(combo)
                ok = compiled.holds(dense, point)
                toggler.flip(combo)
                if ok:
                    repair = combo
                    break
            if repair is not None:
                break
        if repair is None:
            return None
        chosen.extend(repair)
    return chosen
