"""Brute-force reference procedures written independently of the package internals.

Only the data classes (Structure, Formula AST) are shared with the library;
evaluation, legality, type checks and the modulator enumeration are all
re-derived here from the definitions.
"""

from __future__ import annotations

import itertools
import random

from relmod.formula import And, Atom, Const, Eq, Not, Or, Quantifier
from relmod.modification import Modulator
from relmod.structures import Structure, StructureType


def evaluate(m, env: dict, rels: dict) -> bool:
    if isinstance(m, Const):
        return m.value
    if isinstance(m, Atom):
        return tuple(env[v] for v in m.args) in rels[m.rel]
    if isinstance(m, Eq):
        return env[m.left] == env[m.right]
    if isinstance(m, Not):
        return not evaluate(m.arg, env, rels)
    if isinstance(m, And):
        return all(evaluate(a, env, rels) for a in m.args)
    if isinstance(m, Or):
        return any(evaluate(a, env, rels) for a in m.args)
    raise TypeError(m)


def satisfies(n: int, rels: dict, f, env=None) -> bool:
    env = dict(env or {})

    def rec(i):
        if i == len(f.prefix):
            return evaluate(f.matrix, env, rels)
        q, v = f.prefix[i]
        if v in env:
            return rec(i + 1)
        results = []
        for a in range(n):
            env[v] = a
            results.append(rec(i + 1))
            if q is Quantifier.EXISTS and results[-1]:
                break
            if q is Quantifier.FORALL and not results[-1]:
                break
        del env[v]
        return any(results) if q is Quantifier.EXISTS else all(results)

    return rec(0)


def type_ok(n: int, rels: dict, vocabulary, t: StructureType) -> bool:
    if t is StructureType.ARB:
        return True
    if t is StructureType.MON:
        return all(a == 1 for _, a in vocabulary.symbols)
    if len(vocabulary.symbols) != 1 or vocabulary.symbols[0][1] != 2:
        return False
    e = rels[vocabulary.symbols[0][0]]
    if t is StructureType.DIR:
        return True
    if any((v, u) not in e for u, v in e):
        return False
    return t is StructureType.UNDIR or all(u != v for u, v in e)


def slots(s: Structure, t: StructureType):
    """Budget units: one tuple each, or an unordered pair for undir/basic graphs."""
    out = []
    for name, arity in s.vocabulary.symbols:
        if t in (StructureType.UNDIR, StructureType.BASIC):
            for u in range(s.n):
                for v in range(u, s.n):
                    out.append((name, frozenset({(u, v), (v, u)})))
        else:
            for tup in itertools.product(range(s.n), repeat=arity):
                out.append((name, frozenset({tup})))
    return out


def oracle_modulators(s: Structure, k: int, kind: str, t: StructureType):
    """All legal modulators of norm at most k (as relation dictionaries)."""
    base = {name: set(s[name]) for name in s.vocabulary.names}
    units = slots(s, t)
    for size in range(0, min(k, len(units)) + 1):
        for combo in itertools.combinations(units, size):
            delta = {name: set() for name in base}
            for name, tuples in combo:
                delta[name] |= tuples
            if kind == "del" and any(not d <= base[name] for name, d in delta.items()):
                continue
            if kind == "add" and any(d & base[name] for name, d in delta.items()):
                continue
            result = {name: base[name] ^ delta[name] for name in base}
            if not type_ok(s.n, result, s.vocabulary, t):
                continue
            yield delta, result


def oracle_decide(s: Structure, f, k: int, kind, t) -> bool:
    t = StructureType.parse(t)
    kind = getattr(kind, "value", kind)
    return any(satisfies(s.n, result, f) for _, result in oracle_modulators(s, k, kind, t))


def witness_check(s: Structure, f, k: int, kind, t, witness: Modulator) -> bool:
    """Re-validate a solver's witness from first principles."""
    t = StructureType.parse(t)
    kind = getattr(kind, "value", kind)
    base = {name: set(s[name]) for name in s.vocabulary.names}
    delta = {name: set(witness[name]) for name in base}
    if kind == "del" and any(not d <= base[name] for name, d in delta.items()):
        return False
    if kind == "add" and any(d & base[name] for name, d in delta.items()):
        return False
    if t in (StructureType.UNDIR, StructureType.BASIC):
        pairs = {frozenset(p) for d in delta.values() for p in d}
        cost = len(pairs)
    else:
        cost = sum(len(d) for d in delta.values())
    if cost > k:
        return False
    result = {name: base[name] ^ delta[name] for name in base}
    return type_ok(s.n, result, s.vocabulary, t) and satisfies(s.n, result, f)


def random_permutation(rng: random.Random, n: int) -> list[int]:
    perm = list(range(n))
    rng.shuffle(perm)
    return perm
