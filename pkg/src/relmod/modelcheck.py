"""First-order model checking over finite structures.

Structures are flattened into a ``DenseStructure`` (one byte per possible
tuple) and matrices are compiled to postfix programs evaluated by the kernels
in :mod:`relmod.kernels`. ``reference_model_check`` is an independent,
set-based evaluator kept as an oracle for the compiled path.
"""

from __future__ import annotations

from array import array
from typing import Mapping, Optional

from . import kernels
from ._pykernels import OP_AND, OP_ATOM, OP_CONST, OP_EQ, OP_NOT, OP_OR, Q_EXISTS, Q_FIXED, Q_FORALL
from .formula import (
    And,
    Atom,
    Const,
    Eq,
    Formula,
    FormulaError,
    Matrix,
    Not,
    Or,
    Quantifier,
    UnboundVariableError,
    evaluate,
    free_variables,
)
from .structures import Structure, StructureError, Vocabulary

MAX_STACK = 256


class DenseStructure:
    """Mutable byte-per-tuple copy of a structure, used by the solvers' inner loops."""

    __slots__ = ("vocabulary", "n", "offsets", "data")

    def __init__(self, vocabulary: Vocabulary, n: int, data: Optional[bytearray] = None):
        self.vocabulary = vocabulary
        self.n = n
        self.offsets = {}
        size = 0
        for name, arity in vocabulary.symbols:
            self.offsets[name] = size
            size += n ** arity
        self.data = bytearray(size) if data is None else data

    @classmethod
    def from_structure(cls, s: Structure) -> "DenseStructure":
        d = cls(s.vocabulary, s.n)
        for name, tuples in s.relations.items():
            for t in tuples:
                d.data[d.index(name, t)] = 1
        return d

    def copy(self) -> "DenseStructure":
        return DenseStructure(self.vocabulary, self.n, bytearray(self.data))

    def index(self, rel: str, tup) -> int:
        idx = 0
        for c in tup:
            idx = idx * self.n + c
        return self.offsets[rel] + idx

    def __contains__(self, item) -> bool:
        rel, tup = item
        return bool(self.data[self.index(rel, tup)])

    def toggle(self, idx: int) -> None:
        self.data[idx] ^= 1

    def to_structure(self) -> Structure:
        relations = {}
        for name, arity in self.vocabulary.symbols:
            off = self.offsets[name]
            tuples = []
            for i in range(self.n ** arity):
                if self.data[off + i]:
                    t = []
                    rest = i
                    for _ in range(arity):
                        t.append(rest % self.n)
                        rest //= self.n
                    tuples.append(tuple(reversed(t)))
            relations[name] = tuples
        return Structure(self.vocabulary, self.n, relations)


def compile_matrix(m: Matrix, vocabulary: Vocabulary, n: int, slots: Mapping[str, int]) -> array:
    """Postfix program for ``m``; ``slots`` maps variables to assignment indices."""
    offsets = DenseStructure(vocabulary, n, bytearray()).offsets
    prog = array("i")
    depth = 0
    peak = 0

    def emit(node: Matrix) -> None:
        nonlocal depth, peak
        if isinstance(node, Const):
            prog.extend((OP_CONST, int(node.value)))
            depth += 1
        elif isinstance(node, Atom):
            if node.rel not in vocabulary:
                raise FormulaError(f"relation {node.rel!r} is not in the structure's vocabulary")
            if vocabulary.arity(node.rel) != len(node.args):
                raise FormulaError(f"atom {node.rel}{node.args} has the wrong arity")
            prog.extend((OP_ATOM, offsets[node.rel], len(node.args)))
            prog.extend(_slot(slots, v) for v in node.args)
            depth += 1
        elif isinstance(node, Eq):
            prog.extend((OP_EQ, _slot(slots, node.left), _slot(slots, node.right)))
            depth += 1
        elif isinstance(node, Not):
            emit(node.arg)
            prog.append(OP_NOT)
        elif isinstance(node, (And, Or)):
            if not node.args:
                prog.extend((OP_CONST, int(isinstance(node, And))))
                depth += 1
            else:
                for a in node.args:
                    emit(a)
                prog.extend((OP_AND if isinstance(node, And) else OP_OR, len(node.args)))
                depth -= len(node.args) - 1
        else:
            raise TypeError(f"not a matrix node: {node!r}")
        peak = max(peak, depth)

    emit(m)
    if peak > MAX_STACK:
        raise FormulaError("matrix too deeply nested for the evaluation kernel")
    return prog


def _slot(slots: Mapping[str, int], var: str) -> int:
    try:
        return slots[var]
    except KeyError:
        raise UnboundVariableError({var}) from None


class CompiledFormula:
    """A sentence compiled for structures with a given vocabulary and universe size."""

    def __init__(self, f: Formula, vocabulary: Vocabulary, n: int):
        self.formula = f
        self.n = n
        self.slots = {v: i for i, (_, v) in enumerate(f.prefix)}
        self.quant = array("b", (Q_FORALL if q is Quantifier.FORALL else Q_EXISTS for q, _ in f.prefix))
        self.prog = compile_matrix(f.matrix, vocabulary, n, self.slots)

    def holds(self, d: DenseStructure, partial: Optional[Mapping[str, int]] = None) -> bool:
        assign = array("q", [0] * len(self.quant))
        quant = self.quant
        if partial:
            quant = array("b", quant)
            for var, elem in partial.items():
                if var in self.slots:
                    if not 0 <= elem < self.n:
                        raise StructureError(f"element {elem} outside universe")
                    quant[self.slots[var]] = Q_FIXED
                    assign[self.slots[var]] = elem
        if not quant:
            return kernels.eval_matrix(d.data, self.n, self.prog, assign)
        return kernels.check_prefix(d.data, self.n, self.prog, quant, assign)


def model_check(s: Structure, f: Formula, partial: Optional[Mapping[str, int]] = None) -> bool:
    """Whether ``s`` satisfies ``f``; prefix variables bound by ``partial`` are fixed."""
    return CompiledFormula(f, s.vocabulary, s.n).holds(DenseStructure.from_structure(s), partial)


# -- reference evaluator -------------------------------------------------------


def holds(s: Structure, m: Matrix, assignment: Mapping[str, int]) -> bool:
    """Direct evaluation of a quantifier-free matrix under a total assignment."""
    missing = free_variables(m) - set(assignment)
    if missing:
        raise UnboundVariableError(missing)

    def leaf(node: Matrix) -> bool:
        if isinstance(node, Eq):
            return assignment[node.left] == assignment[node.right]
        if node.rel not in s.vocabulary:
            raise FormulaError(f"relation {node.rel!r} is not in the structure's vocabulary")
        return tuple(assignment[v] for v in node.args) in s[node.rel]

    return evaluate(m, leaf)


def reference_model_check(s: Structure, f: Formula, partial: Optional[Mapping[str, int]] = None) -> bool:
    """Tarskian recursion over the prefix; slow, independent of the kernels."""
    env = dict(partial or {})

    def rec(i: int) -> bool:
        if i == len(f.prefix):
            return holds(s, f.matrix, env)
        q, var = f.prefix[i]
        if var in (partial or {}):
            return rec(i + 1)
        results = []
        for v in range(s.n):
            env[var] = v
            results.append(rec(i + 1))
            if (q is Quantifier.FORALL) != results[-1]:
                break
        del env[var]
        return all(results) if q is Quantifier.FORALL else any(results)

    return rec(0)
