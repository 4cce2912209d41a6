"""Prenex first-order formulas: AST, parser, printer, patterns and DNF.

Concrete syntax::

    sentence := ("forall" | "exists") IDENT ... body
    body     := iff
    iff      := imp ("<->" imp)*
    imp      := disj ("->" imp)?
    disj     := conj ("|" conj)*
    conj     := unary ("&" unary)*
    unary    := "~" unary | "(" body ")" | "true" | "false" | atom
    atom     := IDENT "(" IDENT ("," IDENT)* ")"
              | IDENT ("=" | "!=" | "~" | "!~") IDENT

``x ~ y`` is sugar for ``E(x, y)``; ``->`` and ``<->`` are rewritten into
``~``/``&``/``|`` while parsing. The unicode connectives are accepted too.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from typing import Callable, Iterator, Union

from .structures import GRAPH_SYMBOL


class FormulaError(ValueError):
    pass


class FormulaSyntaxError(FormulaError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnboundVariableError(FormulaError):
    def __init__(self, variables):
        self.variables = tuple(sorted(variables))
        super().__init__(f"unbound variable(s): {', '.join(self.variables)}")


class NonPrenexError(FormulaSyntaxError):
    pass


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Atom:
    rel: str
    args: tuple[str, ...]


@dataclass(frozen=True)
class Eq:
    left: str
    right: str


@dataclass(frozen=True)
class Not:
    arg: "Matrix"


@dataclass(frozen=True)
class And:
    args: tuple["Matrix", ...]


@dataclass(frozen=True)
class Or:
    args: tuple["Matrix", ...]


Matrix = Union[Const, Atom, Eq, Not, And, Or]
TRUE = Const(True)
FALSE = Const(False)


class Quantifier(str, enum.Enum):
    FORALL = "forall"
    EXISTS = "exists"

    @property
    def letter(self) -> str:
        return "a" if self is Quantifier.FORALL else "e"


@dataclass(frozen=True)
class Formula:
    prefix: tuple[tuple[Quantifier, str], ...]
    matrix: Matrix

    def __post_init__(self) -> None:
        prefix = tuple((Quantifier(q), str(v)) for q, v in self.prefix)
        object.__setattr__(self, "prefix", prefix)
        names = [v for _, v in prefix]
        if len(set(names)) != len(names):
            dup = next(v for v in names if names.count(v) > 1)
            raise FormulaError(f"variable {dup!r} quantified twice")
        unbound = free_variables(self.matrix) - set(names)
        if unbound:
            raise UnboundVariableError(unbound)

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(v for _, v in self.prefix)

    @property
    def pattern(self) -> str:
        return pattern_of(self)

    def relations(self) -> set[str]:
        return {a.rel for a in atoms(self.matrix)}

    def __str__(self) -> str:
        return format_formula(self)


def land(*args: Matrix) -> Matrix:
    if len(args) == 1:
        return args[0]
    return And(tuple(args)) if args else TRUE


def lor(*args: Matrix) -> Matrix:
    if len(args) == 1:
        return args[0]
    return Or(tuple(args)) if args else FALSE


def implies(a: Matrix, b: Matrix) -> Matrix:
    return Or((Not(a), b))


def iff(a: Matrix, b: Matrix) -> Matrix:
    return Or((And((a, b)), And((Not(a), Not(b)))))


def adj(x: str, y: str) -> Atom:
    return Atom(GRAPH_SYMBOL, (x, y))


def forall(*names: str) -> list[tuple[Quantifier, str]]:
    return [(Quantifier.FORALL, n) for n in names]


def exists(*names: str) -> list[tuple[Quantifier, str]]:
    return [(Quantifier.EXISTS, n) for n in names]


def sentence(prefix, matrix: Matrix) -> Formula:
    return Formula(tuple(prefix), matrix)


# -- traversal ---------------------------------------------------------------


def children(m: Matrix) -> tuple[Matrix, ...]:
    if isinstance(m, Not):
        return (m.arg,)
    if isinstance(m, (And, Or)):
        return m.args
    return ()


def walk(m: Matrix) -> Iterator[Matrix]:
    yield m
    for c in children(m):
        yield from walk(c)


def atoms(m: Matrix) -> list[Atom]:
    seen: dict[Atom, None] = {}
    for node in walk(m):
        if isinstance(node, Atom):
            seen.setdefault(node)
    return list(seen)


def free_variables(m: Matrix) -> set[str]:
    out: set[str] = set()
    for node in walk(m):
        if isinstance(node, Atom):
            out.update(node.args)
        elif isinstance(node, Eq):
            out.update((node.left, node.right))
    return out


def map_leaves(m: Matrix, fn: Callable[[Matrix], Matrix]) -> Matrix:
    """Rebuild ``m`` with every atom, equality and constant replaced by ``fn(leaf)``."""
    if isinstance(m, Not):
        return Not(map_leaves(m.arg, fn))
    if isinstance(m, And):
        return And(tuple(map_leaves(a, fn) for a in m.args))
    if isinstance(m, Or):
        return Or(tuple(map_leaves(a, fn) for a in m.args))
    return fn(m)


def simplify(m: Matrix) -> Matrix:
    """Constant propagation; leaves non-constant structure intact."""
    if isinstance(m, Not):
        inner = simplify(m.arg)
        if isinstance(inner, Const):
            return Const(not inner.value)
        return Not(inner)
    if isinstance(m, (And, Or)):
        absorbing = isinstance(m, Or)
        kept = []
        for a in m.args:
            a = simplify(a)
            if isinstance(a, Const):
                if a.value == absorbing:
                    return Const(absorbing)
                continue
            kept.append(a)
        return (lor if absorbing else land)(*kept)
    return m


def evaluate(m: Matrix, leaf: Callable[[Matrix], bool]) -> bool:
    """Evaluate a quantifier-free matrix given truth values for its leaves."""
    if isinstance(m, Const):
        return m.value
    if isinstance(m, Not):
        return not evaluate(m.arg, leaf)
    if isinstance(m, And):
        return all(evaluate(a, leaf) for a in m.args)
    if isinstance(m, Or):
        return any(evaluate(a, leaf) for a in m.args)
    return leaf(m)


# -- patterns ----------------------------------------------------------------

_PATTERN_RE = re.compile(r"[ae]*")


def check_pattern(p: str) -> str:
    if not isinstance(p, str) or not _PATTERN_RE.fullmatch(p):
        raise FormulaError(f"invalid pattern {p!r}: only the letters 'a' and 'e' are allowed")
    return p


def pattern_of(f: Formula) -> str:
    return "".join(q.letter for q, _ in f.prefix)


def is_subsequence(p: str, q: str) -> bool:
    """True iff ``p`` can be obtained from ``q`` by deleting letters."""
    it = iter(q)
    return all(ch in it for ch in p)


def all_patterns(max_length: int) -> Iterator[str]:
    for length in range(max_length + 1):
        for letters in itertools.product("ae", repeat=length):
            yield "".join(letters)


# -- printing ----------------------------------------------------------------


def format_matrix(m: Matrix) -> str:
    if isinstance(m, Const):
        return "true" if m.value else "false"
    if isinstance(m, Atom):
        return f"{m.rel}({', '.join(m.args)})"
    if isinstance(m, Eq):
        return f"{m.left} = {m.right}"
    if isinstance(m, Not):
        if isinstance(m.arg, Eq):
            return f"{m.arg.left} != {m.arg.right}"
        return "~" + _wrapped(m.arg)
    if isinstance(m, And):
        if not m.args:
            return "true"
        return " & ".join(_wrapped(a) for a in m.args)
    if isinstance(m, Or):
        if not m.args:
            return "false"
        return " | ".join(_wrapped(a) for a in m.args)
    raise TypeError(f"not a matrix node: {m!r}")


def _wrapped(m: Matrix) -> str:
    text = format_matrix(m)
    if isinstance(m, (And, Or)) and len(m.args) > 0:
        return f"({text})"
    return text


def format_formula(f: Formula) -> str:
    quants = " ".join(f"{q.value} {v}" for q, v in f.prefix)
    body = format_matrix(f.matrix)
    return f"{quants} {body}" if quants else body


# -- parsing -----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<op><->|->|!=|!~|[()~&|=,])
  | (?P<uni>[∀∃¬∧∨→↔≠])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
    """,
    re.VERBOSE,
)
_UNICODE = {"∀": "forall", "∃": "exists", "¬": "~", "∧": "&", "∨": "|", "→": "->", "↔": "<->", "≠": "!="}
_KEYWORDS = {"forall", "exists", "true", "false"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        value = m.group()
        if kind == "uni":
            value = _UNICODE[value]
            kind = "ident" if value in _KEYWORDS else "op"
        if kind == "ident" and value in _KEYWORDS:
            kind = "kw"
        if kind != "ws":
            tokens.append((kind, value, pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, offset: int = 0) -> tuple[str, str, int]:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def next(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def accept(self, value: str) -> bool:
        if self.peek()[1] == value and self.peek()[0] in ("op", "kw"):
            self.i += 1
            return True
        return False

    def expect(self, value: str) -> None:
        kind, got, pos = self.peek()
        if not self.accept(value):
            raise FormulaSyntaxError(f"expected {value!r} but found {got or 'end of input'!r}", pos)

    def ident(self) -> str:
        kind, value, pos = self.next()
        if kind != "ident":
            raise FormulaSyntaxError(f"expected identifier but found {value or 'end of input'!r}", pos)
        return value

    def sentence(self) -> Formula:
        prefix = []
        seen = set()
        while self.peek()[1] in ("forall", "exists") and self.peek()[0] == "kw":
            _, q, _ = self.next()
            pos = self.peek()[2]
            var = self.ident()
            if var in seen:
                raise FormulaSyntaxError(f"variable {var!r} quantified twice", pos)
            seen.add(var)
            prefix.append((Quantifier(q), var))
        body = self.iff()
        kind, value, pos = self.peek()
        if kind != "end":
            raise FormulaSyntaxError(f"unexpected {value!r}", pos)
        return Formula(tuple(prefix), body)

    def iff(self) -> Matrix:
        left = self.imp()
        while self.accept("<->"):
            left = iff(left, self.imp())
        return left

    def imp(self) -> Matrix:
        left = self.disj()
        if self.accept("->"):
            return implies(left, self.imp())
        return left

    def disj(self) -> Matrix:
        args = [self.conj()]
        while self.accept("|"):
            args.append(self.conj())
        return args[0] if len(args) == 1 else Or(tuple(args))

    def conj(self) -> Matrix:
        args = [self.unary()]
        while self.accept("&"):
            args.append(self.unary())
        return args[0] if len(args) == 1 else And(tuple(args))

    def unary(self) -> Matrix:
        kind, value, pos = self.peek()
        if kind == "op" and value == "~":
            self.next()
            return Not(self.unary())
        if kind == "op" and value == "(":
            self.next()
            inner = self.iff()
            self.expect(")")
            return inner
        if kind == "kw":
            if value in ("forall", "exists"):
                raise NonPrenexError("quantifier inside the matrix (formula is not prenex)", pos)
            self.next()
            return Const(value == "true")
        if kind == "ident":
            return self.atom()
        raise FormulaSyntaxError(f"unexpected {value or 'end of input'!r}", pos)

    def atom(self) -> Matrix:
        name = self.ident()
        kind, value, pos = self.peek()
        if kind == "op" and value == "(":
            self.next()
            args = [self.ident()]
            while self.accept(","):
                args.append(self.ident())
            self.expect(")")
            return Atom(name, tuple(args))
        if kind == "op" and value in ("=", "!=", "~", "!~"):
            self.next()
            other = self.ident()
            if value == "=":
                return Eq(name, other)
            if value == "!=":
                return Not(Eq(name, other))
            if value == "~":
                return adj(name, other)
            return Not(adj(name, other))
        raise FormulaSyntaxError(f"expected '(', '=', '!=' or '~' after {name!r}", pos)


def parse_formula(text: str) -> Formula:
    """Parse a prenex sentence.

    Raises FormulaSyntaxError (with ``position``), NonPrenexError or
    UnboundVariableError.
    """
    return _Parser(text).sentence()


def parse_matrix(text: str) -> Matrix:
    """Parse a quantifier-free body; free variables are allowed."""
    p = _Parser(text)
    body = p.iff()
    kind, value, pos = p.peek()
    if kind != "end":
        raise FormulaSyntaxError(f"unexpected {value!r}", pos)
    return body


# -- normal forms ------------------------------------------------------------


Literal = Union[Atom, Eq, Not]


def nnf(m: Matrix, negate: bool = False) -> Matrix:
    if isinstance(m, Const):
        return Const(m.value != negate)
    if isinstance(m, (Atom, Eq)):
        return Not(m) if negate else m
    if isinstance(m, Not):
        return nnf(m.arg, not negate)
    if isinstance(m, And):
        args = tuple(nnf(a, negate) for a in m.args)
        return Or(args) if negate else And(args)
    if isinstance(m, Or):
        args = tuple(nnf(a, negate) for a in m.args)
        return And(args) if negate else Or(args)
    raise TypeError(f"not a matrix node: {m!r}")


def _canonical_literal(lit: Matrix) -> Literal:
    base = lit.arg if isinstance(lit, Not) else lit
    if isinstance(base, Eq) and base.right < base.left:
        base = Eq(base.right, base.left)
    return Not(base) if isinstance(lit, Not) else base


def _complement(lit: Literal) -> Literal:
    return lit.arg if isinstance(lit, Not) else Not(lit)


def to_dnf(m: Matrix) -> list[list[Literal]]:
    """Disjunctive normal form as a list of clauses (lists of literals).

    Contradictory clauses are dropped and duplicate literals removed; an empty
    clause stands for ``true`` and an empty list for ``false``. Equalities are
    oriented so that ``x = y`` and ``y = x`` coincide.
    """
    clauses: list[tuple[Literal, ...]] = []
    for raw in _dnf(nnf(m)):
        clause: dict[Literal, None] = {}
        for lit in raw:
            clause.setdefault(_canonical_literal(lit))
        if any(_complement(lit) in clause for lit in clause):
            continue
        t = tuple(clause)
        if t not in clauses:
            clauses.append(t)
    return [list(c) for c in clauses]


def _dnf(m: Matrix) -> list[tuple[Matrix, ...]]:
    if isinstance(m, Const):
        return [()] if m.value else []
    if isinstance(m, Or):
        return [c for a in m.args for c in _dnf(a)]
    if isinstance(m, And):
        parts = [_dnf(a) for a in m.args]
        return [tuple(itertools.chain.from_iterable(combo)) for combo in itertools.product(*parts)]
    return [(m,)]


def dnf_matrix(clauses: list[list[Literal]]) -> Matrix:
    return lor(*(land(*c) for c in clauses))
