"""Complexity landscape of relation modification problems by quantifier pattern.

Verdicts describe the whole class of problems whose target formula has the
given pattern: either every member is easy, or the class contains a hard
problem. The verdict does not depend on the modification operation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .formula import check_pattern, is_subsequence
from .modification import OperationKind
from .structures import StructureType

CLASSICAL = "classical"
PARAMETERIZED = "parameterized"

AC0 = "AC0"
TC0 = "TC0_not_AC0"
NP_HARD = "NPhard_containing"
PARA_AC0 = "ParaAC0"
PARA_AC0_UP = "ParaAC0up"
W2_HARD = "W2hard_containing"

BUCKET_ORDER = {
    CLASSICAL: (AC0, TC0, NP_HARD),
    PARAMETERIZED: (PARA_AC0, PARA_AC0_UP, W2_HARD),
}

_SETTING_ALIASES = {"classical": CLASSICAL, "param": PARAMETERIZED, "parameterized": PARAMETERIZED,
                    "parameterised": PARAMETERIZED}

BASIC_NP_PATTERNS = ("aea", "aee", "aae", "eae", "eaa", "aaa")
BASIC_W2_PATTERNS = ("aea", "aee", "aae", "eae")

_REFS = {
    "ae": "set-cover reduction to 'every loop-free vertex has a loop-free neighbour'",
    "aa": "vertex-cover reduction to 'every edge touches a looped vertex'",
    "aea": "set-cover reduction to 'every vertex has a neighbour outside all common triangles'",
    "aee": "set-cover reduction to 'every vertex lies on a triangle'",
    "aae": "set-cover reduction to triangle edge cover",
    "eae": "set-cover reduction to radius at most 2",
    "eaa": "vertex-cover reduction to 'some vertex misses an endpoint of every edge'",
    "aaa": "cluster deletion / cluster editing",
}


def parse_setting(value: str) -> str:
    try:
        return _SETTING_ALIASES[value.lower()]
    except (KeyError, AttributeError):
        raise ValueError(f"unknown setting {value!r}") from None


@dataclass(frozen=True)
class Rule:
    pattern: str
    ref: str

    def to_json_dict(self) -> dict:
        return {"pattern": self.pattern, "ref": self.ref}


@dataclass(frozen=True)
class ComplexityVerdict:
    setting: str
    bucket: str
    rules: tuple[Rule, ...] = field(default_factory=tuple)
    notes: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.bucket not in BUCKET_ORDER[self.setting]:
            raise ValueError(f"bucket {self.bucket} does not belong to setting {self.setting}")

    @property
    def rank(self) -> int:
        return BUCKET_ORDER[self.setting].index(self.bucket)

    def to_json_dict(self) -> dict:
        out = {"setting": self.setting, "bucket": self.bucket,
               "rules": [r.to_json_dict() for r in self.rules]}
        if self.notes:
            out["notes"] = list(self.notes)
        return out


# -- closed forms for the regular upper-bound languages ---------------------------


def within_e_star(p: str) -> bool:
    return "a" not in p


def within_e_star_a(p: str) -> bool:
    return p.count("a") <= 1 and ("a" not in p or p.endswith("a"))


def within_e_star_a_star(p: str) -> bool:
    return "ae" not in p


def _hits(p: str, candidates) -> list[str]:
    return [q for q in candidates if is_subsequence(q, p)]


def classical_predicates(t: "StructureType | str", p: str) -> dict[str, list[Rule]]:
    """For each classical bucket, the rules that place ``p`` in it (empty list: not in it)."""
    t = StructureType.parse(t)
    p = check_pattern(p)
    out: dict[str, list[Rule]] = {AC0: [], TC0: [], NP_HARD: []}
    if t is StructureType.MON:
        if within_e_star(p):
            out[AC0].append(Rule("e*", "enumerate existential assignments and local interpretations"))
        else:
            out[TC0].append(Rule("a", "type histograms with threshold counting; majority lower bound"))
        return out
    if t is StructureType.BASIC:
        if within_e_star(p):
            out[AC0].append(Rule("e*", "enumerate existential assignments and local interpretations"))
        if is_subsequence(p, "a"):
            out[AC0].append(Rule("a", "single universal variable folds to a constant on loop-free graphs"))
        lower = _hits(p, ("ea", "ae", "aa"))
        upper = [name for name, ok in (("e*a", within_e_star_a(p)), ("aa", is_subsequence(p, "aa")),
                                       ("ae", is_subsequence(p, "ae"))) if ok]
        if lower and upper:
            out[TC0].extend(Rule(q, "majority lower bound") for q in lower)
            out[TC0].extend(Rule(q, "threshold counting upper bound") for q in upper)
        out[NP_HARD].extend(Rule(q, _REFS[q]) for q in _hits(p, BASIC_NP_PATTERNS))
        return out
    if within_e_star(p):
        out[AC0].append(Rule("e*", "enumerate existential assignments and local interpretations"))
    if is_subsequence("a", p) and within_e_star_a(p):
        out[TC0].append(Rule("e*a", "independent minimal local modulators, summed by threshold gates"))
    out[NP_HARD].extend(Rule(q, _REFS[q]) for q in _hits(p, ("aa", "ae")))
    return out


def parameterized_predicates(t: "StructureType | str", p: str) -> dict[str, list[Rule]]:
    t = StructureType.parse(t)
    p = check_pattern(p)
    out: dict[str, list[Rule]] = {PARA_AC0: [], PARA_AC0_UP: [], W2_HARD: []}
    if t is StructureType.MON:
        out[PARA_AC0].append(Rule("*", "lexicographically minimal type modulators"))
        return out
    if within_e_star_a_star(p):
        out[PARA_AC0_UP].append(Rule("e*a*", "bounded search tree of depth k"))
    if t is StructureType.BASIC:
        if is_subsequence(p, "ae"):
            out[PARA_AC0_UP].append(Rule("ae", "count isolated / universal vertices"))
        out[W2_HARD].extend(Rule(q, _REFS[q]) for q in _hits(p, BASIC_W2_PATTERNS))
    else:
        out[W2_HARD].extend(Rule(q, _REFS[q]) for q in _hits(p, ("ae",)))
    return out


def _verdict(setting: str, preds: dict[str, list[Rule]], notes=()) -> ComplexityVerdict:
    hits = [bucket for bucket, rules in preds.items() if rules]
    if len(hits) != 1:
        raise AssertionError(f"landscape is not a partition here: {hits}")
    bucket = hits[0]
    return ComplexityVerdict(setting, bucket, tuple(preds[bucket]), tuple(notes))


def classify_classical(t: "StructureType | str", op: "OperationKind | str", p: str) -> ComplexityVerdict:
    OperationKind.parse(op)
    return _verdict(CLASSICAL, classical_predicates(t, p))


def classify_parameterized(t: "StructureType | str", op: "OperationKind | str", p: str) -> ComplexityVerdict:
    OperationKind.parse(op)
    preds = parameterized_predicates(t, p)
    notes = []
    if StructureType.parse(t) is not StructureType.MON and preds[PARA_AC0_UP]:
        if within_e_star_a(p):
            notes.append("e*a patterns are also in ParaAC0 via the threshold-counting algorithm")
        elif within_e_star_a_star(p) and "e" not in p:
            notes.append("whether a* patterns lie in ParaAC0 is open")
    return _verdict(PARAMETERIZED, preds, notes)


def classify(t, op, p: str, setting: str) -> ComplexityVerdict:
    setting = parse_setting(setting)
    if setting == CLASSICAL:
        return classify_classical(t, op, p)
    return classify_parameterized(t, op, p)
