import json
import os
import subprocess
import sys

import pytest

from relmod.classifier import (
    AC0,
    BUCKET_ORDER,
    CLASSICAL,
    NP_HARD,
    PARA_AC0,
    PARA_AC0_UP,
    PARAMETERIZED,
    TC0,
    W2_HARD,
    ComplexityVerdict,
    classical_predicates,
    classify,
    classify_classical,
    classify_parameterized,
    parameterized_predicates,
    parse_setting,
    within_e_star,
    within_e_star_a,
    within_e_star_a_star,
)
from relmod.cli import landscape
from relmod.formula import all_patterns, is_subsequence

GOLDEN = os.path.join(os.path.dirname(__file__), "data", "landscape_len3.txt")
TYPES = ["arb", "dir", "undir", "basic", "mon"]
OPS = ["del", "add", "edit"]


def golden_rows():
    with open(GOLDEN) as fh:
        for line in fh:
            if line.startswith("#") or not line.strip():
                continue
            setting, types, pattern, bucket = line.split()
            for t in types.split(","):
                yield parse_setting(setting), t, "" if pattern == "-" else pattern, bucket


def test_golden_file_covers_length_three():
    rows = {(s, t, p) for s, t, p, _ in golden_rows()}
    assert len(rows) == 2 * len(TYPES) * len(list(all_patterns(3)))


@pytest.mark.parametrize("op", OPS)
def test_golden_landscape(op):
    for setting, t, p, bucket in golden_rows():
        assert classify(t, op, p, setting).bucket == bucket, (setting, t, p)


def test_table_renderer_matches_golden():
    rows = {(r["setting"], r["type"], r["pattern"]): r["bucket"] for r in landscape(3, TYPES)}
    for setting, t, p, bucket in golden_rows():
        assert rows[(setting, t, p)] == bucket


def test_table_command_json_matches_golden():
    out = subprocess.run([sys.executable, "-m", "relmod.cli", "table", "--format", "json"],
                         capture_output=True, text=True, check=True)
    rows = {(r["setting"], r["type"], r["pattern"]): r["bucket"] for r in json.loads(out.stdout)["rows"]}
    for setting, t, p, bucket in golden_rows():
        assert rows[(setting, t, p)] == bucket


def test_spec_examples():
    assert classify_classical("undir", "edit", "a").bucket == TC0
    assert classify_classical("basic", "del", "eaa").bucket == NP_HARD
    assert classify_classical("mon", "add", "eee").bucket == AC0
    assert classify_parameterized("dir", "del", "ae").bucket == W2_HARD
    assert classify_parameterized("basic", "edit", "ae").bucket == PARA_AC0_UP
    assert classify_parameterized("mon", "edit", "aeaeae").bucket == PARA_AC0


def test_closed_forms_match_subsequence_definitions():
    def star_words(max_len, shape):
        out = set()
        for i in range(max_len + 1):
            for j in range(max_len + 1 - i):
                if (shape == "e*a" and j != 1) or (shape == "e*" and j):
                    continue
                out.add("e" * i + "a" * j)
        return out

    for p in all_patterns(6):
        assert within_e_star(p) == any(is_subsequence(p, w) for w in star_words(6, "e*"))
        assert within_e_star_a(p) == any(is_subsequence(p, w) for w in star_words(7, "e*a"))
        assert within_e_star_a_star(p) == any(is_subsequence(p, w) for w in star_words(6, "e*a*"))


def test_partition_all_patterns_up_to_six():
    patterns = list(all_patterns(6))
    assert len(patterns) == 127
    for t in TYPES:
        for p in patterns:
            for preds in (classical_predicates(t, p), parameterized_predicates(t, p)):
                assert sum(1 for rules in preds.values() if rules) == 1, (t, p)


def test_monotone_under_subsequence():
    patterns = list(all_patterns(6))
    for t in TYPES:
        for setting in (CLASSICAL, PARAMETERIZED):
            rank = {p: classify(t, "edit", p, setting).rank for p in patterns}
            for p in patterns:
                for q in patterns:
                    if len(p) < len(q) and is_subsequence(p, q):
                        assert rank[p] <= rank[q], (t, setting, p, q)


def test_general_types_agree_and_op_is_irrelevant():
    for p in all_patterns(6):
        for setting in (CLASSICAL, PARAMETERIZED):
            buckets = {classify(t, op, p, setting).bucket for t in ("arb", "dir", "undir") for op in OPS}
            assert len(buckets) == 1


def test_verdict_json_and_rules():
    v = classify("undir", "del", "aea", "param")
    d = v.to_json_dict()
    assert d["setting"] == "parameterized" and d["bucket"] == W2_HARD
    assert {"pattern": "ae"} .items() <= d["rules"][0].items()
    assert all(r["ref"] for r in d["rules"])


def test_open_and_threshold_notes():
    a_star = classify("dir", "edit", "aaa", "param")
    assert a_star.bucket == PARA_AC0_UP and any("open" in n for n in a_star.notes)
    ea = classify("dir", "edit", "eea", "param")
    assert any("ParaAC0" in n for n in ea.notes)


def test_verdict_checks_setting():
    with pytest.raises(ValueError):
        ComplexityVerdict(CLASSICAL, PARA_AC0)
    assert BUCKET_ORDER[CLASSICAL][0] == AC0


def test_bad_inputs():
    with pytest.raises(ValueError):
        classify("arb", "edit", "xa", "classical")
    with pytest.raises(ValueError):
        classify("arb", "edit", "a", "quantum")
    with pytest.raises(ValueError):
        classify("tree", "edit", "a", "classical")
    with pytest.raises(ValueError):
        classify("arb", "flip", "a", "classical")
