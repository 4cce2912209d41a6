"""End-to-end acceptance checks. Each test records one PASS/FAIL line."""

import itertools
import json
import random
import re
import time

from instances import KINDS, SHAPES, permute, random_request
from oracles import random_permutation, witness_check
from relmod.catalog import catalog_formula, formula_catalog
from relmod.classifier import (
    CLASSICAL,
    PARAMETERIZED,
    classical_predicates,
    classify,
    parameterized_predicates,
)
from relmod.cli import main
from relmod.formula import all_patterns, atoms, is_subsequence
from relmod.generators import random_formula, random_structure
from relmod.modification import complement_formula, complement_structure
from relmod.reductions import SetCoverInstance, verify_reduction
from relmod.solvers import (
    SolveRequest,
    SolverBudgetExceeded,
    get_solver,
    radius_formula,
    solve_brute_force,
    solve_fpt_search_tree,
    solve_radius,
    witness_ok,
)
from relmod.structures import Vocabulary, graph

SPECIALIZED = [name for name in SHAPES if name != "brute_force"]
RADIUS_1 = radius_formula(1)


def applicable(solver: str, t: str, pattern: str) -> bool:
    if solver == "exists_star":
        return "a" not in pattern
    if solver == "exists_star_forall":
        return re.fullmatch("e*a", pattern) is not None
    if solver == "fpt_search_tree":
        return "ae" not in pattern
    if solver == "basic_ae":
        return t == "basic" and pattern in ("ae", "a", "e")
    if solver == "basic_aa":
        return t == "basic" and pattern == "aa"
    if solver == "monadic":
        return t == "mon"
    raise ValueError(solver)


def agrees(solver: str, req: SolveRequest) -> bool:
    got = get_solver(solver)(req)
    if got.decision != solve_brute_force(req).decision:
        return False
    return not got.decision or witness_ok(req, got.witness)


def random_radius_request(rng, max_k=3):
    s = random_structure(rng, "basic", rng.randint(1, 6))
    return SolveRequest(s, "basic", RADIUS_1, rng.randint(0, max_k), rng.choice(KINDS))


def radius_agrees(req: SolveRequest) -> bool:
    got = solve_radius(req.structure, 1, req.k, req.kind)
    if got.decision != solve_brute_force(req).decision:
        return False
    return not got.decision or witness_ok(req, got.witness)


def test_criterion_1_oracle_equivalence(criterion):
    rng = random.Random(20240601)
    catalog_checks, catalog_bad = 0, []
    for entry in formula_catalog():
        monadic = {a.rel for a in atoms(entry.formula.matrix)} == {"R"}
        types = ["mon"] if monadic else ["arb", "dir", "undir", "basic"]
        voc = Vocabulary.monadic("R") if monadic else Vocabulary.graph()
        for solver in SPECIALIZED:
            for t in types:
                if not applicable(solver, t, entry.pattern):
                    continue
                for _ in range(6):
                    s = random_structure(rng, t, rng.randint(1, 6 if not monadic else 5), vocabulary=voc)
                    for kind in KINDS:
                        req = SolveRequest(s, t, entry.formula, rng.randint(0, 3), kind)
                        catalog_checks += 1
                        if not agrees(solver, req):
                            catalog_bad.append((solver, entry.name, t, kind))
    for _ in range(20):
        req = SolveRequest(random_structure(rng, "basic", rng.randint(1, 6)), "basic",
                           catalog_formula("radius-1"), rng.randint(0, 3), rng.choice(KINDS))
        catalog_checks += 1
        if not radius_agrees(req):
            catalog_bad.append(("radius", "radius-1"))

    random_checks, random_bad = 0, []
    for solver in SPECIALIZED:
        for _ in range(500):
            req = random_request(rng, solver)
            random_checks += 1
            if not agrees(solver, req):
                random_bad.append((solver, str(req.formula)))
    for _ in range(500):
        random_checks += 1
        req = random_radius_request(rng)
        if not radius_agrees(req):
            random_bad.append(("radius", req.structure.to_json()))
    ok = not catalog_bad and not random_bad
    criterion(1, ok, f"{catalog_checks} catalog and {random_checks} random instances across "
                     f"{len(SPECIALIZED) + 1} solvers, {len(catalog_bad) + len(random_bad)} disagreements")
    assert ok, (catalog_bad[:5], random_bad[:5])


EXHAUSTIVE = [
    ("ae_undir", ["--max-sets", "3", "--max-universe", "2", "--max-k", "1"]),
    ("aea_basic", ["--max-sets", "3", "--max-universe", "2", "--max-k", "1"]),
    ("aee_basic", ["--max-sets", "3", "--max-universe", "2", "--max-k", "1"]),
    ("aae_basic", ["--max-sets", "3", "--max-universe", "2", "--max-k", "1"]),
    ("eae_basic", ["--max-sets", "3", "--max-universe", "2", "--max-k", "1"]),
    ("vertexcover_aa", ["--max-vertices", "4", "--max-k", "2"]),
    ("vertexcover_eaa", ["--max-vertices", "3", "--max-k", "1"]),
    ("majority_undir_a_del", ["--max-length", "6"]),
    ("majority_monadic_del", ["--max-length", "6"]),
]


def run_verify(capsys, name, extra):
    code = main(["verify", name, *extra, "--format", "json", "--workers", "2"])
    return code, json.loads(capsys.readouterr().out)


def test_criterion_2_reduction_verification(criterion, capsys):
    results, bad = [], []
    for name, bounds in EXHAUSTIVE:
        code, data = run_verify(capsys, name, bounds)
        results.append(f"{name}={data['instances']}")
        if code != 0 or not data["passed"]:
            bad.append(name)
    flagged = {}
    for name, extra in (("majority_basic_ea_add", []), ("majority_basic_aa", ["--majority-kind", "add"])):
        code, data = run_verify(capsys, name, ["--max-length", "6", *extra])
        assert data["flagged"]
        flagged[name] = data["summary"]
    criterion(2, not bad, f"verified {', '.join(results)}; flagged variants reported: "
                          + "; ".join(f"{n} {json.dumps(s, sort_keys=True)}" for n, s in flagged.items()))
    assert not bad, bad


def test_criterion_3_duality(criterion):
    rng = random.Random(7)
    mismatches = 0
    for _ in range(500):
        t = rng.choice(["arb", "dir", "undir", "basic", "mon"])
        s = random_structure(rng, t, rng.randint(1, 4))
        f = random_formula(rng, s.vocabulary, max_vars=3)
        k = rng.randint(0, 3)
        add = solve_brute_force(SolveRequest(s, t, f, k, "add")).decision
        dual = SolveRequest(complement_structure(s, t), t, complement_formula(f, t), k, "del")
        if add != solve_brute_force(dual).decision:
            mismatches += 1
    criterion(3, mismatches == 0, f"500 samples with n <= 4, {mismatches} mismatches")
    assert mismatches == 0


SPOT_VALUES = [
    ("undir", PARAMETERIZED, "ae", "W2hard_containing"),
    ("basic", PARAMETERIZED, "ae", "ParaAC0up"),
    ("basic", CLASSICAL, "eaa", "NPhard_containing"),
    ("mon", PARAMETERIZED, "aeaeae", "ParaAC0"),
    ("undir", CLASSICAL, "a", "TC0_not_AC0"),
    ("mon", CLASSICAL, "eee", "AC0"),
    ("dir", PARAMETERIZED, "ae", "W2hard_containing"),
    ("undir", CLASSICAL, "eea", "TC0_not_AC0"),
    ("basic", PARAMETERIZED, "aee", "W2hard_containing"),
    ("basic", CLASSICAL, "a", "AC0"),
    ("arb", PARAMETERIZED, "eaa", "ParaAC0up"),
    ("basic", CLASSICAL, "ae", "TC0_not_AC0"),
]


def test_criterion_4_classifier(criterion):
    patterns = list(all_patterns(6))
    problems = []
    for t in ("arb", "dir", "undir", "basic", "mon"):
        for p in patterns:
            for preds in (classical_predicates(t, p), parameterized_predicates(t, p)):
                if sum(1 for rules in preds.values() if rules) != 1:
                    problems.append(("partition", t, p))
        for setting in (CLASSICAL, PARAMETERIZED):
            rank = {p: classify(t, "edit", p, setting).rank for p in patterns}
            for p, q in itertools.product(patterns, repeat=2):
                if is_subsequence(p, q) and rank[p] > rank[q]:
                    problems.append(("monotone", t, setting, p, q))
        if t == "mon":
            if any(classify(t, "edit", p, PARAMETERIZED).bucket != "ParaAC0" for p in patterns):
                problems.append(("mon", "param"))
    for t, setting, p, bucket in SPOT_VALUES:
        for op in KINDS:
            if classify(t, op, p, setting).bucket != bucket:
                problems.append(("spot", t, setting, p, op))
    criterion(4, not problems, f"{len(patterns)} patterns x 5 types, {len(SPOT_VALUES)} spot values, "
                               f"{len(problems)} problems")
    assert not problems, problems[:5]


def perturbed_clusters():
    blocks = [range(0, 10), range(10, 20), range(20, 30)]
    edges = {(u, v) for b in blocks for u, v in itertools.combinations(b, 2)}
    for u, v in [(27, 28), (7, 23), (19, 28)]:
        edges ^= {(u, v)}
    return graph(30, edges)


def test_criterion_5_fpt_smoke(criterion):
    req = SolveRequest(perturbed_clusters(), "basic", catalog_formula("clusters"), 3, "edit")
    start = time.perf_counter()
    result = solve_fpt_search_tree(req)
    elapsed = time.perf_counter() - start
    fast = result.decision and witness_ok(req, result.witness) and elapsed < 10
    try:
        solve_brute_force(req)
        brute_refused = False
    except SolverBudgetExceeded:
        brute_refused = True
    ok = fast and brute_refused
    criterion(5, ok, f"search tree said {'yes' if result.decision else 'no'} in {elapsed:.2f}s "
                     f"({result.nodes_explored} nodes); brute force "
                     f"{'exceeded its node budget' if brute_refused else 'finished'}")
    assert ok


def test_criterion_6_invariance(criterion):
    rng = random.Random(99)
    failures = []
    counts = {}
    for solver in list(SHAPES) + ["radius"]:
        for _ in range(500):
            if solver == "radius":
                req = random_radius_request(rng)

                def fn(r):
                    return solve_radius(r.structure, 1, r.k, r.kind)
            else:
                req = random_request(rng, solver)
                fn = get_solver(solver)
            base = fn(req)
            perm = random_permutation(rng, req.structure.n)
            moved = SolveRequest(permute(req.structure, perm), req.structure_type, req.formula, req.k, req.kind)
            if fn(moved).decision != base.decision:
                failures.append((solver, "isomorphism"))
            if base.decision:
                if not fn(req.with_budget(req.k + 1)).decision:
                    failures.append((solver, "monotone"))
                if not witness_check(req.structure, req.formula, req.k, req.kind, req.structure_type,
                                     base.witness):
                    failures.append((solver, "witness"))
            counts[solver] = counts.get(solver, 0) + 1
    criterion(6, not failures, f"{sum(counts.values())} instances over {len(counts)} solvers, "
                               f"{len(failures)} failures")
    assert not failures, failures[:5]


def test_criterion_7_radius(criterion):
    checked, bad = 0, []
    for n in range(1, 6):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            s = graph(n, [p for b, p in enumerate(pairs) if mask >> b & 1])
            for k in range(3):
                for kind in KINDS:
                    checked += 1
                    if not radius_agrees(SolveRequest(s, "basic", RADIUS_1, k, kind)):
                        bad.append((n, mask, k, kind))
    one = SetCoverInstance(("s1",), ("u1",), frozenset({("s1", "u1")}), 1)
    r2 = verify_reduction("eae_basic", one, r=2)
    r3 = verify_reduction("eae_basic", one, r=3)
    ok = not bad and r2.passed and r3.passed
    criterion(7, ok, f"radius-1 solver vs brute force on {checked} instances ({len(bad)} mismatches); "
                     f"eae r=2 {'ok' if r2.passed else 'FAILED'}, r=3 {'ok' if r3.passed else 'FAILED'}")
    assert ok, bad[:5]

