import itertools
import random
from array import array

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from oracles import evaluate, satisfies
from relmod import kernels
from relmod.catalog import catalog_formula, formula_catalog, lookup
from relmod.formula import (
    And,
    Atom,
    Const,
    Eq,
    FormulaSyntaxError,
    NonPrenexError,
    Not,
    Or,
    Quantifier,
    UnboundVariableError,
    all_patterns,
    dnf_matrix,
    format_formula,
    is_subsequence,
    parse_formula,
    parse_matrix,
    pattern_of,
    to_dnf,
)
from relmod.generators import default_vocabulary, random_formula, random_matrix, random_structure
from relmod.modelcheck import CompiledFormula, DenseStructure, holds, model_check, reference_model_check
from relmod.structures import Structure, StructureError, StructureType, Vocabulary, check_structure_type, graph

E = lambda x, y: Atom("E", (x, y))  # noqa: E731


# -- parsing -------------------------------------------------------------------


def test_parse_negated_loop():
    f = parse_formula("forall x ~E(x,x)")
    assert f.prefix == ((Quantifier.FORALL, "x"),)
    assert f.matrix == Not(E("x", "x"))


def test_parse_single_atom():
    f = parse_formula("exists x E(x,x)")
    assert f.prefix == ((Quantifier.EXISTS, "x"),)
    assert f.matrix == E("x", "x")


def test_unbound_variable_is_reported():
    with pytest.raises(UnboundVariableError) as err:
        parse_formula("forall x (E(x,y))")
    assert "y" in str(err.value)


def test_syntax_error_carries_position():
    with pytest.raises(FormulaSyntaxError) as err:
        parse_formula("forall x (E(x,x)")
    assert err.value.position == len("forall x (E(x,x)")


def test_quantifier_inside_matrix_is_rejected():
    with pytest.raises(NonPrenexError):
        parse_formula("forall x (E(x,x) | exists y E(x,y))")


def test_shadowing_is_rejected():
    with pytest.raises(FormulaSyntaxError):
        parse_formula("forall x exists x E(x,x)")


def test_sugar_and_unicode():
    a = parse_formula("∀x ∃y (x ~ y → ¬(x = y))")
    b = parse_formula("forall x exists y (E(x,y) -> x != y)")
    assert a == b
    assert parse_formula("forall x forall y x !~ y").matrix == Not(E("x", "y"))


def test_biconditional_is_sugar():
    f = parse_formula("forall x forall y (x ~ y <-> y ~ x)")
    for n in range(1, 4):
        for edges in itertools.product([0, 1], repeat=n * n):
            rel = {divmod(i, n) for i, b in enumerate(edges) if b}
            sym = all((v, u) in rel for u, v in rel)
            assert satisfies(n, {"E": rel}, f) == sym


def test_round_trip_catalog():
    for entry in formula_catalog():
        assert parse_formula(format_formula(entry.formula)) == entry.formula


@given(st.integers(0, 10_000))
def test_round_trip_random(seed):
    rng = random.Random(seed)
    voc = default_vocabulary("arb")
    f = random_formula(rng, voc, max_vars=3, depth=3)
    assert parse_formula(format_formula(f)) == f
    assert parse_formula("  " + format_formula(f).replace(" ", "   ") + "\n") == f


# -- patterns ------------------------------------------------------------------


def test_pattern_examples():
    assert pattern_of(lookup("basic").formula) == "aa"
    assert pattern_of(lookup("degree-2").formula) == "aee"
    assert pattern_of(parse_formula("true")) == ""


@given(st.integers(0, 10_000))
def test_pattern_length_matches_prefix(seed):
    rng = random.Random(seed)
    f = random_formula(rng, default_vocabulary("dir"), max_vars=4)
    assert len(pattern_of(f)) == len(f.prefix)
    assert all((c == "a") == (q is Quantifier.FORALL) for c, (q, _) in zip(pattern_of(f), f.prefix))


def test_subsequence_examples():
    assert is_subsequence("aaee", "aeaeae")
    assert is_subsequence("", "eaa")
    assert is_subsequence("", "")
    assert not is_subsequence("ea", "ae")


def _deletions(q):
    for mask in range(1 << len(q)):
        yield "".join(c for i, c in enumerate(q) if mask >> i & 1)


def test_subsequence_against_enumeration():
    for q in all_patterns(5):
        subs = set(_deletions(q))
        for p in all_patterns(5):
            assert is_subsequence(p, q) == (p in subs)


# -- model checking ---------------------------------------------------------


def test_model_check_examples():
    assert model_check(graph(1), lookup("basic").formula)
    assert model_check(graph(3, [(0, 1), (1, 2), (0, 2)]), lookup("degree-2").formula)
    literal_clusters = parse_formula("forall x forall y forall z ((x ~ y & y ~ z) -> x ~ z)")
    p3 = graph(3, [(0, 1), (1, 2)])
    assert not model_check(p3, literal_clusters)
    assert not model_check(p3, lookup("clusters").formula)


def test_partial_assignment_fixes_prefix_variable():
    f = lookup("radius-1").formula
    star = graph(4, [(0, 1), (0, 2), (0, 3)])
    assert model_check(star, f)
    assert model_check(star, f, {"c": 0})
    assert not model_check(star, f, {"c": 1})
    assert reference_model_check(star, f, {"c": 1}) is False


def test_holds_requires_total_assignment():
    with pytest.raises(UnboundVariableError):
        holds(graph(2), E("x", "y"), {"x": 0})


def _random_instance(rng):
    t = rng.choice(list(StructureType))
    n = rng.randint(1, 4)
    s = random_structure(rng, t, n)
    f = random_formula(rng, s.vocabulary, max_vars=3, depth=3)
    return s, f


@given(st.integers(0, 100_000))
def test_kernels_match_independent_evaluator(seed):
    rng = random.Random(seed)
    s, f = _random_instance(rng)
    rels = {name: set(s[name]) for name in s.vocabulary.names}
    expected = satisfies(s.n, rels, f)
    assert model_check(s, f) == expected
    assert reference_model_check(s, f) == expected


@given(st.integers(0, 100_000))
def test_both_backends_agree(seed):
    rng = random.Random(seed)
    s, f = _random_instance(rng)
    compiled = CompiledFormula(f, s.vocabulary, s.n)
    dense = DenseStructure.from_structure(s)
    answers = set()
    for backend in kernels.available_backends().values():
        assign = array("q", [0] * len(compiled.quant))
        if compiled.quant:
            answers.add(bool(backend.check_prefix(dense.data, s.n, compiled.prog, compiled.quant, assign)))
        else:
            answers.add(bool(backend.eval_matrix(dense.data, s.n, compiled.prog, assign)))
    assert len(answers) == 1


def test_compiled_backend_is_built():
    assert "cython" in kernels.available_backends()


@given(st.integers(0, 100_000))
def test_first_violation_is_lexicographically_first(seed):
    rng = random.Random(seed)
    s = random_structure(rng, "dir", rng.randint(1, 4))
    f = random_formula(rng, s.vocabulary, pattern="aa", depth=2)
    compiled = CompiledFormula(f, s.vocabulary, s.n)
    dense = DenseStructure.from_structure(s)
    rels = {"E": set(s["E"])}
    expected = None
    for x, y in itertools.product(range(s.n), repeat=2):
        if not evaluate(f.matrix, {"x": x, "y": y}, rels):
            expected = (x, y)
            break
    for backend in kernels.available_backends().values():
        assign = array("q", [0, 0])
        found = backend.first_violation(dense.data, s.n, compiled.prog, array("i", [0, 1]), assign)
        assert bool(found) == (expected is not None)
        if expected is not None:
            assert tuple(assign) == expected


@given(st.integers(0, 100_000))
def test_model_check_is_isomorphism_invariant(seed):
    rng = random.Random(seed)
    s, f = _random_instance(rng)
    perm = list(range(s.n))
    rng.shuffle(perm)
    assert model_check(s.permuted(perm), f) == model_check(s, f)


def test_prefix_free_matrix_equals_boolean_evaluation():
    for value in (True, False):
        f = parse_formula("true" if value else "false")
        assert model_check(graph(2), f) is value
    f = parse_formula("true & ~false | false")
    assert model_check(graph(1), f)


# -- DNF -------------------------------------------------------------------


def test_dnf_examples():
    assert to_dnf(E("x", "y")) == [[E("x", "y")]]
    imp = parse_matrix("x ~ y -> y ~ x")
    assert to_dnf(imp) == [[Not(E("x", "y"))], [E("y", "x")]]
    contradictory = parse_matrix("(x ~ y & ~x ~ y) | x = y")
    assert to_dnf(contradictory) == [[Eq("x", "y")]]


def test_dnf_deduplicates_and_handles_constants():
    assert to_dnf(parse_matrix("x ~ y & x ~ y")) == [[E("x", "y")]]
    assert to_dnf(Const(True)) == [[]]
    assert to_dnf(Const(False)) == []
    assert to_dnf(Or((Eq("x", "y"), Eq("y", "x")))) == [[Eq("x", "y")]]


@given(st.integers(0, 100_000))
def test_dnf_is_equivalent_on_all_small_assignments(seed):
    rng = random.Random(seed)
    voc = Vocabulary((("E", 2), ("P", 1)))
    variables = ["x", "y", "z"]
    m = random_matrix(rng, variables, voc, depth=3)
    d = dnf_matrix(to_dnf(m))
    n = 3
    rels_pool = list(itertools.product(range(n), repeat=2))
    for _ in range(6):
        rels = {"E": {t for t in rels_pool if rng.random() < 0.5},
                "P": {(a,) for a in range(n) if rng.random() < 0.5}}
        for values in itertools.product(range(n), repeat=3):
            env = dict(zip(variables, values))
            assert evaluate(m, env, rels) == evaluate(d, env, rels)
    for clause in to_dnf(m):
        assert len(set(clause)) == len(clause)


# -- structures -------------------------------------------------------------


def test_type_examples():
    assert check_structure_type(graph(2, [(0, 1)]), "basic")
    assert not check_structure_type(graph(1, [], loops=[0]), "basic")
    assert not check_structure_type(graph(2, [(0, 1)], symmetric=False), "undir")
    assert check_structure_type(graph(2, [(0, 1)], symmetric=False), "dir")
    mon = Structure(Vocabulary.monadic("P", "Q"), 2, {"P": [(0,)]})
    assert check_structure_type(mon, "mon") and check_structure_type(mon, "arb")
    assert not check_structure_type(mon, "dir")
    assert not check_structure_type(graph(2), "mon")


def test_structure_invariants():
    with pytest.raises(StructureError):
        Structure(Vocabulary.graph(), 0)
    with pytest.raises(StructureError):
        Structure(Vocabulary.graph(), 2, {"E": [(0, 2)]})
    with pytest.raises(StructureError):
        Structure(Vocabulary.graph(), 2, {"E": [(0,)]})
    with pytest.raises(StructureError):
        Structure(Vocabulary.graph(), 2, {"F": [(0, 1)]})
    with pytest.raises(ValueError):
        Vocabulary((("E", 2), ("E", 1)))
    with pytest.raises(ValueError):
        Vocabulary((("E", 0),))


@given(st.integers(0, 100_000))
def test_structure_json_round_trip(seed):
    rng = random.Random(seed)
    s = random_structure(rng, rng.choice(list(StructureType)), rng.randint(1, 5))
    assert Structure.from_json(s.to_json()) == s
    assert Structure.from_json(s.to_json()).digest() == s.digest()


def test_structure_json_format():
    s = Structure.from_json('{"universe": 2, "relations": {"E": {"arity": 2, "tuples": [[0,1],[1,0]]}}}')
    assert s == graph(2, [(0, 1)])
    with pytest.raises(StructureError):
        Structure.from_json('{"universe": "2"}')
    with pytest.raises(StructureError):
        Structure.from_json("not json")


# -- catalog -------------------------------------------------------------------


def test_catalog_contents_and_patterns():
    expected = {"basic": "aa", "undirected": "aa", "degree-2": "aee", "radius-2": "eae", "clusters": "aaa",
                "triangle-edge-cover": "aae", "diam-2": "aae", "loopfree-neighbour": "ae",
                "no-common-triangle": "aea", "on-triangle": "aee", "looped-endpoint": "aa",
                "misses-an-endpoint": "eaa", "loop-free": "a", "no-isolated": "ae", "universal-vertex": "ea",
                "edgeless": "aa", "empty-unary": "a"}
    for name, pattern in expected.items():
        assert lookup(name).pattern == pattern, name
    with pytest.raises(KeyError):
        lookup("nope")


def test_catalog_radius_2_text():
    assert catalog_formula("radius-2") == parse_formula("exists c forall x exists y (x = c | x ~ c | (x ~ y & y ~ c))")


def test_clusters_means_disjoint_cliques_on_basic_graphs():
    f = catalog_formula("clusters")
    for n in range(1, 5):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            g = graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
            adj = {u: {v for v in range(n) if (u, v) in g["E"]} for u in range(n)}
            cluster = all(adj[u] | {u} == adj[v] | {v} for u in range(n) for v in adj[u])
            assert model_check(g, f) == cluster


def test_diam_2_matches_distances():
    f = catalog_formula("diam-2")
    for n in range(1, 5):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            edges = [p for i, p in enumerate(pairs) if mask >> i & 1]
            g = nx.Graph()
            g.add_nodes_from(range(n))
            g.add_edges_from(edges)
            expected = nx.is_connected(g) and nx.diameter(g) <= 2
            assert model_check(graph(n, edges), f) == expected


def test_matrix_nodes_are_values():
    assert And((E("x", "y"),)) == And((E("x", "y"),))
    assert hash(Or((Eq("x", "y"),))) == hash(Or((Eq("x", "y"),)))
