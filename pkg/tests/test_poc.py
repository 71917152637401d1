import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from generators import random_constraint
from lposat.poc import (
    FALSE,
    TRUE,
    And,
    Atom,
    Or,
    Rel,
    TooManySymbolsError,
    brute_force_sat,
    domain_graph,
    eq,
    evaluate,
    format_formula,
    ge,
    gt,
    mk_and,
    mk_or,
    model_to_solution,
    negate,
    nodes,
    scc_components,
    scc_partition,
    solution_to_model,
    symbols,
)


def equivalent(p, q):
    xor = mk_or([mk_and([p, negate(q)]), mk_and([negate(p), q])])
    return brute_force_sat(xor) is None


# small constraints over {f, g, h}
PHI1 = gt("f", "g") & (gt("f", "h") | gt("h", "f"))
PHI2 = ge("f", "g") & ge("g", "h") & ge("h", "g")
PHI3 = gt("f", "g") & negate(gt("h", "g") | gt("f", "h"))

# strict constraint of negation.trs
NEG = mk_and([
    gt("gt", "ge") | gt("-", "ge"),
    gt("ge", "gt") | gt("-", "gt"),
    (gt("+", "*") & gt("+", "-")) | gt("-", "*"),
    (gt("*", "+") & gt("*", "-")) | gt("-", "+"),
    gt("*", "+"),
])


class TestConstruction:
    def test_identities(self):
        assert mk_and([TRUE, gt("f", "g")]) is gt("f", "g")
        assert mk_or([TRUE, gt("f", "g")]) is TRUE
        assert mk_and([gt("f", "g"), FALSE]) is FALSE
        assert mk_or([]) is FALSE and mk_and([]) is TRUE

    def test_reflexive_atoms(self):
        assert gt("f", "f") is FALSE
        assert eq("f", "f") is TRUE

    def test_eq_canonical(self):
        assert eq("g", "f") is eq("f", "g")
        assert eq("g", "f").lhs == "f"
        assert gt("g", "f") is not gt("f", "g")

    def test_flatten_and_dedupe(self):
        a, b, c = gt("a", "b"), gt("b", "c"), gt("c", "a")
        phi = mk_and([a, mk_and([b, a]), c])
        assert isinstance(phi, And) and phi.parts == (a, b, c)

    def test_hash_consing(self):
        assert (gt("a", "b") | eq("a", "c")) is (gt("a", "b") | eq("a", "c"))

    def test_immutable(self):
        with pytest.raises(AttributeError):
            gt("a", "b").lhs = "z"

    def test_pretty(self):
        assert format_formula(PHI1) == "(f>g) /\\ ((f>h) \\/ (h>f))"
        assert str(TRUE) == "true"


@given(st.integers(0, 2**32 - 1))
def test_no_constants_below_root(seed):
    phi = random_constraint(random.Random(seed))
    for node in nodes(phi):
        if isinstance(node, (And, Or)):
            assert len(node.parts) >= 2
            assert all(c is not TRUE and c is not FALSE for c in node.parts)


class TestNegate:
    def test_atoms(self):
        assert negate(gt("f", "g")) is (gt("g", "f") | eq("f", "g"))
        assert negate(eq("f", "g")) is (gt("f", "g") | gt("g", "f"))

    def test_constants(self):
        assert negate(TRUE) is FALSE and negate(FALSE) is TRUE

    def test_phi3_normal_form(self):
        # equivalent to (f>g) /\ (g>=h) /\ (h>=f)
        assert equivalent(PHI3, gt("f", "g") & ge("g", "h") & ge("h", "f"))

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=60)
    def test_negation_complements(self, seed):
        rng = random.Random(seed)
        phi = random_constraint(rng, max_symbols=4, max_atoms=8)
        syms = symbols(phi)
        for values in itertools.product(range(1, len(syms) + 1), repeat=len(syms)):
            theta = dict(zip(syms, values))
            assert evaluate(negate(phi), theta) != evaluate(phi, theta)


class TestEvaluate:
    def test_phi1(self):
        assert evaluate(PHI1, {"f": 3, "g": 1, "h": 2})

    def test_cycle_fails(self):
        phi = gt("f", "g") & ge("g", "h") & ge("h", "f")
        assert not evaluate(phi, {"f": 2, "g": 1, "h": 1})

    def test_true(self):
        assert evaluate(TRUE, {})

    def test_missing_symbol(self):
        with pytest.raises(KeyError, match="g"):
            evaluate(gt("f", "g"), {"f": 1})


class TestBruteForce:
    def test_phi3_unsat(self):
        assert brute_force_sat(PHI3) is None

    def test_phi2_sat(self):
        theta = brute_force_sat(PHI2)
        assert theta is not None and evaluate(PHI2, theta)
        assert evaluate(PHI2, {"f": 1, "g": 1, "h": 1})

    def test_phi2_has_solutions_beyond_all_equal(self):
        # f above g = h also satisfies it
        assert evaluate(PHI2, {"f": 2, "g": 1, "h": 1})

    def test_constants(self):
        assert brute_force_sat(TRUE) == {}
        assert brute_force_sat(FALSE) is None

    def test_first_solution_in_range(self):
        theta = brute_force_sat(PHI1)
        assert set(theta.values()) <= {1, 2, 3}

    def test_too_many_symbols(self):
        phi = mk_and(gt(f"s{i}", f"s{i + 1}") for i in range(8))
        with pytest.raises(TooManySymbolsError):
            brute_force_sat(phi)

    def test_chain_of_seven(self):
        phi = mk_and(gt(f"s{i}", f"s{i + 1}") for i in range(6))
        theta = brute_force_sat(phi)
        assert [theta[f"s{i}"] for i in range(7)] == [7, 6, 5, 4, 3, 2, 1]


class TestModels:
    def test_strict_chain_model(self):
        model = solution_to_model({"f": 3, "h": 2, "g": 1}, "fgh")
        assert model == {
            ("f", ">", "h"), ("h", ">", "g"), ("f", ">", "g"),
            ("f", "=", "f"), ("g", "=", "g"), ("h", "=", "h"),
        }

    def test_all_equal(self):
        model = solution_to_model({"f": 1, "g": 1}, "fg")
        assert model == {(x, "=", y) for x in "fg" for y in "fg"}

    def test_pair(self):
        assert solution_to_model({"f": 2, "g": 1}, "fg") == {
            ("f", ">", "g"), ("f", "=", "f"), ("g", "=", "g")
        }

    def test_linearization_keeps_ties(self):
        model = solution_to_model({"f": 3, "g": 2, "h": 2}, "fgh")
        assert model_to_solution(model, "fgh") == {"f": 2, "g": 1, "h": 1}


def satisfies_axioms(model, syms):
    m = set(model)
    for f in syms:
        if (f, "=", f) not in m:
            return False
    for f, g in itertools.product(syms, repeat=2):
        if (f, "=", g) in m and (g, "=", f) not in m:
            return False
        if (f, ">", g) in m and (g, ">", f) in m:
            return False
        if not ((f, ">", g) in m or (g, ">", f) in m or (f, "=", g) in m):
            return False
    for f, g, h in itertools.product(syms, repeat=3):
        for r1, r2, r3 in [(">", ">", ">"), ("=", "=", "="), (">", "=", ">"), ("=", ">", ">")]:
            if (f, r1, g) in m and (g, r2, h) in m and (f, r3, h) not in m:
                return False
    return True


@given(st.dictionaries(st.sampled_from("abcde"), st.integers(-3, 9), min_size=1))
def test_solution_models_satisfy_axioms(theta):
    assert satisfies_axioms(solution_to_model(theta, theta), list(theta))


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=80)
def test_linearization_preserves_truth(seed):
    rng = random.Random(seed)
    phi = random_constraint(rng)
    syms = symbols(phi)
    theta = {f: rng.randint(-5, 20) for f in syms}
    back = model_to_solution(solution_to_model(theta, syms), syms)
    assert set(back.values()) <= set(range(1, len(syms) + 1))
    assert evaluate(phi, back) == evaluate(phi, theta)


class TestDomainGraph:
    def test_two_components(self):
        sccs = set(domain_graph(NEG).sccs())
        assert sccs == {frozenset({"gt", "ge"}), frozenset({"-", "*", "+"})}

    def test_single_atom(self):
        g = domain_graph(gt("f", "g"))
        assert g.vertices == {"f", "g"} and g.edges == {("f", "g")}
        assert sorted(g.sccs(), key=sorted) == [frozenset("f"), frozenset("g")]

    def test_eq_edges_both_ways(self):
        assert domain_graph(eq("f", "g")).edges == {("f", "g"), ("g", "f")}

    def test_reverse_topological_order(self):
        comps = domain_graph(gt("a", "b") & gt("b", "c")).sccs()
        assert comps == [frozenset("c"), frozenset("b"), frozenset("a")]


class TestSccPartition:
    def test_negation_parts(self):
        parts = dict(scc_components(NEG))
        assert parts[frozenset({"gt", "ge"})] is TRUE
        phi2 = parts[frozenset({"-", "*", "+"})]
        assert equivalent(phi2, gt("*", "+") & gt("-", "*") & gt("-", "+"))

    def test_cross_component_atom(self):
        assert scc_partition(gt("f", "g")) == [TRUE, TRUE]
        assert scc_partition(gt("f", "g"), drop_trivial=True) == []

    def test_single_component_is_identity(self):
        phi = gt("a", "b") | (gt("b", "a") & eq("a", "b"))
        assert scc_partition(phi) == [phi]

    def test_constants(self):
        assert scc_partition(TRUE) == []
        assert scc_partition(FALSE) == [FALSE]


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=150)
def test_partition_preserves_satisfiability(seed):
    phi = random_constraint(random.Random(seed))
    whole = brute_force_sat(phi) is not None
    parts = all(brute_force_sat(p) is not None for p in scc_partition(phi))
    assert whole == parts
