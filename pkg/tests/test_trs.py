import random

import pytest
from hypothesis import given, strategies as st

import lposat
from generators import random_term
from lposat.trs import (
    App,
    ArityError,
    ParseError,
    Rule,
    Symbol,
    Trs,
    UnboundVariableError,
    UnsupportedFormatError,
    Var,
    format_trs,
    parse_term,
    parse_trs,
    subterms,
    term_vars,
)


def test_negation_signature(negation):
    assert len(negation.rules) == 6
    arities = {s.name: s.arity for s in negation.signature}
    assert arities == {"-": 1, "gt": 2, "ge": 2, "+": 2, "*": 2}


def test_rules_keep_file_order(negation):
    assert str(negation.rules[0]) == "-(gt(A,B)) -> ge(B,A)"
    assert str(negation.rules[-1]) == "*(+(B,C),A) -> +(*(B,A),*(C,A))"


def test_empty_system():
    trs = parse_trs("(VAR)(RULES)")
    assert trs.rules == () and trs.signature == frozenset()


def test_unbound_rhs_variable():
    with pytest.raises(UnboundVariableError, match="Y"):
        parse_trs("(VAR X Y)(RULES f(X) -> g(X,Y))")


def test_unbound_distributivity_variant_rejected():
    # C occurs only on the right
    with pytest.raises(UnboundVariableError, match="C"):
        parse_trs("(VAR A B C)(RULES *(A,+(A,B)) -> +(*(A,B),*(A,C)))")


def test_inconsistent_arity():
    with pytest.raises(ArityError):
        parse_trs("(VAR X)(RULES f(X) -> f(X,X))")


@pytest.mark.parametrize("section", ["THEORY (AC plus)", "STRATEGY INNERMOST"])
def test_theory_and_strategy_rejected(section):
    with pytest.raises(UnsupportedFormatError):
        parse_trs(f"(VAR X)({section})(RULES f(X) -> X)")


def test_syntax_error_position():
    with pytest.raises(ParseError) as info:
        parse_trs("(VAR X)\n(RULES f(X) -> )")
    assert (info.value.line, info.value.column) == (2, 16)


def test_comment_section_and_nullary_forms():
    trs = parse_trs("(COMMENT a (nested) note)(VAR x)(RULES f(x, c()) -> c s'(x) -> x)")
    assert len(trs.rules) == 2
    assert trs.rules[0].lhs.args[1] is App(Symbol("c", 0))
    assert {s.name for s in trs.signature} == {"f", "c", "s'"}


def test_variable_lhs_is_accepted():
    trs = parse_trs("(VAR X)(RULES X -> X)")
    assert trs.rules[0].lhs is Var("X")


def test_term_vars():
    assert term_vars(Var("X")) == {"X"}
    assert term_vars(parse_term("-(gt(A,B))", "AB")) == {"A", "B"}
    assert term_vars(parse_term("e")) == set()


def test_terms_are_interned():
    assert parse_term("f(X,g(X))", ["X"]) is App("f", [Var("X"), App("g", [Var("X")])])
    assert len(list(subterms(parse_term("f(X,g(X))", ["X"])))) == 4


def test_app_arity_checked():
    with pytest.raises(ArityError):
        App(Symbol("f", 2), [Var("X")])


def test_roundtrip_bundled(negation, idiv):
    for trs in (negation, idiv):
        again = parse_trs(format_trs(trs))
        assert again == trs
        assert parse_trs(format_trs(again)) == again


@given(st.integers(0, 2**32 - 1))
def test_roundtrip_random(seed):
    rng = random.Random(seed)
    rules = []
    for _ in range(rng.randint(0, 4)):
        lhs = random_term(rng, 3)
        rhs = random_term(rng, 3)
        # drop right-hand variables the left side does not bind
        if not term_vars(rhs) <= term_vars(lhs):
            rhs = App("a")
        rules.append(Rule(lhs, rhs))
    trs = Trs.from_rules(rules)
    text = format_trs(trs)
    assert parse_trs(text) == trs
    assert format_trs(parse_trs(text)) == text


def test_example_path_exists():
    assert lposat.example_path("idiv.trs").endswith("idiv.trs")
