import pytest
from hypothesis import given, strategies as st

from seqlam.syntax import (
    ParseError, Variable, atom, canonical_variable, fresh_variable, imp,
    parse_context, parse_formula, parse_sequent, print_formula, print_sequent,
    repetition_free, width,
)

from oracles import width_oracle

p, q, r = atom("p"), atom("q"), atom("r")


def test_width_atom():
    assert width(p) == 0


def test_width_single_arrow():
    assert width(imp(p, p)) == 1


def test_width_nested():
    f = imp(imp(p, p), imp(p, p))
    assert width_oracle(f) == 3
    assert width(f) == 3


formulas = st.deferred(
    lambda: st.sampled_from([p, q, r])
    | st.builds(imp, formulas, formulas))


@given(formulas, formulas)
def test_width_additive(a, b):
    assert width(imp(a, b)) == width(a) + width(b) + 1


@given(formulas)
def test_formula_round_trip(f):
    assert parse_formula(print_formula(f)) == f


def test_right_associative():
    assert parse_formula("p -> q -> r") == imp(p, imp(q, r))


def test_explicit_grouping():
    assert parse_formula("(p -> q) -> r") == imp(imp(p, q), r)


def test_incomplete_input():
    with pytest.raises(ParseError):
        parse_formula("p ->")


def test_fresh_variable_first():
    assert fresh_variable(p, set()) == canonical_variable(p, 1)


def test_fresh_variable_skips_taken():
    assert fresh_variable(p, {canonical_variable(p, 1)}) == canonical_variable(p, 2)


def test_fresh_variable_least_unused():
    avoid = {canonical_variable(p, 1), canonical_variable(p, 3)}
    assert fresh_variable(p, avoid) == canonical_variable(p, 2)


def test_fresh_variable_type_scoped():
    # a same-named variable of a different type does not block the series
    assert fresh_variable(p, {canonical_variable(q, 1)}) == canonical_variable(p, 1)


def test_fresh_enumerates_series():
    avoid = set()
    seen = []
    for i in range(1, 6):
        v = fresh_variable(p, avoid)
        assert v == canonical_variable(p, i)
        avoid.add(v)
        seen.append(v)
    assert len(set(seen)) == 5


def test_variable_identity_needs_type():
    assert Variable("x", p) != Variable("x", q)
    assert Variable("x", p) == Variable("x", p)


def test_context_parsing_and_sets():
    ctx = parse_context("x:p, y:p->q, x:p")
    assert len(ctx) == 3
    assert not repetition_free(ctx)
    assert repetition_free(ctx[:2])


def test_sequent_round_trip():
    s = parse_sequent("x:p, y:p -> q |- q")
    assert print_sequent(s) == "x:p, y:p -> q |- q"
    assert parse_sequent(print_sequent(s)) == s


def test_empty_antecedent_sequent():
    s = parse_sequent("|- p -> p")
    assert s.antecedent == ()
    assert parse_sequent(print_sequent(s)) == s
