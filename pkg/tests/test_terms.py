import random

import pytest
from hypothesis import given, settings, strategies as st

from seqlam.gen import gen_term
from seqlam.syntax import Variable, atom, imp
from seqlam.terms import (
    Abs, App, TermTypeError, Var, beta_eta_normalize, beta_normalize,
    compose_terms, fv, fv_beta, fv_seq, is_beta_eta_normal, parse_term,
    print_term, size, substitute, type_of,
)

from oracles import all_normal_forms, rightmost_innermost_normalize, subst_oracle

p, q = atom("p"), atom("q")
pp = imp(p, p)
x, y, z = Variable("x", p), Variable("y", pp), Variable("z", p)


def term_strategy():
    return st.integers(min_value=0, max_value=10_000).map(
        lambda s: gen_term(random.Random(s), depth=3))


def test_type_of_var():
    assert type_of(Var(x)) == p


def test_type_of_abs():
    assert type_of(Abs(x, Var(x))) == pp


def test_type_of_app():
    assert type_of(App(Var(y), Var(x))) == p


def test_ill_typed_application_rejected():
    with pytest.raises(TermTypeError) as err:
        App(Var(x), Var(x))
    assert "cannot apply" in str(err.value)


def test_substitute_hit():
    n = App(Var(y), Var(x))
    assert substitute(Var(x), x, n) == n


def test_substitute_miss():
    assert substitute(Var(z), x, Var(x)) == Var(z)


def test_substitute_capture_avoided():
    # (\y':p->p. (x' (y' x)))[x' := y'] must rename the binder
    x2 = Variable("x'", imp(pp, p))
    y2 = Variable("y'", pp)
    m = Abs(y2, App(Var(x2), Var(y2)))
    n = substitute(m, x2, Var(Variable("y'", imp(pp, p))))
    expect = subst_oracle(m, x2, Var(Variable("y'", imp(pp, p))))
    assert n == expect


@given(term_strategy(), st.integers(0, 3))
@settings(max_examples=60, deadline=None)
def test_substitute_matches_oracle(m, i):
    free = sorted(fv(m), key=repr)
    if not free:
        return
    v = free[i % len(free)]
    n = Var(Variable("w9", v.type))
    assert substitute(m, v, n) == subst_oracle(m, v, n)


def test_beta_single_step():
    m = App(Abs(x, Var(x)), Var(z))
    assert beta_eta_normalize(m) == Var(z)


def test_eta_single_step():
    m = Abs(x, App(Var(y), Var(x)))
    assert beta_eta_normalize(m) == Var(y)


def test_nested_beta():
    # (\y. \x. y (y x)) (\z. z)  ->  \x. x
    m = App(Abs(y, Abs(x, App(Var(y), App(Var(y), Var(x))))), Abs(z, Var(z)))
    got = beta_eta_normalize(m)
    oracle = all_normal_forms(m)
    assert len(oracle) == 1
    assert got == next(iter(oracle))
    assert got == Abs(x, Var(x))


@given(term_strategy())
@settings(max_examples=80, deadline=None)
def test_subject_reduction_and_idempotence(m):
    n = beta_eta_normalize(m)
    assert n.type == m.type
    assert beta_eta_normalize(n) == n
    assert is_beta_eta_normal(n)


@given(term_strategy())
@settings(max_examples=60, deadline=None)
def test_confluence_two_strategies(m):
    if size(m) > 20:
        return
    assert beta_eta_normalize(m) == rightmost_innermost_normalize(m)


def test_fv_abs():
    assert fv(Abs(x, App(Var(y), Var(x)))) == {y}


def test_fv_var():
    assert fv(Var(x)) == {x}


def test_fv_app_union():
    assert fv(App(Var(y), App(Var(y), Var(x)))) == {y, x}


def test_fv_beta_erases():
    m = App(Abs(x, Var(z)), Var(Variable("u", p)))
    assert fv_beta(m) == {z}


def test_fv_beta_on_normal_form():
    m = App(Var(y), Var(x))
    assert fv_beta(m) == fv(m)


def test_fv_beta_identity_application():
    m = App(Abs(x, Var(x)), Var(z))
    assert fv_beta(m) == {z}


def test_fv_seq_first_occurrence_order():
    y2 = Variable("y''", pp)
    m = App(Var(y2), App(Var(y), App(Var(y), Var(x))))
    assert fv_seq(m) == (y2, y, x)


def test_fv_seq_closed():
    assert fv_seq(Abs(x, Var(x))) == ()


def test_fv_seq_duplicates_drop():
    f = Variable("f", imp(p, pp))
    m = App(App(Var(f), Var(x)), App(App(Var(f), Var(z)), Var(x)))
    assert fv_seq(m) == (f, x, z)


def test_compose_identities():
    i1 = Abs(Variable("a", p), Var(Variable("a", p)))
    got = beta_eta_normalize(compose_terms(i1, i1))
    assert got == Abs(x, Var(x))


def test_compose_no_redex_shape():
    n = Var(Variable("n", imp(q, p)))
    m = Var(Variable("m", imp(p, q)))
    c = compose_terms(n, m)
    assert isinstance(c, Abs)
    assert c.type == imp(p, p)


def test_compose_church_numerals():
    two = parse_term("\\x:p. (y:p->p (y:p->p x))")
    four = beta_eta_normalize(compose_terms(two, two))
    expected_nfs = all_normal_forms(compose_terms(two, two))
    assert expected_nfs == {four}
    assert four == parse_term("\\x:p. (y:p->p (y:p->p (y:p->p (y:p->p x))))")


@given(term_strategy(), term_strategy())
@settings(max_examples=40, deadline=None)
def test_fv_beta_of_composites(m1, m2):
    from seqlam.syntax import Imp
    if not (isinstance(m1.type, Imp) and isinstance(m2.type, Imp)):
        return
    if m2.type.consequent != m1.type.antecedent:
        return
    c = compose_terms(m1, m2)
    assert fv_beta(c) <= fv_beta(m1) | fv_beta(m2)


def test_parse_print_round_trip():
    m = parse_term("\\x:p. (y:p->p (y:p->p x))")
    assert parse_term(print_term(m), fv_seq(m)) == m


def test_parser_rejects_unknown_free_variable():
    from seqlam.syntax import ParseError
    with pytest.raises(ParseError):
        parse_term("(f x)")
