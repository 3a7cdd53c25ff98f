import random

import pytest

from seqlam.ancestry import alpha_eq, make_well_labelled
from seqlam.gen import gen_normal_term, gen_preproof, gen_preproof_repfree, prove
from seqlam.normalize import is_well_structured, strip_trailing, to_normal
from seqlam.proofs import ProofError, ax, ctr, ex, limp, rimp, validate, weak
from seqlam.samples import (
    church_two, church_two_well, word_001, word_001_repeated,
)
from seqlam.syntax import Variable, atom, imp, parse_context
from seqlam.terms import (
    Var, beta_eta_normalize, fv, fv_seq, parse_term, print_term,
)
from seqlam.translate import (
    RepetitionError, annotate, invert, proof_equiv, translate,
)

p, q, r, s = atom("p"), atom("q"), atom("r"), atom("s")
pp = imp(p, p)


def V(name, ty):
    return Variable(name, ty)


def test_translate_church_two():
    m = translate(church_two())
    assert m == parse_term("\\x:p. (y:p->p (y:p->p x))")
    assert print_term(m) == "\\x:p. (y (y x))"


def test_translate_word_001():
    m = translate(word_001())
    ctx = parse_context("y'':p->p, y:p->p, x:p")
    assert m == parse_term("(y'' (y (y x)))", ctx)


def test_translate_axiom():
    assert translate(ax(V("x", p))) == Var(V("x", p))


def test_annotations_follow_the_rules():
    two = church_two_well()
    ann = annotate(two)
    # the contraction node's annotation merges the two head variables
    ctr_node = ann.children[0]
    assert print_term(ctr_node.term, rename=False) == "(y (y x))"
    inner = ctr_node.children[0]
    assert print_term(inner.term, rename=False) == "(y (y' x))"


def test_translate_weakening_and_exchange_silent():
    base = prove((V("a", q), V("z", s)), s)
    assert translate(base) == Var(V("z", s))
    assert translate(ex(base, 0)) == Var(V("z", s))


def test_translate_invalid_proof_rejected():
    from seqlam.proofs import raw_node
    from seqlam.syntax import parse_sequent
    bad = raw_node("ax", (V("x", p),), (), parse_sequent("x:p |- q"))
    with pytest.raises(ProofError):
        translate(bad)


# ---------------------------------------------------------------------------
# inversion

def test_invert_church_two():
    m = parse_term("\\x:p. (y:p->p (y:p->p x))")
    proof = invert(m, parse_context("y:p->p"))
    assert alpha_eq(proof, church_two_well())
    assert translate(proof) == m


def test_invert_variable_with_weakening():
    ctx = parse_context("a:q, z:s")
    proof = invert(Var(V("z", s)), ctx)
    assert proof.conclusion.antecedent == ctx
    assert proof.children[0] == ax(V("z", s))
    assert proof.rule == "weak" and proof.params[0] == 0


def test_invert_identity_empty_context():
    proof = invert(parse_term("\\x:p. x"), ())
    assert proof == rimp(ax(V("x", p)), 0)


def test_invert_requires_normal_terms():
    redex = parse_term("(\\x:p. x) z:p")
    with pytest.raises(ProofError):
        invert(redex, parse_context("z:p"))
    eta = parse_term("\\x:p. (f:p->q x)")
    with pytest.raises(ProofError):
        invert(eta, parse_context("f:p->q"))


def test_invert_rejects_escaping_variables():
    with pytest.raises(ProofError):
        invert(Var(V("z", s)), parse_context("a:q"))


def test_invert_rejects_repeated_context():
    with pytest.raises(RepetitionError):
        invert(Var(V("z", s)), (V("z", s), V("z", s)))


def test_invert_round_trip_exact():
    for seed in range(200):
        rng = random.Random(seed)
        m = gen_normal_term(rng, depth=3)
        proof = invert(m, fv_seq(m))
        assert validate(proof) == []
        assert translate(proof) == m
        core, lads, weaks = strip_trailing(proof)
        assert is_well_structured(core).ok, f"seed {seed}"


def test_invert_with_ladders_and_weakenings():
    m = parse_term("(g:q->s->r b:q)", parse_context("g:q->s->r, b:q"))
    # context in a different order with extra unused hypotheses
    ctx = parse_context("u:p, b:q, g:q->s->r, w:s")
    proof = invert(m, ctx)
    assert proof.conclusion.antecedent == ctx
    assert translate(proof) == m
    core, lads, weaks = strip_trailing(proof)
    assert [w for w, _ in weaks] == [0, 3]
    assert len(lads) == 1 and lads[0].tail == 0


def test_commuting_square_random():
    for seed in range(150):
        proof = gen_preproof_repfree(random.Random(seed), steps=7)
        gamma = proof.conclusion.antecedent
        n1 = invert(beta_eta_normalize(translate(proof)), gamma)
        n2 = to_normal(proof)
        assert alpha_eq(n1, n2)


# ---------------------------------------------------------------------------
# the decision procedure

def test_proof_equiv_church_two_and_normal():
    assert proof_equiv(church_two(), to_normal(church_two()))


def test_proof_equiv_reflexive():
    two = church_two()
    assert proof_equiv(two, two)


def test_proof_equiv_distinguishes_weakening_order():
    # two proofs of z:s, z':s |- s differing in which hypothesis is real
    z, z2 = V("z", s), V("z'", s)
    left = weak(ax(z), 1, z2)    # z real, z' weakened in
    right = weak(ax(z2), 0, z)   # z' real, z weakened in
    assert left.conclusion == right.conclusion
    assert not proof_equiv(left, right)


def test_proof_equiv_requires_same_sequent():
    with pytest.raises(ProofError):
        proof_equiv(ax(V("x", p)), ax(V("z", p)))


def test_proof_equiv_refuses_repeated_context():
    with pytest.raises(RepetitionError):
        proof_equiv(word_001_repeated(), word_001_repeated())


def test_translation_constant_under_equivalence_rules():
    # well-labelling and alpha renaming leave the term fixed
    two = church_two()
    assert translate(make_well_labelled(two)) == translate(two)


def test_var_occurs_in_l_normal_arguments():
    # in any normal application the consumed hypothesis is used by the branch
    from seqlam.normalize import is_l_normal
    for seed in range(60):
        rng = random.Random(seed)
        m = gen_normal_term(rng, depth=3)
        proof = invert(m, fv_seq(m))
        for path, node in proof:
            if node.rule != "limp":
                continue
            i = node.params[0]
            consumed = node.children[1].conclusion.antecedent[i]
            assert consumed in fv(translate(node.children[1]))


def test_context_coverage_of_well_structured_cores():
    for seed in range(60):
        rng = random.Random(seed)
        m = gen_normal_term(rng, depth=3)
        proof = invert(m, fv_seq(m))
        core, _, _ = strip_trailing(proof)
        assert set(core.conclusion.antecedent) == set(fv(translate(core)))
