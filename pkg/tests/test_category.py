import random

import pytest

from seqlam.category import (
    STAR, UNIT, ProofMorphism, Star, TermMorphism, compose_functor_check,
    compose_proofs, compose_term_morphisms, functor_apply, identity_proof,
    open_proof, proof_identity, term_identity,
)
from seqlam.gen import gen_normal_term, prove
from seqlam.proofs import ProofError, ax, validate, weak
from seqlam.samples import church_two, church_two_well
from seqlam.syntax import Variable, atom, imp, parse_context
from seqlam.terms import (
    Abs, App, Var, beta_eta_normalize, compose_terms, fv_beta, fv_seq,
    parse_term, print_term,
)
from seqlam.translate import invert, proof_equiv, translate

p, q, r, s = atom("p"), atom("q"), atom("r"), atom("s")
pp = imp(p, p)
GAMMA = parse_context("y:p->p")


def V(name, ty):
    return Variable(name, ty)


def mor(proof, src, tgt, gamma=GAMMA):
    return ProofMorphism(gamma, src, tgt, proof)


def test_open_proof_identity():
    ident = identity_proof(p, GAMMA)
    opened = open_proof(ident, V("x9", p))
    assert validate(opened) == []
    got = beta_eta_normalize(translate(opened))
    assert got == Var(V("x9", p))


def test_open_proof_church_two():
    opened = open_proof(church_two(), V("x9", p))
    got = beta_eta_normalize(translate(opened))
    y = V("y", pp)
    assert got == App(Var(y), App(Var(y), Var(V("x9", p))))


def test_open_then_close_is_equivalent():
    two = church_two_well()
    opened = open_proof(two, V("x9", p))
    from seqlam.proofs import rimp
    closed = rimp(opened, len(GAMMA))
    assert proof_equiv(closed, two)


def test_open_proof_type_mismatch():
    with pytest.raises(ProofError):
        open_proof(church_two(), V("x9", q))


def test_identity_proof_shapes():
    empty = identity_proof(p, ())
    assert empty.rule == "rimp" and empty.children[0].rule == "ax"
    two_ctx = identity_proof(p, parse_context("a:q, b:r"))
    assert two_ctx.children[0].rule == "weak"
    assert print_term(translate(two_ctx)) == "\\x:p. x"


def test_compose_identity_laws():
    two = mor(church_two(), p, p)
    iden = proof_identity(p, GAMMA)
    assert proof_equiv(compose_proofs(two, iden).payload, two.payload)
    assert proof_equiv(compose_proofs(iden, two).payload, two.payload)


def test_compose_church_numerals_is_four():
    two = mor(church_two(), p, p)
    four = compose_proofs(two, two)
    got = beta_eta_normalize(translate(four.payload))
    assert got == parse_term("\\x:p. (y:p->p (y:p->p (y:p->p (y:p->p x))))")


def test_compose_associative_via_translation():
    two = mor(church_two(), p, p)
    left = compose_proofs(compose_proofs(two, two), two)
    right = compose_proofs(two, compose_proofs(two, two))
    assert proof_equiv(left.payload, right.payload)


def test_compose_object_mismatch():
    two = mor(church_two(), p, p)
    other = mor(identity_proof(q, GAMMA), q, q)
    with pytest.raises(ProofError):
        compose_proofs(two, other)


def test_star_cases():
    star_in = mor(STAR, p, UNIT)
    elem = mor(church_two(), UNIT, pp)   # a proof of gamma |- p->p as 1 -> (p->p)
    # N o star = \t. N
    c = compose_proofs(elem, star_in)
    assert c.source == p and c.target == pp
    # star absorbs
    c2 = compose_proofs(star_in, mor(identity_proof(p, GAMMA), p, p))
    assert isinstance(c2.payload, Star)
    # projection case
    unit_id = proof_identity(UNIT, GAMMA)
    c3 = compose_proofs(elem, unit_id)
    assert c3.payload is church_two() or proof_equiv(c3.payload, church_two())


def test_functor_on_identity():
    iden = proof_identity(p, GAMMA)
    t = functor_apply(iden)
    assert t.eq(term_identity(p, frozenset(GAMMA)))


def test_functor_star():
    star_in = mor(STAR, p, UNIT)
    assert isinstance(functor_apply(star_in).payload, Star)


def test_functor_image_in_scope():
    two = mor(church_two(), p, p)
    t = functor_apply(two)
    assert fv_beta(t.payload) <= frozenset(GAMMA)
    assert print_term(t.payload) == "\\x:p. (y (y x))"


def test_term_category_laws():
    rng = random.Random(5)
    scope = frozenset(GAMMA)
    two = parse_term("\\x:p. (y:p->p (y:p->p x))")
    m1 = TermMorphism(scope, p, p, two)
    ident = term_identity(p, scope)
    assert compose_term_morphisms(m1, ident).eq(m1)
    assert compose_term_morphisms(ident, m1).eq(m1)
    m3 = compose_term_morphisms(m1, compose_term_morphisms(m1, m1))
    m4 = compose_term_morphisms(compose_term_morphisms(m1, m1), m1)
    assert m3.eq(m4)


def test_term_star_laws():
    scope = frozenset(GAMMA) | {V("z", p)}
    elem = TermMorphism(scope, UNIT, p, parse_term("(y:p->p z:p)"))
    star = TermMorphism(scope, q, UNIT, STAR)
    lifted = compose_term_morphisms(elem, star)
    assert lifted.source == q and isinstance(lifted.payload, Abs)
    unit_unit = TermMorphism(scope, UNIT, UNIT, STAR)
    assert compose_term_morphisms(elem, unit_unit).eq(elem)


def _random_morphism_pair(rng):
    """Composable proof morphisms over a shared repetition-free context."""
    pool = (V("y", pp), V("g", imp(q, r)), V("c", q), V("d", p))
    t1 = gen_normal_term(rng, imp(q, r), pool, depth=2)
    t2 = gen_normal_term(rng, imp(p, q), pool, depth=2)
    gamma = []
    for v in fv_seq(t1) + fv_seq(t2):
        if v not in gamma:
            gamma.append(v)
    gamma = tuple(gamma)
    pr1 = invert(beta_eta_normalize(t1), gamma)
    pr2 = invert(beta_eta_normalize(t2), gamma)
    return (ProofMorphism(gamma, q, r, pr1), ProofMorphism(gamma, p, q, pr2))


def test_functor_law_random_pairs():
    checked = 0
    for seed in range(60):
        rng = random.Random(seed)
        psi, pi = _random_morphism_pair(rng)
        assert compose_functor_check(psi, pi), f"seed {seed}"
        checked += 1
    assert checked == 60


def test_functor_law_unit_cases():
    gamma = parse_context("y:p->p, z:p")
    body = prove(gamma, p)
    elem = ProofMorphism(gamma, UNIT, p, body)
    ident = ProofMorphism(gamma, p, p, identity_proof(p, gamma))
    star = ProofMorphism(gamma, p, UNIT, STAR)
    assert compose_functor_check(ident, elem)
    assert compose_functor_check(elem, star)
    assert compose_functor_check(star, ident)
    assert compose_functor_check(
        elem, ProofMorphism(gamma, UNIT, UNIT, STAR))


def test_subcategory_closure():
    rng = random.Random(11)
    psi, pi = _random_morphism_pair(rng)
    composite = compose_proofs(psi, pi)
    t = functor_apply(composite)
    assert fv_beta(t.payload) <= frozenset(composite.context)


def test_hom_set_bijection_at_desk_scale():
    # injectivity: distinct beta-eta classes stay distinct through invert;
    # surjectivity: every sampled normal term is hit by a proof
    gamma = parse_context("y:p->p")
    seen_terms = set()
    seen_proofs = []
    for seed in range(60):
        rng = random.Random(seed)
        t = gen_normal_term(rng, pp, tuple(gamma), depth=3)
        t = beta_eta_normalize(t)
        if any(v not in gamma for v in fv_seq(t)):
            continue
        proof = invert(t, gamma)
        assert translate(proof) == t
        if t in seen_terms:
            continue
        for prior_t, prior_p in seen_proofs:
            assert not proof_equiv(prior_p, proof) or prior_t == t
        seen_terms.add(t)
        seen_proofs.append((t, proof))
    assert len(seen_terms) >= 3
