import random

import pytest

from seqlam import io
from seqlam.gen import gen_preproof
from seqlam.proofs import (
    ProofError, Violation, ax, ctr, cut, ex, height, is_strict, limp,
    raw_node, rebuild, rimp, validate, weak,
)
from seqlam.samples import church_two, church_two_well, word_001
from seqlam.syntax import Sequent, Variable, atom, imp, parse_sequent

from oracles import height_oracle

p, q = atom("p"), atom("q")
x = Variable("x", p)


def test_axiom_validates():
    assert validate(ax(x)) == []


def test_axiom_conclusion_mismatch_rejected():
    bad = raw_node("ax", (x,), (), parse_sequent("x:p |- q"))
    out = validate(bad)
    assert out and out[0].address == ()


def test_church_two_validates():
    assert validate(church_two()) == []
    assert validate(church_two_well()) == []
    assert validate(word_001()) == []


def test_leaf_must_be_axiom():
    bad = raw_node("weak", (0, x), (), parse_sequent("x:p |- p"))
    assert any("leaf" in v.message for v in validate(bad))


def test_height_axiom():
    assert height(ax(x)) == 0


def test_height_one_weakening():
    assert height(weak(ax(x), 0, Variable("z", q))) == 1


def test_height_church_two():
    two = church_two()
    assert height_oracle(two) == 4
    assert height(two) == 4


def test_constructors_reject_bad_indices():
    with pytest.raises(ProofError):
        ctr(ax(x), 0)  # nothing to contract with
    with pytest.raises(ProofError):
        ex(ax(x), 0)
    with pytest.raises(ProofError):
        rimp(ax(x), 1)
    with pytest.raises(ProofError):
        cut(ax(x), ax(Variable("z", q)), 0)  # type mismatch
    with pytest.raises(ProofError):
        limp(ax(x), ax(x), 0, Variable("y", p))  # wrong introduced type


def test_ctr_needs_equal_types():
    two_types = weak(ax(x), 1, Variable("z", q))
    with pytest.raises(ProofError):
        ctr(two_types, 0)


def _raw_replace(proof, path, new):
    if not path:
        return new
    kids = list(proof.children)
    kids[path[0]] = _raw_replace(kids[path[0]], path[1:], new)
    return raw_node(proof.rule, proof.params, tuple(kids), proof.conclusion)


def test_mutations_rejected(rng):
    for seed in range(30):
        r = random.Random(seed)
        proof = gen_preproof(r, steps=6)
        nodes = list(proof)
        path, node = nodes[r.randrange(len(nodes))]
        # twiddle an index parameter out of range, or an axiom's succedent
        if node.rule == "ax":
            mutant = raw_node("ax", node.params, (),
                              Sequent(node.conclusion.antecedent, atom("zzz")))
        else:
            bad_params = (999,) + node.params[1:]
            mutant = raw_node(node.rule, bad_params, node.children, node.conclusion)
        whole = _raw_replace(proof, path, mutant)
        assert validate(whole), f"mutation at {path} of seed {seed} not caught"


def test_strictness_predicate():
    assert is_strict(ax(x))
    two = church_two()
    assert not is_strict(two)  # the final right introduction works at index 1


def test_sexp_round_trip_bit_exact():
    for proof in (church_two(), church_two_well(), word_001()):
        text = io.proof_to_text(proof)
        again = io.proof_from_text(text)
        assert again == proof
        assert io.proof_to_text(again) == text


def test_sexp_round_trip_random():
    for seed in range(40):
        proof = gen_preproof(random.Random(seed), steps=8)
        assert io.proof_from_text(io.proof_to_text(proof)) == proof


def test_json_round_trip():
    for proof in (church_two(), word_001()):
        blob = io.proof_to_json(proof)
        assert io.proof_from_json(blob) == proof


def test_deserialisation_checks_conclusions():
    text = io.proof_to_text(church_two())
    # corrupt the final succedent
    broken = text.replace("(seq ((y (-> p p))) (-> p p))",
                          "(seq ((y (-> p p))) p)", 1)
    with pytest.raises(ProofError):
        io.proof_from_text(broken)
