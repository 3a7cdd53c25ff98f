import random

import pytest

from seqlam.ancestry import (
    Occurrence, active_contractions, all_occurrences, alpha_eq, ancestors,
    class_intro, contraction_tree, is_well_labelled, make_well_labelled,
    occurrence_variable, slack, strong_class, strong_classes, subst_strong,
    weak_classes,
)
from seqlam.gen import gen_preproof
from seqlam.proofs import ProofError, ax, ctr, rimp, validate, weak
from seqlam.samples import (
    church_two, church_two_contraction_normal, church_two_well,
)
from seqlam.syntax import Variable, atom, imp
from seqlam.translate import translate

p = atom("p")
pp = imp(p, p)


def test_ancestors_of_axiom_leaf_empty():
    proof = ax(Variable("x", p))
    assert ancestors(proof, Occurrence((), 0), strong=True) == set()
    assert ancestors(proof, Occurrence((), 0), strong=False) == set()


def test_unresolvable_occurrence():
    with pytest.raises(ProofError):
        ancestors(ax(Variable("x", p)), Occurrence((), 3), strong=True)


def test_strong_partition_of_church_two_well():
    two = church_two_well()
    classes = strong_classes(two)
    assert len(classes) == 5
    by_var = {}
    for cls in classes:
        v = occurrence_variable(two, next(iter(cls)))
        by_var.setdefault(v.name, []).append(len(cls))
    # the head hypothesis flows through three sequents, its argument copy two
    assert by_var["y"] == [3]
    assert by_var["y'"] == [2]
    assert sorted(n for name, sizes in by_var.items() if name.startswith("x")
                  for n in sizes) == [1, 1, 4]


def test_weak_merges_contracted_classes():
    two = church_two_well()
    weak_cls = weak_classes(two)
    strong_cls = strong_classes(two)
    assert len(weak_cls) < len(strong_cls)
    # y and y' merge into one weak class
    names = []
    for cls in weak_cls:
        names.append(sorted({occurrence_variable(two, o).name for o in cls}))
    assert ["y", "y'"] in names


def test_strong_refines_weak(rng):
    for seed in range(25):
        proof = gen_preproof(random.Random(seed), steps=7)
        weak_cls = weak_classes(proof)
        for cls in strong_classes(proof):
            assert any(cls <= w for w in weak_cls)


def test_strong_class_shares_one_name(rng):
    for seed in range(25):
        proof = gen_preproof(random.Random(seed), steps=7)
        for cls in strong_classes(proof):
            names = {occurrence_variable(proof, o) for o in cls}
            assert len(names) == 1


def test_subst_strong_axiom():
    proof = ax(Variable("x", p))
    renamed = subst_strong(proof, Occurrence((), 0), Variable("z", p))
    assert renamed == ax(Variable("z", p))


def test_subst_strong_same_name_identity():
    proof = church_two_well()
    same = subst_strong(proof, Occurrence((), 0), Variable("y", pp))
    assert same == proof


def test_subst_strong_type_mismatch():
    with pytest.raises(ProofError):
        subst_strong(ax(Variable("x", p)), Occurrence((), 0), Variable("z", pp))


def test_subst_strong_renames_exactly_one_class():
    two = church_two_well()
    # rename the argument-of-the-inner-application class (the x' chain)
    target = None
    for cls in strong_classes(two):
        if occurrence_variable(two, next(iter(cls))).name == "x'" :
            target = cls
    o = next(iter(target))
    renamed = subst_strong(two, o, Variable("w", occurrence_variable(two, o).type))
    assert validate(renamed) == []
    changed = {
        occ for occ in all_occurrences(two)
        if occurrence_variable(two, occ) != occurrence_variable(renamed, occ)}
    assert changed == target


def test_subst_strong_round_trips(rng):
    for seed in range(20):
        proof = gen_preproof(random.Random(seed), steps=6)
        occs = list(all_occurrences(proof))
        if not occs:
            continue
        o = occs[rng.randrange(len(occs))]
        old = occurrence_variable(proof, o)
        renamed = subst_strong(proof, o, Variable("zz'", old.type))
        back = subst_strong(renamed, o, old)
        assert back == proof


def test_well_labelled_examples():
    assert not is_well_labelled(church_two())
    assert is_well_labelled(church_two_well())
    assert is_well_labelled(ax(Variable("x", p)))


def test_make_well_labelled():
    two = church_two()
    fixed = make_well_labelled(two)
    assert is_well_labelled(fixed)
    assert fixed.conclusion == two.conclusion
    assert make_well_labelled(fixed) == fixed
    assert alpha_eq(fixed, church_two_well())
    assert translate(fixed) == translate(two)


def test_make_well_labelled_random(rng):
    for seed in range(20):
        proof = gen_preproof(random.Random(seed), steps=7)
        fixed = make_well_labelled(proof)
        assert is_well_labelled(fixed)
        assert validate(fixed) == []
        assert translate(fixed) == translate(proof)


def test_alpha_eq_reflexive_and_rename_invariant():
    two = church_two_well()
    assert alpha_eq(two, two)
    assert alpha_eq(two, church_two())  # same tree up to interior renaming


def test_contraction_tree_axiom():
    proof = ax(Variable("x", p))
    tree = contraction_tree(proof, Occurrence((), 0))
    assert tree.vertices == {Occurrence((), 0)}
    assert tree.edges == ()


def test_contraction_tree_of_church_two():
    two = church_two_well()
    tree = contraction_tree(two, Occurrence((), 0))
    assert len(tree.vertices) == 5
    labels = sorted(rule for _, _, rule in tree.edges)
    assert labels == ["ctr", "ctr", "limp", "rimp"]
    assert slack(two, Occurrence((), 0)) == 1


def test_contraction_tree_of_normalised_two():
    cn = church_two_contraction_normal()
    tree = contraction_tree(cn, Occurrence((), 0))
    assert len(tree.vertices) == 6
    assert slack(cn, Occurrence((), 0)) == 0


def test_slack_zero_on_linear_trees():
    proof = weak(ax(Variable("x", p)), 0, Variable("z", pp))
    assert slack(proof, Occurrence((), 1)) == 0
    assert slack(proof, Occurrence((), 0)) == 0


def test_active_contractions_of_church_two():
    two = church_two_well()
    assert active_contractions(two, Occurrence((), 0)) == {(0,)}
    # the hypothesis eliminated by the final right introduction has none
    assert active_contractions(two, Occurrence((0,), 1)) == set()
