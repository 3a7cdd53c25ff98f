"""The category of proofs over a fixed hypothesis context, the category of
lambda terms, and the translation functor between them.

Morphisms are stored as representatives; equality of proof morphisms is
decided through the translation, equality of term morphisms up to beta-eta.
The unit object ``1`` has singleton hom-sets into it, written ``star``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .proofs import Preproof, ProofError, ax, cut, limp, rimp, weak
from .rewrite import collect_variables, ex_run, merge_blocks, move_right_positions
from .syntax import Context, Formula, Imp, Variable, fresh_variable, imp
from .terms import (
    Abs, App, Term, TermTypeError, Var, beta_eta_normalize, compose_terms, fv_beta,
)
from .translate import translate


class Unit:
    """The unit object."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "1"


UNIT = Unit()
Object = Union[Formula, Unit]


class Star:
    """The unique morphism into the unit object."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "*"


STAR = Star()


@dataclass(frozen=True)
class ProofMorphism:
    context: Context
    source: Object
    target: Object
    payload: Preproof | Star

    def __post_init__(self):
        if isinstance(self.target, Unit):
            if not isinstance(self.payload, Star):
                raise ProofError("morphisms into the unit are the star")
            return
        if not isinstance(self.payload, Preproof):
            raise ProofError("expected a proof payload")
        want: Formula
        if isinstance(self.source, Unit):
            want = self.target
        else:
            want = imp(self.source, self.target)
        got = self.payload.conclusion
        if got.succedent != want or got.antecedent != self.context:
            raise ProofError(
                f"payload proves {got!r}, expected the context and {want!r}")


@dataclass(frozen=True)
class TermMorphism:
    scope: frozenset[Variable]
    source: Object
    target: Object
    payload: Term | Star

    def __post_init__(self):
        if isinstance(self.target, Unit):
            if not isinstance(self.payload, Star):
                raise ProofError("morphisms into the unit are the star")
            return
        if not isinstance(self.payload, Term):
            raise ProofError("expected a term payload")
        want: Formula
        if isinstance(self.source, Unit):
            want = self.target
        else:
            want = imp(self.source, self.target)
        if self.payload.type != want:
            raise TermTypeError(f"payload has type {self.payload.type!r}, wanted {want!r}")
        if not (fv_beta(self.payload) <= self.scope):
            raise ProofError("payload uses variables outside the scope")

    def eq(self, other: "TermMorphism") -> bool:
        if isinstance(self.payload, Star) or isinstance(other.payload, Star):
            return isinstance(self.payload, Star) and isinstance(other.payload, Star)
        return beta_eta_normalize(self.payload) == beta_eta_normalize(other.payload)


# ---------------------------------------------------------------------------
# constructions on proofs

def open_proof(p: Preproof, x: Variable) -> Preproof:
    """From a proof of ``G |- a -> b`` to a proof of ``G, x:a |- b``."""
    succ = p.conclusion.succedent
    if not isinstance(succ, Imp) or succ.antecedent != x.type:
        raise ProofError(f"cannot open {succ!r} at {x!r}")
    used = collect_variables(p) | {x}
    w = fresh_variable(succ.consequent, used)
    z = fresh_variable(succ, used | {w})
    inner = limp(ax(x), ax(w), 0, z)
    return cut(p, inner, 0)


def identity_proof(f: Formula, context: Context = ()) -> Preproof:
    """The weakened axiom proof of ``context |- f -> f``."""
    x = fresh_variable(f, context)
    p = ax(x)
    for k, v in enumerate(context):
        p = weak(p, k, v)
    return rimp(p, len(context))


def compose_proofs(psi: ProofMorphism, pi: ProofMorphism) -> ProofMorphism:
    """Composition in the proof category; cut plus the context merge."""
    if psi.context != pi.context:
        raise ProofError("morphisms live over different contexts")
    if psi.source is not pi.target and psi.source != pi.target:
        raise ProofError(f"cannot compose {psi.source!r} <- {pi.target!r}")
    gamma = psi.context
    g = len(gamma)

    # cases through the unit object
    if isinstance(psi.target, Unit):
        return ProofMorphism(gamma, pi.source, UNIT, STAR)
    if isinstance(pi.source, Unit) and isinstance(pi.target, Unit):
        return ProofMorphism(gamma, UNIT, psi.target, psi.payload)
    if isinstance(psi.source, Unit) and not isinstance(pi.source, Unit):
        # psi : 1 -> q composed with the star p -> 1
        assert isinstance(psi.payload, Preproof)
        x = fresh_variable(pi.source, collect_variables(psi.payload) | set(gamma))
        body = weak(psi.payload, g, x)
        return ProofMorphism(gamma, pi.source, psi.target, rimp(body, g))
    assert isinstance(psi.payload, Preproof) and isinstance(pi.payload, Preproof)

    if isinstance(pi.source, Unit):
        # pi : 1 -> p, psi : p -> q
        used = collect_variables(psi.payload) | collect_variables(pi.payload) | set(gamma)
        x = fresh_variable(pi.target, used)
        opened = open_proof(psi.payload, x)
        body = cut(pi.payload, opened, g)
        merged = merge_blocks(body, 0, g) if g else body
        return ProofMorphism(gamma, UNIT, psi.target, merged)

    used = collect_variables(psi.payload) | collect_variables(pi.payload) | set(gamma)
    x = fresh_variable(pi.source, used)
    y = fresh_variable(psi.source, used | {x})
    pix = open_proof(pi.payload, x)      # gamma, x:p |- q
    psiy = open_proof(psi.payload, y)    # gamma, y:q |- r
    body = cut(pix, psiy, g)             # gamma, x:p, gamma |- r
    # park x after the second context copy, then contract the copies
    body = ex_run(body, move_right_positions(g, 2 * g))
    body = merge_blocks(body, 0, g) if g else body
    body = rimp(body, g)
    return ProofMorphism(gamma, pi.source, psi.target, body)


def proof_identity(obj: Object, context: Context) -> ProofMorphism:
    if isinstance(obj, Unit):
        return ProofMorphism(context, UNIT, UNIT, STAR)
    return ProofMorphism(context, obj, obj, identity_proof(obj, context))


# ---------------------------------------------------------------------------
# the term category

def compose_term_morphisms(n: TermMorphism, m: TermMorphism) -> TermMorphism:
    if n.source is not m.target and n.source != m.target:
        raise ProofError(f"cannot compose {n.source!r} <- {m.target!r}")
    scope = n.scope | m.scope
    if isinstance(n.target, Unit):
        return TermMorphism(scope, m.source, UNIT, STAR)
    if isinstance(m.source, Unit) and isinstance(m.target, Unit):
        return TermMorphism(scope, UNIT, n.target, n.payload)
    if isinstance(n.source, Unit):
        # n : 1 -> rho after star : sigma -> 1
        assert isinstance(n.payload, Term)
        t = fresh_variable(m.source, set())
        from .terms import all_var_names
        while t.name in all_var_names(n.payload):
            t = Variable(t.name + "'", t.type)
        return TermMorphism(scope, m.source, n.target, Abs(t, n.payload))
    assert isinstance(n.payload, Term) and isinstance(m.payload, Term)
    if isinstance(m.source, Unit):
        return TermMorphism(scope, UNIT, n.target, App(n.payload, m.payload))
    return TermMorphism(scope, m.source, n.target, compose_terms(n.payload, m.payload))


def term_identity(obj: Object, scope: frozenset[Variable]) -> TermMorphism:
    if isinstance(obj, Unit):
        return TermMorphism(scope, UNIT, UNIT, STAR)
    x = Variable("x", obj)
    return TermMorphism(scope, obj, obj, Abs(x, Var(x)))


# ---------------------------------------------------------------------------
# the functor

def functor_apply(m: ProofMorphism) -> TermMorphism:
    """Identity on objects, translation on payloads, star to star."""
    scope = frozenset(m.context)
    if isinstance(m.payload, Star):
        return TermMorphism(scope, m.source, m.target, STAR)
    return TermMorphism(scope, m.source, m.target, translate(m.payload))


def compose_functor_check(psi: ProofMorphism, pi: ProofMorphism) -> bool:
    """Does translation commute with composition on this pair?"""
    lhs = functor_apply(compose_proofs(psi, pi))
    rhs = compose_term_morphisms(functor_apply(psi), functor_apply(pi))
    return lhs.eq(rhs)
