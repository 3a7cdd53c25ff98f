"""Random generation of formulas, terms, and valid preproofs.

Proofs are generated upward: a pool of axioms is grown by randomly applying
rules whose side conditions hold, so everything produced is valid by
construction.  ``prove`` is a small deterministic prover used when a rewrite
step needs a synthesised branch.
"""
from __future__ import annotations

import random
from typing import Sequence

from .ancestry import Occurrence, subst_strong
from .proofs import (
    CUT, Preproof, ax, ctr, cut, ex, limp, rimp, weak,
)
from .syntax import Atom, Context, Formula, Imp, Variable, atom, imp, repetition_free
from .terms import Abs, App, Term, Var

_ATOMS = tuple(atom(n) for n in ("p", "q", "r", "s"))
_NAMES = ("x", "y", "z", "u", "v", "w", "a", "b", "c", "d")


def gen_formula(rng: random.Random, depth: int = 2) -> Formula:
    if depth <= 0 or rng.random() < 0.55:
        return rng.choice(_ATOMS)
    return imp(gen_formula(rng, depth - 1), gen_formula(rng, depth - 1))


def gen_variable(rng: random.Random, ty: Formula | None = None) -> Variable:
    ty = ty or gen_formula(rng)
    return Variable(rng.choice(_NAMES) + rng.choice(("", "'", "''", "1", "2")), ty)


# ---------------------------------------------------------------------------
# terms

def gen_term(rng: random.Random, ty: Formula | None = None,
             context: Sequence[Variable] = (), depth: int = 4) -> Term:
    """A random well-typed term of the given type over the given free context."""
    ty = ty or gen_formula(rng)
    usable = [v for v in context if v.type == ty]
    choices = []
    if usable:
        choices.append("var")
    if isinstance(ty, Imp) and depth > 0:
        choices.append("abs")
    if depth > 0:
        choices.append("app")
    if not choices:
        # mint a free variable of the right type
        fresh = Variable(f"f{rng.randrange(100)}", ty)
        return Var(fresh)
    kind = rng.choice(choices)
    if kind == "var":
        return Var(rng.choice(usable))
    if kind == "abs":
        assert isinstance(ty, Imp)
        binder = gen_variable(rng, ty.antecedent)
        body = gen_term(rng, ty.consequent, tuple(context) + (binder,), depth - 1)
        return Abs(binder, body)
    arg_ty = gen_formula(rng, 1)
    f = gen_term(rng, imp(arg_ty, ty), context, depth - 1)
    a = gen_term(rng, arg_ty, context, depth - 1)
    return App(f, a)


def gen_normal_term(rng: random.Random, ty: Formula | None = None,
                    context: Sequence[Variable] = (), depth: int = 4,
                    allow_eta: bool = False) -> Term:
    """A random beta-normal term; eta-normal too unless ``allow_eta``."""
    ty = ty or gen_formula(rng)
    if allow_eta and isinstance(ty, Imp) and depth > 0 and rng.random() < 0.3:
        # an explicit eta-redex: \x. (N x) with x not free in N
        binder = gen_variable(rng, ty.antecedent)
        fun = _gen_spine(rng, ty, context, depth - 1, allow_eta)
        from .terms import fv
        if binder not in fv(fun):
            return Abs(binder, App(fun, Var(binder)))
    if isinstance(ty, Imp) and (depth <= 0 or rng.random() < 0.5):
        binder = gen_variable(rng, ty.antecedent)
        while any(v.name == binder.name for v in context):
            binder = Variable(binder.name + "'", binder.type)
        body = gen_normal_term(rng, ty.consequent, tuple(context) + (binder,),
                               depth - 1, allow_eta)
        term = Abs(binder, body)
        if not allow_eta:
            from .terms import has_eta_redex
            if has_eta_redex(term):
                # retry with a head spine instead
                return _gen_spine(rng, ty, context, depth, allow_eta)
        return term
    return _gen_spine(rng, ty, context, depth, allow_eta)


def _gen_spine(rng: random.Random, ty: Formula, context: Sequence[Variable],
               depth: int, allow_eta: bool) -> Term:
    """A head variable applied to enough normal arguments to land on ``ty``."""
    heads = []
    for v in context:
        args = []
        t = v.type
        while True:
            if t == ty:
                heads.append((v, tuple(args)))
            if not isinstance(t, Imp):
                break
            args.append(t.antecedent)
            t = t.consequent
    if depth <= 0:
        # no budget for arguments: an exact-type head or a fresh variable
        bare = [(v, a) for v, a in heads if not a]
        if bare:
            return Var(rng.choice(bare)[0])
        return Var(Variable(f"h{rng.randrange(1000)}", ty))
    if not heads:
        # mint a head of exactly the needed type, possibly higher order
        n_args = rng.randrange(0, 3) if depth > 0 else 0
        arg_tys = [gen_formula(rng, 1) for _ in range(n_args)]
        head_ty: Formula = ty
        for a in reversed(arg_tys):
            head_ty = imp(a, head_ty)
        head = Variable(f"h{rng.randrange(1000)}", head_ty)
        term: Term = Var(head)
        for a in arg_tys:
            term = App(term, gen_normal_term(rng, a, context, depth - 1, allow_eta))
        return term
    head, arg_tys = rng.choice(heads)
    term = Var(head)
    for a in arg_tys:
        term = App(term, gen_normal_term(rng, a, context, depth - 1, allow_eta))
    return term


# ---------------------------------------------------------------------------
# proofs

def gen_preproof(rng: random.Random, steps: int = 8, allow_cut: bool = True,
                 pool_seed: int = 3) -> Preproof:
    """Grow a random valid preproof by applying random rules to a pool."""
    pool: list[Preproof] = []
    for _ in range(pool_seed):
        pool.append(ax(gen_variable(rng, gen_formula(rng, 1))))
    for _ in range(steps):
        kind = rng.choice(
            ("ctr", "weak", "ex", "rimp", "limp", "limp", "cut" if allow_cut else "weak"))
        p = rng.choice(pool)
        ant = p.conclusion.antecedent
        try:
            if kind == "ctr":
                pairs = [i for i in range(len(ant) - 1) if ant[i].type == ant[i + 1].type]
                if not pairs:
                    continue
                pool.append(ctr(p, rng.choice(pairs)))
            elif kind == "weak":
                i = rng.randrange(len(ant) + 1)
                pool.append(weak(p, i, gen_variable(rng)))
            elif kind == "ex":
                if len(ant) < 2:
                    continue
                pool.append(ex(p, rng.randrange(len(ant) - 1)))
            elif kind == "rimp":
                if not ant:
                    continue
                pool.append(rimp(p, rng.randrange(len(ant))))
            elif kind == "limp":
                q = rng.choice(pool)
                qant = q.conclusion.antecedent
                if not qant:
                    continue
                i = rng.randrange(len(qant))
                y = gen_variable(rng, imp(p.conclusion.succedent, qant[i].type))
                pool.append(limp(p, q, i, y))
            elif kind == "cut":
                q = rng.choice(pool)
                qant = q.conclusion.antecedent
                spots = [i for i in range(len(qant)) if qant[i].type == p.conclusion.succedent]
                if not spots:
                    continue
                pool.append(cut(p, q, rng.choice(spots)))
        except Exception:
            continue
    return pool[-1]


def fix_repetitions(p: Preproof) -> Preproof:
    """Rename boundary chains apart until the final antecedent is repetition-free."""
    guard = 0
    while not repetition_free(p.conclusion.antecedent):
        guard += 1
        if guard > 200:
            raise RuntimeError("could not resolve repetitions")
        ant = p.conclusion.antecedent
        seen: set[Variable] = set()
        for i, v in enumerate(ant):
            if v in seen:
                taken = {u.name for _, n in p for u in n.conclusion.antecedent}
                fresh = v
                while fresh.name in taken:
                    fresh = Variable(fresh.name + "'", fresh.type)
                p = subst_strong(p, Occurrence((), i), fresh)
                break
            seen.add(v)
    return p


def gen_preproof_repfree(rng: random.Random, steps: int = 8,
                         allow_cut: bool = True) -> Preproof:
    return fix_repetitions(gen_preproof(rng, steps, allow_cut))


def gen_proof_of(rng: random.Random, context: Context, succedent: Formula,
                 fuel: int = 6) -> Preproof | None:
    """A random proof of ``context |- succedent`` if one is found."""
    if fuel <= 0:
        return prove(context, succedent)
    moves = ["direct"]
    if isinstance(succedent, Imp):
        moves.append("rimp")
    if len(context) >= 2:
        moves.append("ex")
    if context:
        moves.append("weak")
    rng.shuffle(moves)
    for mv in moves:
        if mv == "rimp" and rng.random() < 0.5:
            i = rng.randrange(len(context) + 1)
            x = _unused_var(context, succedent.antecedent)
            sub = gen_proof_of(rng, context[:i] + (x,) + context[i:],
                               succedent.consequent, fuel - 1)
            if sub is not None:
                return rimp(sub, i)
        if mv == "ex" and rng.random() < 0.35:
            i = rng.randrange(len(context) - 1)
            swapped = context[:i] + (context[i + 1], context[i]) + context[i + 2:]
            sub = gen_proof_of(rng, swapped, succedent, fuel - 1)
            if sub is not None:
                return ex(sub, i)
        if mv == "weak" and rng.random() < 0.3:
            i = rng.randrange(len(context))
            sub = gen_proof_of(rng, context[:i] + context[i + 1:], succedent, fuel - 1)
            if sub is not None:
                return weak(sub, i, context[i])
    return prove(context, succedent)


def _unused_var(context: Context, ty: Formula) -> Variable:
    names = {v.name for v in context}
    base = "x"
    while base in names:
        base += "'"
    return Variable(base, ty)


def prove(context: Context, succedent: Formula) -> Preproof | None:
    """Deterministic proof search: the variable route, then right introduction.

    Good enough for synthesising erased branches; returns None when neither
    route lands.
    """
    for i, v in enumerate(context):
        if v.type == succedent:
            p = ax(v)
            for j, u in enumerate(context):
                if j != i:
                    p = weak(p, j, u)
            return p
    if isinstance(succedent, Imp):
        x = _unused_var(context, succedent.antecedent)
        sub = prove(context + (x,), succedent.consequent)
        if sub is not None:
            return rimp(sub, len(context))
    return None


def gen_composable_terms(rng: random.Random, gamma: Context,
                         ) -> tuple[Term, Term, Formula, Formula, Formula]:
    """Normal terms over gamma of types q->r and p->q, plus the three types."""
    p, q, r = (gen_formula(rng, 1) for _ in range(3))
    t1 = gen_normal_term(rng, imp(q, r), gamma, depth=3)
    t2 = gen_normal_term(rng, imp(p, q), gamma, depth=3)
    return t1, t2, p, q, r
