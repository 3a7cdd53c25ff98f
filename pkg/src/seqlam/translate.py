"""The annotating translation from preproofs to lambda terms.

Each rule annotates its conclusion's succedent with a term built from the
premises: axioms give variables, cuts and left introductions substitute,
contraction renames, weakening and exchange do nothing, right introduction
abstracts.  The input is relabelled first so that interior chains cannot
capture each other.
"""
from __future__ import annotations

from dataclasses import dataclass

from .ancestry import is_well_labelled, make_well_labelled
from .proofs import (
    AX, CTR, CUT, EX, LIMP, RIMP, WEAK, Preproof, ProofError, ex, validate, weak,
)
from .syntax import Context, Sequent, Variable, context_set, repetition_free
from .terms import Abs, App, Term, Var, beta_eta_normalize, fv, fv_seq, substitute


@dataclass(frozen=True, slots=True)
class AnnotatedPreproof:
    proof: Preproof            # the well-labelled preproof that was annotated
    term: Term                 # annotation at the root succedent
    children: tuple["AnnotatedPreproof", ...]

    @property
    def conclusion(self) -> Sequent:
        return self.proof.conclusion


def _annotate(p: Preproof) -> AnnotatedPreproof:
    kids = tuple(_annotate(c) for c in p.children)
    rule = p.rule
    if rule == AX:
        term: Term = Var(p.params[0])
    elif rule == CUT:
        i = p.params[0]
        x = p.children[1].conclusion.antecedent[i]
        term = substitute(kids[1].term, x, kids[0].term)
    elif rule == CTR:
        i = p.params[0]
        ant = p.children[0].conclusion.antecedent
        term = substitute(kids[0].term, ant[i + 1], Var(ant[i]))
    elif rule in (WEAK, EX):
        term = kids[0].term
    elif rule == RIMP:
        i = p.params[0]
        x = p.children[0].conclusion.antecedent[i]
        term = Abs(x, kids[0].term)
    elif rule == LIMP:
        i, y = p.params
        x = p.children[1].conclusion.antecedent[i]
        term = substitute(kids[1].term, x, App(Var(y), kids[0].term))
    else:
        raise ProofError(f"unknown rule {rule}")
    return AnnotatedPreproof(p, term, kids)


def annotate(p: Preproof) -> AnnotatedPreproof:
    """Well-label ``p`` and annotate every node with its term."""
    bad = validate(p)
    if bad:
        raise ProofError(f"cannot translate an invalid preproof: {bad[0]}")
    if not is_well_labelled(p):
        p = make_well_labelled(p)
    return _annotate(p)


def translate(p: Preproof) -> Term:
    """The lambda term of a valid preproof; type is the succedent formula."""
    a = annotate(p)
    assert a.term.type == p.conclusion.succedent
    assert fv(a.term) <= context_set(p.conclusion.antecedent)
    return a.term


class RepetitionError(ProofError):
    """The operation needs a repetition-free antecedent to be meaningful."""


def require_repetition_free(ctx, what: str) -> None:
    if not repetition_free(ctx):
        seen = set()
        dup = next(v for v in ctx if v in seen or seen.add(v))
        raise RepetitionError(
            f"{what} needs a repetition-free context, but {dup!r} occurs twice; "
            "the proof/term correspondence is not injective over repeated hypotheses")


def proof_equiv(p1: Preproof, p2: Preproof) -> bool:
    """Decide proof equivalence by comparing beta-eta-normal translations."""
    if p1.conclusion != p2.conclusion:
        raise ProofError(
            f"proofs conclude different sequents: "
            f"{p1.conclusion!r} vs {p2.conclusion!r}")
    require_repetition_free(p1.conclusion.antecedent, "equivalence checking")
    t1 = beta_eta_normalize(translate(p1))
    t2 = beta_eta_normalize(translate(p2))
    return t1 == t2


# ---------------------------------------------------------------------------
# the inverse map on beta-eta-normal terms

def invert(m: Term, context: Context) -> Preproof:
    """The normal preproof of ``context |- type(m)`` translating exactly to ``m``.

    The core is built by structural recursion (axioms for variables, right
    introduction for abstractions, an application normal form with freshly
    renamed repeated arguments contracted back together), then the ladders
    and weakenings determined by ``(FV_seq(m), context)`` are appended.
    """
    from .terms import is_beta_eta_normal
    if not is_beta_eta_normal(m):
        raise ProofError("invert is defined on beta-eta-normal terms only")
    require_repetition_free(context, "inversion")
    free = fv(m)
    missing = free - context_set(context)
    if missing:
        raise ProofError(f"free variables outside the context: {sorted(map(repr, missing))}")
    used = set(context) | free | {v for v in _all_vars(m)}
    core = _g(m, used)
    delta = list(fv_seq(m))
    proof = core
    # ladders: reorder the core context into the order induced by `context`
    target = [v for v in context if v in free]
    cur = list(delta)
    for t, want in enumerate(target):
        j = cur.index(want)
        if j > t:
            for pos in range(j - 1, t - 1, -1):
                proof = ex(proof, pos)
            cur.insert(t, cur.pop(j))
    # weakenings: insert the unused hypotheses at increasing positions
    for d, v in enumerate(context):
        if v not in free:
            proof = weak(proof, d, v)
    assert proof.conclusion == Sequent(tuple(context), m.type)
    return proof


def _all_vars(m: Term):
    from .terms import Abs as _Abs, App as _App, Var as _Var
    match m:
        case _Var(v):
            yield v
        case _App(fun=f, arg=a):
            yield from _all_vars(f)
            yield from _all_vars(a)
        case _Abs(binder=b, body=n):
            yield b
            yield from _all_vars(n)


def _unwind_spine(m: Term) -> tuple[Variable, list[Term]]:
    from .terms import App as _App, Var as _Var
    args: list[Term] = []
    while isinstance(m, _App):
        args.append(m.arg)
        m = m.fun
    if not isinstance(m, _Var):
        raise ProofError("application head is not a variable; term is not beta-normal")
    args.reverse()
    return m.var, args


def _g(m: Term, used: set[Variable]) -> Preproof:
    """Well-structured core proving ``FV_seq(m) |- m`` exactly."""
    from .terms import Abs as _Abs, App as _App, Var as _Var, rename_free
    from .syntax import Imp, fresh_variable
    from .proofs import ax as _ax, ctr as _ctr, ex as _ex, limp as _limp, rimp as _rimp, weak as _weak

    if isinstance(m, _Var):
        return _ax(m.var)

    if isinstance(m, _Abs):
        body_core = _g(m.body, used)
        seq = fv_seq(m.body)
        if m.binder in seq:
            return _rimp(body_core, seq.index(m.binder))
        return _rimp(_weak(body_core, 0, m.binder), 0)

    head, args = _unwind_spine(m)
    # rename repeated free variables: later occurrences in the flattened
    # sequence become canonical-series heads contracted back at the bottom
    seen: set[Variable] = {head}
    renames: list[dict[Variable, Variable]] = []
    sequence: list[Variable] = [head]
    origin: dict[Variable, Variable] = {}
    for arg in args:
        table: dict[Variable, Variable] = {}
        for v in fv_seq(arg):
            if v in seen:
                nv = fresh_variable(v.type, used)
                used.add(nv)
                table[v] = nv
                origin[nv] = v
                sequence.append(nv)
            else:
                seen.add(v)
                sequence.append(v)
        renames.append(table)
    renamed = [rename_free(a, t) if t else a for a, t in zip(args, renames)]

    # innermost pattern: the last argument against an axiom
    zeta = _g(renamed[-1], used)
    result_ty = m.type
    pivot = fresh_variable(result_ty, used)
    used.add(pivot)
    if len(args) == 1:
        intro = head
    else:
        intro = fresh_variable(Imp(renamed[-1].type, result_ty), used)
        used.add(intro)
    spine = _limp(zeta, _ax(pivot), 0, intro)
    # remaining arguments from the inside out
    for k, arg in enumerate(reversed(renamed[:-1])):
        tau = _g(arg, used)
        last = k == len(args) - 2
        if last:
            nxt = head
        else:
            nxt = fresh_variable(Imp(arg.type, intro.type), used)
            used.add(nxt)
        spine = _limp(tau, spine, 0, nxt)
        intro = nxt
    assert intro == head

    # contract the canonical heads back into their first occurrences
    cur = list(sequence)
    pending = set(origin)
    proof = spine
    while pending:
        best = None
        for pos, v in enumerate(cur):
            if v in pending:
                tail = cur.index(origin[v])
                cand = (tail, pos, v)
                if best is None or cand < best:
                    best = cand
        tail, pos, v = best
        for q in range(pos - 1, tail, -1):
            proof = _ex(proof, q)
        proof = _ctr(proof, tail)
        cur.pop(pos)
        pending.discard(v)
    return proof
