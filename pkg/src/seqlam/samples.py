"""Known example proofs used throughout the tests and CLI demos.

The Church numeral two here is the left-nested concrete tree: the second left
introduction has the earlier subtree as its *left* premise, which is the
reading consistent with its contraction tree, slack, and height.  Its
translation is ``\\x:p. (y (y x))``.
"""
from __future__ import annotations

from .proofs import Preproof, ax, ctr, ex, limp, rimp, weak
from .syntax import Variable, atom, imp

P = atom("p")
PP = imp(P, P)


def church_two() -> Preproof:
    """Church numeral 2 with all axiom leaves named x (not well-labelled)."""
    x = Variable("x", P)
    y, y1 = Variable("y", PP), Variable("y'", PP)
    inner = limp(ax(x), ax(x), 0, y1)        # y':p->p, x:p |- p
    outer = limp(inner, ax(x), 0, y)         # y, y', x |- p
    return rimp(ctr(outer, 0), 1)            # y:p->p |- p -> p


def church_two_well() -> Preproof:
    """A well-labelled relabelling of the Church numeral 2."""
    x, x1, x2 = Variable("x", P), Variable("x'", P), Variable("x''", P)
    y, y1 = Variable("y", PP), Variable("y'", PP)
    inner = limp(ax(x), ax(x2), 0, y1)       # y':p->p, x:p |- (y' x)
    outer = limp(inner, ax(x1), 0, y)        # y, y', x |- (y (y' x))
    return rimp(ctr(outer, 0), 1)            # y |- \x. (y (y x))


def church_two_contraction_normal() -> Preproof:
    """The contraction normal form: contraction below the right introduction."""
    x, x1, x2 = Variable("x", P), Variable("x'", P), Variable("x''", P)
    y, y1 = Variable("y", PP), Variable("y'", PP)
    inner = limp(ax(x), ax(x2), 0, y1)
    outer = limp(inner, ax(x1), 0, y)        # y, y', x |- p
    return ctr(rimp(outer, 2), 0)            # y:p->p |- p -> p


def church_two_right_nested() -> Preproof:
    """The right-nested variant: the spine grows through right premises.

    Same translation as :func:`church_two_well`, but the lower left
    introduction consumes a variable introduced inside the upper one's left
    branch, so this tree has a left-introduction boundary violation and is a
    natural input for the normalisation pipeline.
    """
    x, x1, x2 = Variable("x", P), Variable("x'", P), Variable("x''", P)
    y, y1 = Variable("y", PP), Variable("y'", PP)
    inner = limp(ax(x1), ax(x2), 0, y1)      # y':p->p, x':p |- (y' x')
    outer = limp(ax(x), inner, 1, y)         # y, x, y' |- (y' (y x))
    return rimp(ctr(ex(outer, 1), 0), 1)     # y:p->p |- \x. (y (y x))


def church_numeral(n: int) -> Preproof:
    """Normal-form Church numeral n over y:p->p (n >= 1)."""
    if n < 1:
        raise ValueError("church_numeral needs n >= 1")
    x = Variable("x", P)
    spine = limp(ax(x), ax(Variable("x'", P)), 0, Variable("@h1", PP))
    for k in range(2, n + 1):
        head = Variable("y", PP) if k == n else Variable(f"@h{k}", PP)
        spine = limp(spine, ax(Variable("x'", P)), 0, head)
    if n == 1:
        spine = rename_head_to_y(spine)
    for _ in range(n - 1):
        spine = ctr(spine, 0)
    return rimp(spine, 1)


def rename_head_to_y(p: Preproof) -> Preproof:
    from .ancestry import Occurrence, subst_strong
    return subst_strong(p, Occurrence((), 0), Variable("y", PP))


def word_001() -> Preproof:
    """Proof translating to (y'' (y (y x))), over a repetition-free context."""
    x, x1, x2, x3 = (Variable(n, P) for n in ("x", "x'", "x''", "x'''"))
    y, y1, y2 = Variable("y", PP), Variable("y'", PP), Variable("y''", PP)
    l1 = limp(ax(x2), ax(x3), 0, y2)         # y'', x'' |- (y'' x'')
    l2 = limp(ax(x1), l1, 1, y1)             # y', x', y'' |- (y'' (y' x'))
    l3 = limp(ax(x), l2, 1, y)               # y, x, y', y'' |- (y'' (y' (y x)))
    return ctr(ex(l3, 1), 0)                 # y, x, y'' |- (y'' (y (y x)))


def word_001_repeated() -> Preproof:
    """The variant whose final antecedent repeats y; translation (y (y (y x)))."""
    x, x1, x2, x3 = (Variable(n, P) for n in ("x", "x'", "x''", "x'''"))
    y, y1 = Variable("y", PP), Variable("y'", PP)
    l1 = limp(ax(x2), ax(x3), 0, y)          # y, x'' |- (y x'')
    l2 = limp(ax(x1), l1, 1, y1)             # y', x', y |- (y (y' x'))
    l3 = limp(ax(x), l2, 1, y)               # y, x, y', y |- (y (y' (y x)))
    return ctr(ex(l3, 1), 0)                 # y, x, y |- (y (y (y x)))


def eta_expanded_axiom(p=None, q=None) -> Preproof:
    """The four-rule proof of z:p->q |- p->q that is eta-equivalent to an axiom."""
    p = p or P
    q = q or atom("q")
    x, y, z = Variable("x", p), Variable("y", q), Variable("z", imp(p, q))
    return rimp(limp(ax(x), ax(y), 0, z), 1)


def eta_pattern_with_weakening() -> Preproof:
    """An eta-pattern complicated by a weakening feeding the contraction."""
    q = atom("q")
    x, x1 = Variable("x", P), Variable("x'", P)
    y, z = Variable("y", q), Variable("z", imp(P, q))
    zeta = ctr(weak(ax(x1), 0, x), 0)        # x:p |- x'
    return rimp(limp(zeta, ax(y), 0, z), 1)  # z:p->q |- \x. (z x)


def identity_axiom(f=None) -> Preproof:
    f = f or P
    return ax(Variable("x", f))
