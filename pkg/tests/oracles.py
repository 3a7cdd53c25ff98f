"""Independent oracles the tests check the kernel against.

These stay deliberately naive: substitution renames every binder first,
normalisation enumerates every reduction order, widths and heights are
recomputed by direct recursion.  None of them share code with the paths
they check.
"""
from __future__ import annotations

import itertools

from seqlam.syntax import Atom, Formula, Imp, Variable
from seqlam.terms import Abs, App, Term, Var


def width_oracle(f: Formula) -> int:
    if isinstance(f, Atom):
        return 0
    assert isinstance(f, Imp)
    return 1 + width_oracle(f.antecedent) + width_oracle(f.consequent)


_counter = itertools.count(1)


def rename_all_binders(m: Term) -> Term:
    """Give every binder a globally unique name."""
    if isinstance(m, Var):
        return m
    if isinstance(m, App):
        return App(rename_all_binders(m.fun), rename_all_binders(m.arg))
    assert isinstance(m, Abs)
    fresh = Variable(f"#o{next(_counter)}", m.binder.type)
    return Abs(fresh, _naive_replace(rename_all_binders(m.body), m.binder, Var(fresh)))


def _naive_replace(m: Term, x: Variable, n: Term) -> Term:
    if isinstance(m, Var):
        return n if m.var == x else m
    if isinstance(m, App):
        return App(_naive_replace(m.fun, x, n), _naive_replace(m.arg, x, n))
    assert isinstance(m, Abs)
    if m.binder == x:
        return m
    return Abs(m.binder, _naive_replace(m.body, x, n))


def subst_oracle(m: Term, x: Variable, n: Term) -> Term:
    """Substitution after exhaustively freshening every binder."""
    return _naive_replace(rename_all_binders(m), x, n)


def one_step_reducts(m: Term, eta: bool = True) -> list[Term]:
    """Every single-step beta (and optionally eta) reduct of ``m``."""
    out: list[Term] = []
    if isinstance(m, App):
        if isinstance(m.fun, Abs):
            out.append(subst_oracle(m.fun.body, m.fun.binder, m.arg))
        out.extend(App(f, m.arg) for f in one_step_reducts(m.fun, eta))
        out.extend(App(m.fun, a) for a in one_step_reducts(m.arg, eta))
    elif isinstance(m, Abs):
        if eta and isinstance(m.body, App) and isinstance(m.body.arg, Var) \
                and m.body.arg.var == m.binder:
            from seqlam.terms import fv
            if m.binder not in fv(m.body.fun):
                out.append(m.body.fun)
        out.extend(Abs(m.binder, b) for b in one_step_reducts(m.body, eta))
    return out


def all_normal_forms(m: Term, eta: bool = True, cap: int = 20000) -> set[Term]:
    """Normal forms reachable by every reduction order (term equality is
    alpha-equality, so the set collapses identical results)."""
    seen: set[Term] = set()
    normals: set[Term] = set()
    frontier = [m]
    steps = 0
    while frontier:
        cur = frontier.pop()
        if cur in seen:
            continue
        seen.add(cur)
        steps += 1
        if steps > cap:
            raise RuntimeError("reduction graph exploration cap exceeded")
        reducts = one_step_reducts(cur, eta)
        if not reducts:
            normals.add(cur)
        else:
            frontier.extend(reducts)
    return normals


def rightmost_innermost_normalize(m: Term) -> Term:
    """An alternative strategy: innermost-rightmost beta, then eta sweeps."""
    def step(t: Term) -> Term | None:
        if isinstance(t, App):
            a2 = step(t.arg)
            if a2 is not None:
                return App(t.fun, a2)
            f2 = step(t.fun)
            if f2 is not None:
                return App(f2, t.arg)
            if isinstance(t.fun, Abs):
                return subst_oracle(t.fun.body, t.fun.binder, t.arg)
            return None
        if isinstance(t, Abs):
            b2 = step(t.body)
            return None if b2 is None else Abs(t.binder, b2)
        return None

    while True:
        n = step(m)
        if n is None:
            break
        m = n
    while True:
        reducts = one_step_reducts(m, eta=True)
        if not reducts:
            return m
        m = reducts[0]


def height_oracle(node) -> int:
    """Longest root-to-leaf rule count, minus one."""
    best = 0
    stack = [(node, 1)]
    while stack:
        cur, depth = stack.pop()
        best = max(best, depth)
        for child in cur.children:
            stack.append((child, depth + 1))
    return best - 1
