"""Constructive normalisation: contraction normal form, cut-elimination,
left-introduction normal forms, eta-pattern removal, and the full normal
form with ladders and derived contractions.

The procedures follow the constructive existence proofs: contraction
normalisation pushes active contractions to the bottom one commutation at a
time; cut-elimination is a double recursion on cut-formula width and branch
height; defective left introductions are expanded into towers and weakened
arguments dropped; eta-patterns are collapsed from greatest height first.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .ancestry import (
    Occurrence, active_contractions, ancestors, class_intro,
    immediate_ancestors, is_well_labelled, make_well_labelled,
    normalisation_measure, slack, strong_class, subst_strong,
)
from .proofs import (
    AX, CTR, CUT, EX, LIMP, RIMP, STRUCTURAL, WEAK,
    Address, Preproof, ProofError, ax, ctr, cut, ex, height, is_cut_free, limp,
    rebuild, replace_at, rimp, validate, weak,
)
from .rewrite import (
    block_swap_positions, collect_variables, ex_run, merge_blocks,
    move_left_positions, move_right_positions, weak_run,
)
from .syntax import Formula, Imp, Variable, fresh_variable
from .terms import Term, Var, beta_eta_normalize, fv, fv_seq, is_beta_eta_normal
from .translate import (
    RepetitionError, require_repetition_free, translate,
)


class NormalizationBudget(ProofError):
    pass


class _Budget:
    def __init__(self, limit: int):
        self.left = limit

    def tick(self, n: int = 1) -> None:
        self.left -= n
        if self.left <= 0:
            raise NormalizationBudget("normalisation step budget exhausted")


# ---------------------------------------------------------------------------
# contraction normal form

def _slack_vertices(p: Preproof, o: Occurrence) -> list[Occurrence]:
    from .ancestry import contraction_tree
    tree = contraction_tree(p, o)
    outgoing: dict[Occurrence, int] = {}
    incoming: set[Occurrence] = set()
    for a, b, _ in tree.edges:
        outgoing[a] = outgoing.get(a, 0) + 1
        incoming.add(b)
    active = active_contractions(p, o)
    out = []
    for v, deg in outgoing.items():
        if deg < 2 or v not in incoming:
            continue
        if v.address and v.address[:-1] in active:
            continue
        out.append(v)
    return out


def _ctr_down(p: Preproof, parent_addr: Address) -> Preproof:
    """Move the contraction directly above ``parent_addr`` below that node."""
    parent = p.at(parent_addr)
    rule = parent.rule
    if rule in (CTR, WEAK, EX, RIMP):
        child = parent.children[0]
        assert child.rule == CTR
        a = child.params[0]
        base = child.children[0]
        if rule == RIMP:
            c = parent.params[0]
            if c >= a + 1:
                new = ctr(rimp(base, c + 1), a)
            else:
                new = ctr(rimp(base, c), a - 1)
        elif rule == WEAK:
            b, v = parent.params
            if b > a:
                new = ctr(weak(base, b + 1, v), a)
            else:
                new = ctr(weak(base, b, v), a + 1)
        elif rule == EX:
            e = parent.params[0]
            if e == a:
                new = ctr(ex(ex(base, a + 1), a), a + 1)
            elif e == a - 1:
                new = ctr(ex(ex(base, a - 1), a), a - 1)
            elif e >= a + 1:
                new = ctr(ex(base, e + 1), a)
            else:  # e <= a - 2
                new = ctr(ex(base, e), a)
        else:  # CTR, not active
            b = parent.params[0]
            if b > a:
                new = ctr(ctr(base, b + 1), a)
            else:  # b + 1 < a
                new = ctr(ctr(base, b), a - 1)
        return replace_at(p, parent_addr, new)
    if rule == LIMP:
        i, y = parent.params
        which = 0 if parent.children[0].rule == CTR else 1
        child = parent.children[which]
        assert child.rule == CTR
        a = child.params[0]
        base = child.children[0]
        g = len(parent.children[0].conclusion.antecedent)
        if which == 0:
            new = ctr(limp(base, parent.children[1], i, y), a + 1)
        else:
            if i < a:
                new = ctr(limp(parent.children[0], base, i, y), 1 + (g - 1) + a)
            else:  # i > a
                new = ctr(limp(parent.children[0], base, i + 1, y), 1 + g + a)
        return replace_at(p, parent_addr, new)
    raise ProofError(f"cannot commute a contraction below a {rule} rule")


def contraction_normalize(p: Preproof, o: Occurrence,
                          budget: int = 100_000) -> Preproof:
    """Push every contraction active for ``o`` to the bottom of the tree."""
    if not is_cut_free(p):
        raise ProofError("contraction normalisation needs a cut-free preproof")
    if o.address != ():
        raise ProofError("the occurrence must be in the final sequent")
    b = _Budget(budget)
    measure = normalisation_measure(p, o)
    while True:
        verts = _slack_vertices(p, o)
        if not verts:
            return p
        b.tick()
        verts.sort(key=lambda v: (-len(v.address), v.address, v.index))
        v = verts[0]
        p = _ctr_down(p, v.address[:-1])
        new_measure = normalisation_measure(p, o)
        assert new_measure < measure, "contraction measure must decrease"
        measure = new_measure


def _peel_active_tower(p: Preproof, i: int) -> tuple[list[int], Preproof, list[int]]:
    """Peel bottom contractions active for root position ``i``.

    Returns (tower positions bottom-first, the stripped proof, the contiguous
    ancestor positions in the stripped proof's conclusion).
    """
    positions = list(range(i, i + 1))
    tower: list[int] = []
    cur = p
    while cur.rule == CTR and cur.params[0] in positions:
        bpos = cur.params[0]
        tower.append(bpos)
        positions = sorted(
            {(s if s < bpos else s + 1) for s in positions} | {bpos, bpos + 1})
        cur = cur.children[0]
    return tower, cur, positions


# ---------------------------------------------------------------------------
# cut elimination

def eliminate_root_cut(p: Preproof, budget: int = 2_000_000) -> Preproof:
    """Eliminate a root cut whose branches are cut-free."""
    if p.rule != CUT:
        raise ProofError("eliminate_root_cut expects a cut at the root")
    left, right = p.children
    if not (is_cut_free(left) and is_cut_free(right)):
        raise ProofError("eliminate_root_cut expects cut-free branches")
    b = _Budget(budget)
    result = _elim(left, right, p.params[0], b)
    assert result.conclusion == p.conclusion
    return result


def eliminate_all_cuts(p: Preproof, budget: int = 4_000_000) -> Preproof:
    """Innermost-first elimination of every cut."""
    b = _Budget(budget)

    def go(node: Preproof) -> Preproof:
        kids = tuple(go(c) for c in node.children)
        if node.rule == CUT:
            return _elim(kids[0], kids[1], node.params[0], b)
        return rebuild(node.rule, node.params, kids)

    result = go(p)
    assert result.conclusion == p.conclusion
    return result


def _elim(left: Preproof, right: Preproof, i: int, b: _Budget) -> Preproof:
    """Cut-free proof of ``left.ant ++ right.ant minus i |- right.succ``."""
    b.tick()
    if right.rule == AX:
        return left
    if left.rule == AX:
        renamed = subst_strong(right, Occurrence((), i), left.params[0])
        return ex_run(renamed, move_left_positions(i, 0))
    if left.rule in STRUCTURAL:
        inner = _elim(left.children[0], right, i, b)
        return rebuild(left.rule, left.params, (inner,))
    if left.rule == LIMP:
        inner = _elim(left.children[1], right, i, b)
        return limp(left.children[0], inner, left.params[0], left.params[1])
    assert left.rule == RIMP
    g = len(left.conclusion.antecedent)
    rule = right.rule

    if rule == CTR:
        a = right.params[0]
        base = right.children[0]
        if i == a:
            return _elim_active_ctr(left, right, i, b)
        i2 = i + (1 if i > a else 0)
        inner = _elim(left, base, i2, b)
        return ctr(inner, g + a - (1 if i < a else 0))

    if rule == WEAK:
        a, v = right.params
        base = right.children[0]
        if i == a:
            return weak_run(base, 0, left.conclusion.antecedent)
        i2 = i - (1 if i > a else 0)
        inner = _elim(left, base, i2, b)
        return weak(inner, g + a - (1 if i < a else 0), v)

    if rule == EX:
        a = right.params[0]
        base = right.children[0]
        if i == a:
            return _elim(left, base, a + 1, b)
        if i == a + 1:
            return _elim(left, base, a, b)
        inner = _elim(left, base, i, b)
        return ex(inner, g + a - (1 if i < a else 0))

    if rule == RIMP:
        c2 = right.params[0]
        base = right.children[0]
        i2 = i + (1 if i >= c2 else 0)
        inner = _elim(left, base, i2, b)
        return rimp(inner, g + c2 - (1 if i2 < c2 else 0))

    if rule == LIMP:
        i3, yv = right.params
        p2, p3 = right.children
        d = len(p2.conclusion.antecedent)
        if i == 0:
            # the beta step: the cut formula was built by the right
            # introduction on the left and consumed here
            p1, c = left.children[0], left.params[0]
            inner1 = _elim(p2, p1, c, b)
            inner2 = _elim(inner1, p3, i3, b)
            t = len(p2.conclusion.antecedent)
            gd = len(p1.conclusion.antecedent) - 1
            return ex_run(inner2, block_swap_positions(t, gd))
        if 1 <= i <= d:
            inner = _elim(left, p2, i - 1, b)
            relimp = limp(inner, p3, i3, yv)
            return ex_run(relimp, move_right_positions(0, g))
        rr = i - 1 - d
        pos3 = rr + (1 if rr >= i3 else 0)
        inner = _elim(left, p3, pos3, b)
        new_i3 = g + i3 - (1 if pos3 < i3 else 0)
        relimp = limp(p2, inner, new_i3, yv)
        return ex_run(relimp, block_swap_positions(1 + d, g))

    raise ProofError(f"unexpected rule {rule} during cut elimination")


def _elim_active_ctr(left: Preproof, right: Preproof, i: int, b: _Budget) -> Preproof:
    """Cut against a contracted hypothesis: normalise, split, merge."""
    phi = contraction_normalize(right, Occurrence((), i))
    assert phi.rule == CTR and phi.params[0] == i, \
        "contraction normal form must end in the active contraction"
    psi = phi.children[0]
    g = len(left.conclusion.antecedent)
    inner = _elim(left, psi, i, b)
    outer = _elim(left, inner, g + i, b)
    return merge_blocks(outer, 0, g)


# ---------------------------------------------------------------------------
# pure chains and their removal

def _chain_info(sub: Preproof, o: Occurrence) -> tuple[str, set[Occurrence]] | None:
    """(intro rule, closure) when the weak-ancestor closure of ``o`` is a
    branch-free chain; None when it branches."""
    closure = {o}
    cur = o
    intro = None
    while True:
        ups = immediate_ancestors(sub, cur, strong=False)
        if len(ups) > 1:
            return None
        if not ups:
            node = sub.at(cur.address)
            if node.rule == AX:
                intro = AX
            elif node.rule == WEAK and cur.index == node.params[0]:
                intro = WEAK
            elif node.rule == LIMP and cur.index == 0:
                intro = LIMP
            else:
                raise ProofError("chain ends at a non-introduction point")
            return intro, closure
        cur = ups[0]
        closure.add(cur)


def _remove_chain(sub: Preproof, closure: set[Occurrence]) -> Preproof:
    """Delete a set of occurrence positions (a closed union of chains).

    Contractions both of whose positions vanish are dissolved; exchanges
    touching a vanished position are dissolved; the introducing weakenings
    drop out.  Left/right introductions and cuts reindex.
    """
    by_addr: dict[Address, set[int]] = {}
    for o in closure:
        by_addr.setdefault(o.address, set()).add(o.index)

    def relevant(path: Address) -> bool:
        return any(a[:len(path)] == path for a in by_addr)

    def shift(removed: set[int], pos: int) -> int:
        return pos - sum(1 for r in removed if r < pos)

    def go(node: Preproof, path: Address) -> Preproof:
        if not relevant(path):
            return node
        removed_here = by_addr.get(path, set())
        if node.rule == AX:
            if removed_here:
                raise ProofError("cannot remove an axiom's own hypothesis")
            return node
        if node.rule == CTR:
            a = node.params[0]
            child_removed = by_addr.get(path + (0,), set())
            child = go(node.children[0], path + (0,))
            if a in child_removed and a + 1 in child_removed:
                return child
            if a in child_removed or a + 1 in child_removed:
                raise ProofError("chain removal split a contraction")
            return ctr(child, shift(child_removed, a))
        if node.rule == WEAK:
            a, v = node.params
            child_removed = by_addr.get(path + (0,), set())
            child = go(node.children[0], path + (0,))
            if a in removed_here:
                return child
            return weak(child, shift(child_removed, a), v)
        if node.rule == EX:
            e = node.params[0]
            child_removed = by_addr.get(path + (0,), set())
            child = go(node.children[0], path + (0,))
            if e in child_removed or e + 1 in child_removed:
                return child
            return ex(child, shift(child_removed, e))
        if node.rule == RIMP:
            c = node.params[0]
            child_removed = by_addr.get(path + (0,), set())
            child = go(node.children[0], path + (0,))
            if c in child_removed:
                raise ProofError("chain removal hit an abstracted hypothesis")
            return rimp(child, shift(child_removed, c))
        if node.rule == LIMP:
            iL, y = node.params
            lrem = by_addr.get(path + (0,), set())
            rrem = by_addr.get(path + (1,), set())
            lchild = go(node.children[0], path + (0,))
            rchild = go(node.children[1], path + (1,))
            if iL in rrem:
                raise ProofError("chain removal hit a consumed hypothesis")
            return limp(lchild, rchild, shift(rrem, iL), y)
        if node.rule == CUT:
            ci = node.params[0]
            lchild = go(node.children[0], path + (0,))
            rrem = by_addr.get(path + (1,), set())
            rchild = go(node.children[1], path + (1,))
            if ci in rrem:
                raise ProofError("chain removal hit a cut hypothesis")
            return cut(lchild, rchild, shift(rrem, ci))
        raise ProofError(f"unknown rule {node.rule}")

    return go(sub, ())


# ---------------------------------------------------------------------------
# left-introduction normal form

def _limp_eliminated_chain(sub: Preproof) -> tuple[str, set[Occurrence]] | None:
    """Chain info for the occurrence a left introduction eliminates."""
    assert sub.rule == LIMP
    return _chain_info(sub.children[1], Occurrence((), sub.params[0]))


def _limp_defective(sub: Preproof) -> bool:
    assert sub.rule == LIMP
    o = Occurrence((), sub.params[0])
    if active_contractions(sub.children[1], o):
        return True
    info = _chain_info(sub.children[1], o)
    if info is None:
        return True
    return info[0] == WEAK


def is_l_normal(p: Preproof) -> bool:
    if not is_cut_free(p) or not is_well_labelled(p):
        return False
    for path, node in p:
        if node.rule == LIMP and _limp_defective(node):
            return False
    return True


def _fix_defective_limp(sub: Preproof, used: set[Variable]) -> Preproof:
    """Rebuild one defective left introduction per the tower construction."""
    i, y = sub.params
    p1, p2 = sub.children
    g = len(p1.conclusion.antecedent)
    phi = contraction_normalize(p2, Occurrence((), i))
    tower, core, positions = _peel_active_tower(phi, i)
    l = len(positions)
    # build the spine: eliminate the rightmost ancestor first
    spine = core
    names: list[Variable] = []
    for k, pos in enumerate(reversed(positions)):
        is_last = k == l - 1
        if is_last:
            yk = y
        else:
            yk = fresh_variable(y.type, used)
            used.add(yk)
        names.append(yk)
        spine = limp(p1, spine, pos + k * (1 + g), yk)
    # drop the arguments fed to weakened hypotheses
    spine = _kill_weak_arguments(spine, l)
    # merge the duplicated argument-context blocks pairwise
    for _ in range(l - 1):
        spine = ex_run(spine, move_left_positions(1 + g, 1))
        spine = ctr(spine, 0)
        spine = merge_blocks(spine, 1, g)
    assert spine.conclusion == sub.conclusion
    return spine


def _kill_weak_arguments(spine: Preproof, depth: int) -> Preproof:
    """Replace weak-fed left introductions on the spine with weakening runs."""
    if depth == 0 or spine.rule != LIMP:
        return spine
    i, y = spine.params
    p1, p2 = spine.children
    p2 = _kill_weak_arguments(p2, depth - 1)
    info = _chain_info(p2, Occurrence((), i))
    if info is not None and info[0] == WEAK:
        reduced = _remove_chain(p2, info[1])
        return weak_run(weak(reduced, 0, y), 1, p1.conclusion.antecedent)
    return limp(p1, p2, i, y)


def l_normalize(p: Preproof, budget: int = 200_000) -> Preproof:
    """A proof equivalent to ``p`` in left-introduction normal form."""
    p = eliminate_all_cuts(p)
    p = make_well_labelled(p)
    b = _Budget(budget)
    while True:
        defective = [
            (path, node) for path, node in p
            if node.rule == LIMP and _limp_defective(node)]
        if not defective:
            return p
        b.tick()
        defective.sort(key=lambda it: (-len(it[0]), it[0]))
        path, node = defective[0]
        used = collect_variables(p)
        fixed = _fix_defective_limp(node, used)
        p = replace_at(p, path, fixed)
        p = make_well_labelled(p)


# ---------------------------------------------------------------------------
# eta patterns

def find_eta_patterns(p: Preproof) -> list[tuple[Address, Address]]:
    """All (right-introduction address, left-introduction address) pairs
    forming an eta-pattern.  The proof must be in left-introduction normal
    form."""
    if not is_l_normal(p):
        raise ProofError("eta patterns are defined on (L->)-normal forms")
    out: list[tuple[Address, Address]] = []
    for path, node in p:
        if node.rule != RIMP:
            continue
        e = node.params[0]
        sub = node  # work in subtree coordinates
        walk = (0,)
        while True:
            n = sub.at(walk)
            if n.rule == LIMP:
                if _eta_pattern_at(sub, walk, e):
                    out.append((path, path + walk))
                walk = walk + (1,)
            elif n.rule in STRUCTURAL:
                walk = walk + (0,)
            else:
                break
    return out


def _eta_pattern_at(sub: Preproof, limp_path: Address, e: int) -> bool:
    """Does the left introduction at ``limp_path`` close an eta-pattern for
    the hypothesis eliminated at position ``e`` by the root right intro?"""
    l = sub.at(limp_path)
    zeta, theta = l.children
    tz = translate(zeta)
    tt = translate(theta)
    if not isinstance(tz, Var) or not isinstance(tt, Var):
        return False
    if tt.var != theta.conclusion.antecedent[l.params[0]]:
        return False
    # closure of the occurrence the right introduction eliminates
    o = Occurrence((0,), e)
    closure = {o} | ancestors(sub, o, strong=False)
    ax_leaves = 0
    for occ in closure:
        if immediate_ancestors(sub, occ, strong=False):
            continue
        node = sub.at(occ.address)
        if node.rule == AX:
            inside_zeta = occ.address[:len(limp_path) + 1] == limp_path + (0,)
            if not inside_zeta:
                return False
            ax_leaves += 1
        elif node.rule == WEAK and occ.index == node.params[0]:
            continue
        else:
            return False
    return ax_leaves == 1


def _collapse_eta(p: Preproof, rimp_addr: Address, limp_rel: Address) -> Preproof:
    """Contract one eta-pattern: drop the right introduction, replace the
    pattern's left introduction by an axiom plus weakenings, and delete the
    eliminated hypothesis' chains."""
    r = p.at(rimp_addr)
    e = r.params[0]
    sub = r  # subtree rooted at the right introduction
    o = Occurrence((0,), e)
    closure = {o} | ancestors(sub, o, strong=False)
    limp_path = limp_rel[len(rimp_addr):]
    l = sub.at(limp_path)
    y_l = l.params[1]

    by_addr: dict[Address, set[int]] = {}
    for occ in closure:
        by_addr.setdefault(occ.address, set()).add(occ.index)

    def shift(removed: set[int], pos: int) -> int:
        return pos - sum(1 for q in removed if q < pos)

    def go(node: Preproof, path: Address) -> Preproof:
        if path == limp_path:
            removed = by_addr.get(path, set())
            kept = [v for j, v in enumerate(node.conclusion.antecedent)
                    if j != 0 and j not in removed]
            return weak_run(ax(y_l), 1, kept)
        removed_here = by_addr.get(path, set())
        if node.rule == AX:
            return node
        if node.rule == CTR:
            a = node.params[0]
            crem = by_addr.get(path + (0,), set())
            child = go(node.children[0], path + (0,))
            if a in crem and a + 1 in crem:
                return child
            return ctr(child, shift(crem, a))
        if node.rule == WEAK:
            a, v = node.params
            crem = by_addr.get(path + (0,), set())
            child = go(node.children[0], path + (0,))
            if a in removed_here:
                return child
            return weak(child, shift(crem, a), v)
        if node.rule == EX:
            eidx = node.params[0]
            crem = by_addr.get(path + (0,), set())
            child = go(node.children[0], path + (0,))
            if eidx in crem or eidx + 1 in crem:
                return child
            return ex(child, shift(crem, eidx))
        if node.rule == RIMP:
            c = node.params[0]
            crem = by_addr.get(path + (0,), set())
            child = go(node.children[0], path + (0,))
            return rimp(child, shift(crem, c))
        if node.rule == LIMP:
            iL, y2 = node.params
            rrem = by_addr.get(path + (1,), set())
            lchild = go(node.children[0], path + (0,))
            rchild = go(node.children[1], path + (1,))
            return limp(lchild, rchild, shift(rrem, iL), y2)
        raise ProofError(f"unexpected rule {node.rule} in eta collapse")

    new_sub = go(sub.children[0], (0,))
    assert new_sub.conclusion == r.conclusion, "eta collapse must preserve the sequent"
    return replace_at(p, rimp_addr, new_sub)


def special_l_normalize(p: Preproof, budget: int = 100_000) -> Preproof:
    """Left-introduction normal form with every eta-pattern removed."""
    p = l_normalize(p)
    b = _Budget(budget)
    while True:
        pats = find_eta_patterns(p)
        if not pats:
            return p
        b.tick()
        pats.sort(key=lambda pr: (-len(pr[0]), pr[0]))
        rimp_addr, limp_addr = pats[0]
        p = _collapse_eta(p, rimp_addr, limp_addr)
        if not is_l_normal(p):
            p = l_normalize(p)


# ---------------------------------------------------------------------------
# ladders, derived contractions, well-structured proofs

@dataclass(frozen=True)
class DerivedContraction:
    tail: int
    head: int
    length: int  # number of exchanges in the run


@dataclass(frozen=True)
class Ladder:
    tail: int
    length: int  # number of exchanges


def _parse_dctr(node: Preproof) -> tuple[DerivedContraction, Preproof] | None:
    """Greedy parse of a maximal derived contraction ending at ``node``."""
    if node.rule != CTR:
        return None
    a = node.params[0]
    cur = node.children[0]
    k = 0
    while cur.rule == EX and cur.params[0] == a + 1 + k:
        k += 1
        cur = cur.children[0]
    return DerivedContraction(a, a + 1 + k, k), cur


def _parse_ladder(node: Preproof) -> tuple[Ladder, Preproof] | None:
    if node.rule != EX:
        return None
    c = node.params[0]
    cur = node.children[0]
    k = 1
    while cur.rule == EX and cur.params[0] == c + k:
        k += 1
        cur = cur.children[0]
    return Ladder(c, k), cur


def strip_trailing(p: Preproof) -> tuple[Preproof, list[Ladder], list[tuple[int, Variable]]]:
    """Split a normal proof into core, ladder series and weakening series."""
    weaks: list[tuple[int, Variable]] = []
    while p.rule == WEAK:
        weaks.append((p.params[0], p.params[1]))
        p = p.children[0]
    weaks.reverse()
    ladders: list[Ladder] = []
    while p.rule == EX:
        got = _parse_ladder(p)
        assert got is not None
        lad, p = got
        ladders.append(lad)
    ladders.reverse()
    return p, ladders, weaks


@dataclass
class StructureReport:
    ok: bool
    violations: list[str] = field(default_factory=list)


def is_well_structured(p: Preproof) -> StructureReport:
    """Check special-normality plus the structural conditions (a)-(h)."""
    report = StructureReport(True)

    def fail(msg: str) -> None:
        report.ok = False
        report.violations.append(msg)

    if not is_cut_free(p):
        fail("contains a cut")
        return report
    if not is_well_labelled(p):
        fail("not well-labelled")
        return report
    for path, node in p:
        if node.rule == LIMP and _limp_defective(node):
            fail(f"defective left introduction at {list(path)}")
    if not report.ok:
        return report
    if find_eta_patterns(p):
        fail("contains an eta-pattern")

    nodes = list(p)
    for path, node in nodes:
        # (c) weakenings only under a right introduction eliminating them
        if node.rule == WEAK:
            parent = p.at(path[:-1]) if path else None
            if (parent is None or parent.rule != RIMP
                    or parent.params[0] != 0 or node.params[0] != 0):
                fail(f"(c) stray weakening at {list(path)}")
        # (d) no structural rule directly above a left introduction's right branch
        if node.rule == LIMP and node.children[1].rule in STRUCTURAL:
            fail(f"(d) structural rule on the right branch of {list(path)}")
        # (e) no structural rule directly below a right introduction; the
        # weakening of a weak/rimp pair is sanctioned by (c) and exempt here
        if node.rule in (CTR, EX) and node.children[0].rule == RIMP:
            fail(f"(e) structural rule after a right introduction at {list(path)}")
        # (f) no right introduction as the right branch of a left introduction
        if node.rule == LIMP and node.children[1].rule == RIMP:
            fail(f"(f) right introduction on the right branch of {list(path)}")

    # (a)/(b): boundary violations
    for path, node in nodes:
        if node.rule == CTR:
            o = Occurrence(path, node.params[0])
            closure = {o} | ancestors(p, o, strong=False)
            for lp, lnode in nodes:
                if lnode.rule != LIMP or len(lp) <= len(path):
                    continue
                if lp[:len(path)] != path:
                    continue
                in_left = sum(
                    1 for occ in closure
                    if occ.address == lp + (0,))
                if in_left >= 2:
                    fail(f"(a) contraction at {list(path)} reaches twice into "
                         f"the argument of {list(lp)}")
        if node.rule == LIMP:
            o = Occurrence(path + (1,), node.params[0])
            chain = strong_class(p, o)
            for occ in chain:
                if (occ.address and occ.address[-1] == 0
                        and p.at(occ.address[:-1]).rule == LIMP):
                    fail(f"(b) hypothesis of {list(path)} originates in "
                         f"the argument of {list(occ.address[:-1])}")

    # (g)/(h): exchange bookkeeping
    covered: set[Address] = set()
    for path, node in nodes:
        got = _parse_dctr(node)
        if got is None:
            continue
        d_below, rest = got
        for k in range(d_below.length):
            covered.add(path + (0,) * (k + 1))
        got2 = _parse_dctr(rest)
        if got2 is not None:
            d_above, _ = got2
            if (d_below.tail, d_below.head) < (d_above.tail, d_above.head):
                fail(f"(g) derived contractions out of order below {list(path)}")
    for path, node in nodes:
        if node.rule == EX and path not in covered:
            fail(f"(h) exchange at {list(path)} is not part of a derived contraction")
    return report


def is_well_ordered(p: Preproof) -> bool:
    return p.conclusion.antecedent == fv_seq(translate(p))


def is_normal(p: Preproof) -> bool:
    core, ladders, weaks = strip_trailing(p)
    if any(l2.tail <= l1.tail for l1, l2 in zip(ladders, ladders[1:])):
        return False
    if any(w2 <= w1 for (w1, _), (w2, _) in zip(weaks, weaks[1:])):
        return False
    return is_well_ordered(core) and is_well_structured(core).ok


# ---------------------------------------------------------------------------
# the normal form map

def to_normal(p: Preproof) -> Preproof:
    """The normal preproof equivalent to ``p`` (repetition-free context only)."""
    require_repetition_free(p.conclusion.antecedent, "normalisation")
    from .translate import invert
    m = beta_eta_normalize(translate(p))
    return invert(m, p.conclusion.antecedent)


@dataclass
class NormalFormReport:
    classification: str  # variable-nf | abstraction-nf | application-nf
    spine_length: int = 0
    branch_addresses: list[list[int]] = field(default_factory=list)
    derived_contractions: list[tuple[int, int]] = field(default_factory=list)
    ladders: list[int] = field(default_factory=list)
    weakenings: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "classification": self.classification,
            "spine_length": self.spine_length,
            "branch_addresses": self.branch_addresses,
            "derived_contractions": [list(d) for d in self.derived_contractions],
            "ladders": self.ladders,
            "weakenings": self.weakenings,
        }


def classify_normal(p: Preproof) -> NormalFormReport:
    """Parse a normal preproof into its report."""
    core, ladders, weaks = strip_trailing(p)
    report = NormalFormReport(
        classification="",
        ladders=[l.tail for l in ladders],
        weakenings=[w for w, _ in weaks],
    )
    if core.rule == AX:
        report.classification = "variable-nf"
        return report
    if core.rule == RIMP:
        report.classification = "abstraction-nf"
        return report
    report.classification = "application-nf"
    # peel derived contractions down to the spine
    node = core
    prefix: Address = ()
    while True:
        got = _parse_dctr(node)
        if got is None:
            break
        d, rest = got
        report.derived_contractions.append((d.tail, d.head))
        prefix = prefix + (0,) * (d.length + 1)
        node = rest
    b = 0
    while node.rule == LIMP and node.children[1].rule == LIMP:
        report.branch_addresses.append(list(prefix + (0,)))
        prefix = prefix + (1,)
        node = node.children[1]
        b += 1
    if node.rule == LIMP:
        report.branch_addresses.append(list(prefix + (0,)))
    report.spine_length = b
    return report
