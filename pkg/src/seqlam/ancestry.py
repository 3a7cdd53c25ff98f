"""Occurrence tracking: ancestors, ancestor substitution, contraction trees.

An occurrence is an antecedent position of some node's conclusion, addressed
positionally.  The immediate strong/weak ancestor maps follow the rule
schemata: positions flow unchanged through context blocks, a contraction's
result inherits from the first (strong) or both (weak) contracted positions,
and introduced/eliminated positions start/end their chains.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .proofs import (
    AX, CTR, CUT, EX, LIMP, RIMP, WEAK, Address, Preproof, ProofError, rebuild,
)
from .syntax import Variable, fresh_variable


@dataclass(frozen=True, slots=True)
class Occurrence:
    address: Address
    index: int

    def __repr__(self) -> str:
        return f"@{list(self.address)}#{self.index}"


def occurrence_variable(p: Preproof, o: Occurrence) -> Variable:
    node = p.at(o.address)
    ant = node.conclusion.antecedent
    if not (0 <= o.index < len(ant)):
        raise ProofError(f"occurrence {o} does not resolve")
    return ant[o.index]


def all_occurrences(p: Preproof) -> Iterator[Occurrence]:
    for path, node in p:
        for i in range(len(node.conclusion.antecedent)):
            yield Occurrence(path, i)


def immediate_ancestors(p: Preproof, o: Occurrence, strong: bool) -> tuple[Occurrence, ...]:
    """Occurrences in the premises directly feeding ``o``."""
    node = p.at(o.address)
    j = o.index
    rule = node.rule
    if rule == AX:
        return ()
    if rule == CUT:
        i = node.params[0]
        g = len(node.children[0].conclusion.antecedent)
        if j < g:
            return (Occurrence(o.address + (0,), j),)
        r = j - g
        return (Occurrence(o.address + (1,), r if r < i else r + 1),)
    if rule == CTR:
        i = node.params[0]
        up = o.address + (0,)
        if j < i:
            return (Occurrence(up, j),)
        if j == i:
            if strong:
                return (Occurrence(up, i),)
            return (Occurrence(up, i), Occurrence(up, i + 1))
        return (Occurrence(up, j + 1),)
    if rule == WEAK:
        i = node.params[0]
        up = o.address + (0,)
        if j == i:
            return ()
        return (Occurrence(up, j if j < i else j - 1),)
    if rule == EX:
        i = node.params[0]
        up = o.address + (0,)
        if j == i:
            return (Occurrence(up, i + 1),)
        if j == i + 1:
            return (Occurrence(up, i),)
        return (Occurrence(up, j),)
    if rule == RIMP:
        i = node.params[0]
        up = o.address + (0,)
        return (Occurrence(up, j if j < i else j + 1),)
    if rule == LIMP:
        i = node.params[0]
        g = len(node.children[0].conclusion.antecedent)
        if j == 0:
            return ()
        if j <= g:
            return (Occurrence(o.address + (0,), j - 1),)
        r = j - g - 1
        return (Occurrence(o.address + (1,), r if r < i else r + 1),)
    raise ProofError(f"unknown rule {rule}")


def ancestors(p: Preproof, o: Occurrence, strong: bool) -> set[Occurrence]:
    """Transitive closure of the immediate ancestor relation above ``o``."""
    occurrence_variable(p, o)  # raises if unresolvable
    seen: set[Occurrence] = set()
    stack = [o]
    while stack:
        cur = stack.pop()
        for up in immediate_ancestors(p, cur, strong):
            if up not in seen:
                seen.add(up)
                stack.append(up)
    return seen


def _descendant(p: Preproof, o: Occurrence, strong: bool) -> Occurrence | None:
    """The occurrence in the conclusion below that ``o`` feeds, if any."""
    if not o.address:
        return None
    parent_path, child_idx = o.address[:-1], o.address[-1]
    parent = p.at(parent_path)
    for j in range(len(parent.conclusion.antecedent)):
        cand = Occurrence(parent_path, j)
        if Occurrence(o.address, o.index) in immediate_ancestors(p, cand, strong):
            return cand
    return None


def strong_class(p: Preproof, o: Occurrence) -> set[Occurrence]:
    """The full equivalence class of ``o`` under the strong ancestor relation.

    Strong classes are chains: each occurrence has at most one strong
    descendant, so the class is the up-closure plus the down-chain.
    """
    cls = {o} | ancestors(p, o, strong=True)
    cur = o
    while True:
        down = _descendant(p, cur, strong=True)
        if down is None:
            break
        cls.add(down)
        cls |= ancestors(p, down, strong=True)
        cur = down
    return cls


def strong_classes(p: Preproof) -> list[set[Occurrence]]:
    """Partition of every occurrence in ``p`` under the strong relation."""
    done: set[Occurrence] = set()
    out = []
    for o in all_occurrences(p):
        if o in done:
            continue
        cls = strong_class(p, o)
        done |= cls
        out.append(cls)
    return out


def weak_classes(p: Preproof) -> list[set[Occurrence]]:
    parent: dict[Occurrence, Occurrence] = {}

    def find(x: Occurrence) -> Occurrence:
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    def union(a: Occurrence, b: Occurrence) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    occs = list(all_occurrences(p))
    for o in occs:
        for up in immediate_ancestors(p, o, strong=False):
            union(o, up)
    groups: dict[Occurrence, set[Occurrence]] = {}
    for o in occs:
        groups.setdefault(find(o), set()).add(o)
    return list(groups.values())


def class_intro(p: Preproof, cls: set[Occurrence]) -> Occurrence:
    """The introduction point of a strong chain (the member with no ancestors)."""
    for o in cls:
        if not immediate_ancestors(p, o, strong=True):
            return o
    raise ProofError("strong class with no introduction point")


def class_end(p: Preproof, cls: set[Occurrence]) -> Occurrence:
    for o in cls:
        if _descendant(p, o, strong=True) is None:
            return o
    raise ProofError("strong class with no end point")


def is_boundary_class(p: Preproof, cls: set[Occurrence]) -> bool:
    """A class is boundary when its chain ends in the final sequent."""
    return class_end(p, cls).address == ()


def subst_strong(p: Preproof, o: Occurrence, y: Variable) -> Preproof:
    """Rename the strong chain through ``o`` to ``y`` (the ancestor substitution).

    Renaming happens at the chain's introduction point, so the whole chain --
    the occurrence, its strong ancestors, and any occurrences below it on the
    same chain -- changes name; the tree shape is untouched.
    """
    old = occurrence_variable(p, o)
    if old.type != y.type:
        raise ProofError(f"cannot rename {old!r} to {y!r} of different type")
    if old == y:
        return p
    intro = class_intro(p, strong_class(p, o))
    return _rename_intro(p, intro, y)


def _rename_intro(p: Preproof, intro: Occurrence, y: Variable) -> Preproof:
    def go(node: Preproof, path: Address) -> Preproof:
        if path == intro.address:
            if node.rule == AX and intro.index == 0:
                return rebuild(AX, (y,), ())
            if node.rule == WEAK and intro.index == node.params[0]:
                return rebuild(WEAK, (node.params[0], y), node.children)
            if node.rule == LIMP and intro.index == 0:
                return rebuild(LIMP, (node.params[0], y), node.children)
            raise ProofError(f"occurrence {intro} is not an introduction point")
        if not _prefix(path, intro.address):
            return node
        i = intro.address[len(path)]
        kids = list(node.children)
        kids[i] = go(kids[i], path + (i,))
        return rebuild(node.rule, node.params, tuple(kids))

    return go(p, ())


def _prefix(path: Address, longer: Address) -> bool:
    return longer[:len(path)] == path


def rename_class_of(p: Preproof, o: Occurrence, y: Variable) -> Preproof:
    return subst_strong(p, o, y)


# ---------------------------------------------------------------------------
# well-labelling

def interior_classes(p: Preproof) -> list[set[Occurrence]]:
    return [cls for cls in strong_classes(p) if not is_boundary_class(p, cls)]


def is_well_labelled(p: Preproof) -> bool:
    """Every interior chain's variable appears nowhere outside that chain."""
    for cls in interior_classes(p):
        v = occurrence_variable(p, next(iter(cls)))
        for o in all_occurrences(p):
            if o not in cls and occurrence_variable(p, o) == v:
                return False
    return True


def make_well_labelled(p: Preproof) -> Preproof:
    """Rename dirty interior chains to fresh canonical variables."""
    while True:
        classes = sorted(
            (cls for cls in interior_classes(p)),
            key=lambda cls: min((o.address, o.index) for o in cls))
        used = {occurrence_variable(p, o) for o in all_occurrences(p)}
        dirty = None
        for cls in classes:
            v = occurrence_variable(p, next(iter(cls)))
            if any(occurrence_variable(p, o) == v for o in all_occurrences(p)
                   if o not in cls):
                dirty = cls
                break
        if dirty is None:
            return p
        v = occurrence_variable(p, next(iter(dirty)))
        fresh = fresh_variable(v.type, used)
        p = subst_strong(p, next(iter(dirty)), fresh)


def alpha_canonical(p: Preproof) -> Preproof:
    """Deterministic representative of the alpha-class of ``p``.

    Interior chains are renamed, in introduction-point order, to the canonical
    series of their types; boundary chains keep their names.
    """
    classes = sorted(
        interior_classes(p),
        key=lambda cls: (lambda o: (o.address, o.index))(class_intro(p, cls)))
    boundary_vars = {
        occurrence_variable(p, o)
        for cls in strong_classes(p) if is_boundary_class(p, cls)
        for o in cls}
    # two passes: first move every interior chain out of the way, then assign
    # the canonical names in order (avoids transient collisions)
    taken = {occurrence_variable(p, o) for o in all_occurrences(p)}
    for cls in classes:
        o = class_intro(p, cls)
        v = fresh_variable(occurrence_variable(p, o).type, taken | {Variable("@tmp", occurrence_variable(p, o).type)})
        v = Variable("@tmp" + v.name, v.type)
        taken.add(v)
        p = subst_strong(p, o, v)
    counters: dict = {}
    for cls in classes:
        o = class_intro(p, cls)
        ty = occurrence_variable(p, o).type
        i = counters.get(ty, 0) + 1
        while True:
            cand = Variable(f"@{i}", ty)
            if cand not in boundary_vars:
                break
            i += 1
        counters[ty] = i
        p = subst_strong(p, o, cand)
    return p


def alpha_eq(p1: Preproof, p2: Preproof) -> bool:
    return alpha_canonical(p1) == alpha_canonical(p2)


# ---------------------------------------------------------------------------
# contraction trees and slack

@dataclass(frozen=True, slots=True)
class ContractionTree:
    """Weak-ancestor tree of a root occurrence; edges carry crossed rule kinds."""

    root: Occurrence
    edges: tuple[tuple[Occurrence, Occurrence, str], ...]  # (from, to=ancestor, rule)

    @property
    def vertices(self) -> set[Occurrence]:
        verts = {self.root}
        for a, b, _ in self.edges:
            verts.add(a)
            verts.add(b)
        return verts


def contraction_tree(p: Preproof, o: Occurrence) -> ContractionTree:
    if not is_cut_free_check(p):
        raise ProofError("contraction trees are defined for cut-free preproofs")
    if o.address != ():
        raise ProofError("the occurrence must be in the final sequent")
    occurrence_variable(p, o)
    edges: list[tuple[Occurrence, Occurrence, str]] = []
    stack = [o]
    seen = {o}
    while stack:
        cur = stack.pop()
        rule = p.at(cur.address).rule
        for up in immediate_ancestors(p, cur, strong=False):
            edges.append((cur, up, rule))
            if up not in seen:
                seen.add(up)
                stack.append(up)
    return ContractionTree(o, tuple(edges))


def is_cut_free_check(p: Preproof) -> bool:
    return all(node.rule != CUT for _, node in p)


def active_contractions(p: Preproof, o: Occurrence) -> set[Address]:
    """Addresses of contractions whose involved variables are weak ancestors of ``o``."""
    anc = ancestors(p, o, strong=False) | {o}
    out = set()
    for occ in anc:
        node = p.at(occ.address)
        if node.rule == CTR and occ.index == node.params[0]:
            ups = immediate_ancestors(p, occ, strong=False)
            if all(u in anc for u in ups) and len(ups) == 2:
                out.add(occ.address)
    return out


def slack(p: Preproof, o: Occurrence) -> int:
    """Number of trivalent contraction-tree vertices whose incoming edge is
    not an active contraction."""
    tree = contraction_tree(p, o)
    outgoing: dict[Occurrence, int] = {}
    incoming: dict[Occurrence, str] = {}
    for a, b, rule in tree.edges:
        outgoing[a] = outgoing.get(a, 0) + 1
        incoming[b] = rule
    active = active_contractions(p, o)
    count = 0
    for v, deg in outgoing.items():
        if deg < 2 or v not in incoming:
            continue  # the root has no incoming edge and is never trivalent
        rule = incoming[v]
        # the incoming edge crosses the node below v; it is an active
        # contraction precisely when that node is a ctr in the active set
        if v.address and v.address[:-1] in active:
            continue
        count += 1
    return count


def in_contraction_normal_form(p: Preproof, o: Occurrence) -> bool:
    return slack(p, o) == 0


def normalisation_measure(p: Preproof, o: Occurrence) -> int:
    """Sum over branch vertices of the number of non-active rules on the
    path to the root; zero exactly in contraction normal form."""
    tree = contraction_tree(p, o)
    children: dict[Occurrence, list[Occurrence]] = {}
    for a, b, _ in tree.edges:
        children.setdefault(a, []).append(b)
    active = active_contractions(p, o)
    total = 0
    # the edge v -> k crosses the node directly below k, at address v.address
    stack = [(tree.root, 0)]
    while stack:
        v, depth = stack.pop()
        kids = children.get(v, [])
        if len(kids) >= 2:
            total += depth
        crossed_active = v.address in active
        for k in kids:
            stack.append((k, depth if crossed_active else depth + 1))
    return total
