"""The generating relations as directional local rewrites at tree addresses.

Each rule rewrites the subtree rooted at an address, leaving that subtree's
conclusion unchanged, so rules apply anywhere in a proof (the compatibility
closure).  ``forward`` goes left-to-right in the defining display; backward
directions exist for trace replay and for building examples, and the ones
that would have to resynthesise a deleted branch carry it in the step's aux
data.

Index conventions are 0-based throughout; ``g`` abbreviates the length of a
left premise's antecedent.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .ancestry import Occurrence, subst_strong
from .proofs import (
    AX, CTR, CUT, EX, LIMP, LOGICAL, RIMP, STRUCTURAL, WEAK,
    Address, Preproof, ProofError, ax, ctr, cut, ex, limp, replace_at, rimp,
    validate, weak,
)
from .syntax import Formula, Imp, Variable, fresh_variable

FORWARD, BACKWARD = "forward", "backward"


class InapplicableStep(ProofError):
    pass


class UnsupportedDirection(ProofError):
    pass


@dataclass(frozen=True)
class RewriteStep:
    rule: str
    address: Address
    direction: str
    aux: tuple = ()

    def __repr__(self) -> str:
        arrow = "->" if self.direction == FORWARD else "<-"
        return f"<{self.rule} {arrow} at {list(self.address)} {self.aux!r}>"


# ---------------------------------------------------------------------------
# shared construction helpers

def ex_run(p: Preproof, positions: Iterable[int]) -> Preproof:
    """Apply exchanges in order; the first position is applied first."""
    for pos in positions:
        p = ex(p, pos)
    return p


def move_left_positions(src: int, dst: int) -> list[int]:
    """Exchange positions carrying the variable at ``src`` left to ``dst``."""
    return list(range(src - 1, dst - 1, -1))


def move_right_positions(src: int, dst: int) -> list[int]:
    """Exchange positions carrying the variable at ``src`` right to ``dst``."""
    return list(range(src, dst))


def block_swap_positions(s1: int, s2: int, offset: int = 0) -> list[int]:
    """Exchanges turning ``X(s1) Y(s2)`` at ``offset`` into ``Y X``."""
    out: list[int] = []
    for t in range(s2):
        out.extend(range(offset + s1 + t - 1, offset + t - 1, -1))
    return out


def merge_blocks(p: Preproof, start: int, g: int) -> Preproof:
    """Contract two adjacent equal-length blocks pairwise, left to right.

    The antecedent ``..., A_0..A_{g-1}, B_0..B_{g-1}, ...`` becomes
    ``..., A_0..A_{g-1}, ...`` via derived contractions with increasing
    tail indices.
    """
    for k in range(g):
        p = ex_run(p, range(start + g - 1, start + k, -1))
        p = ctr(p, start + k)
    return p


def weak_run(p: Preproof, at: int, vars: Iterable[Variable]) -> Preproof:
    """Insert ``vars`` left-to-right starting at position ``at``."""
    for k, v in enumerate(vars):
        p = weak(p, at + k, v)
    return p


def chain_permutation(positions_bottom_first: list[int], n: int) -> tuple[int, ...]:
    """Permutation P with bottom[j] = top[P(j)] realized by an exchange chain."""
    arr = list(range(n))
    for pos in reversed(positions_bottom_first):
        arr[pos], arr[pos + 1] = arr[pos + 1], arr[pos]
    return tuple(arr)


def sort_decomposition(perm: tuple[int, ...]) -> list[int]:
    """Canonical bottom-first exchange chain realizing ``perm``."""
    n = len(perm)
    arr = list(range(n))
    ops: list[int] = []
    for j in range(n):
        k = arr.index(perm[j], j)
        for m in range(k - 1, j - 1, -1):
            arr[m], arr[m + 1] = arr[m + 1], arr[m]
            ops.append(m)
    return list(reversed(ops))


def collect_variables(p: Preproof) -> set[Variable]:
    out: set[Variable] = set()
    for _, node in p:
        out.update(node.conclusion.antecedent)
    return out


def _fresh(root: Preproof, ty: Formula) -> Variable:
    return fresh_variable(ty, collect_variables(root))


def _ex_chain(node: Preproof) -> tuple[list[int], Preproof]:
    """Maximal run of exchanges from ``node`` upward; bottom-first positions."""
    positions: list[int] = []
    while node.rule == EX:
        positions.append(node.params[0])
        node = node.children[0]
    return positions, node


# ---------------------------------------------------------------------------
# rule framework

MatchFn = Callable[[Preproof, Preproof], list[tuple]]
ApplyFn = Callable[[Preproof, Preproof, tuple], Preproof]


@dataclass(frozen=True)
class Rule:
    id: str
    invariant: str  # "exact" | "beta_eta"
    fwd_match: MatchFn
    fwd_apply: ApplyFn
    bwd_match: MatchFn | None = None
    bwd_apply: ApplyFn | None = None


_RULES: dict[str, Rule] = {}


def _rule(id: str, invariant: str = "exact"):
    def deco(build):
        fwd_match, fwd_apply, bwd_match, bwd_apply = build()
        _RULES[id] = Rule(id, invariant, fwd_match, fwd_apply, bwd_match, bwd_apply)
        return build
    return deco


def _none(root: Preproof, node: Preproof) -> list[tuple]:
    return []


# ---------------------------------------------------------------------------
# alpha rules: rename the chain of an occurrence eliminated by the rule

def _alpha_rule(id: str, want_rule: str, occof: Callable[[Preproof], Occurrence | None],
                rebuild_with: Callable[[Preproof, Preproof], Preproof]):
    def match(root: Preproof, node: Preproof) -> list[tuple]:
        if node.rule != want_rule:
            return []
        o = occof(node)
        if o is None:
            return []
        child = node.children[o.address[0]]
        old = child.conclusion.antecedent[o.index]
        return [(_fresh(root, old.type),)]

    def apply(root: Preproof, node: Preproof, aux: tuple) -> Preproof:
        if node.rule != want_rule:
            raise InapplicableStep(f"{id}: expected a {want_rule} node")
        (y,) = aux
        o = occof(node)
        assert o is not None
        which = o.address[0]
        child = node.children[which]
        old = child.conclusion.antecedent[o.index]
        if y.type != old.type:
            raise InapplicableStep(f"{id}: replacement variable has the wrong type")
        renamed = subst_strong(child, Occurrence((), o.index), y)
        return rebuild_with(node, renamed)

    return match, apply, match, apply


@_rule("alpha_cut")
def _alpha_cut():
    def occ(node: Preproof) -> Occurrence | None:
        return Occurrence((1,), node.params[0])
    def rebuild(node: Preproof, renamed: Preproof) -> Preproof:
        return cut(node.children[0], renamed, node.params[0])
    return _alpha_rule("alpha_cut", CUT, occ, rebuild)


@_rule("alpha_ctr")
def _alpha_ctr():
    def occ(node: Preproof) -> Occurrence | None:
        return Occurrence((0,), node.params[0] + 1)
    def rebuild(node: Preproof, renamed: Preproof) -> Preproof:
        return ctr(renamed, node.params[0])
    return _alpha_rule("alpha_ctr", CTR, occ, rebuild)


@_rule("alpha_R")
def _alpha_R():
    def occ(node: Preproof) -> Occurrence | None:
        return Occurrence((0,), node.params[0])
    def rebuild(node: Preproof, renamed: Preproof) -> Preproof:
        return rimp(renamed, node.params[0])
    return _alpha_rule("alpha_R", RIMP, occ, rebuild)


@_rule("alpha_L")
def _alpha_L():
    def occ(node: Preproof) -> Occurrence | None:
        return Occurrence((1,), node.params[0])
    def rebuild(node: Preproof, renamed: Preproof) -> Preproof:
        return limp(node.children[0], renamed, node.params[0], node.params[1])
    return _alpha_rule("alpha_L", LIMP, occ, rebuild)


# ---------------------------------------------------------------------------
# tau rules

@_rule("tau_cut")
def _tau_cut():
    def fmatch(root, node):
        if node.rule == CUT and node.params[0] + 1 < len(node.children[1].conclusion.antecedent):
            return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("tau_cut: cut variable has no right neighbour")
        i = node.params[0]
        return cut(node.children[0], ex(node.children[1], i), i + 1)

    def bmatch(root, node):
        if (node.rule == CUT and node.params[0] >= 1
                and node.children[1].rule == EX
                and node.children[1].params[0] == node.params[0] - 1):
            return [()]
        return []

    def bapply(root, node, aux):
        if not bmatch(root, node):
            raise InapplicableStep("tau_cut backward: no matching exchange above the cut")
        i = node.params[0]
        return cut(node.children[0], node.children[1].children[0], i - 1)

    return fmatch, fapply, bmatch, bapply


@_rule("tau_ctr_ex")
def _tau_ctr_ex():
    def fmatch(root, node):
        if (node.rule == EX and node.children[0].rule == CTR
                and node.params[0] == node.children[0].params[0]):
            return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("tau_ctr_ex: expected exchange over contraction at one index")
        a = node.params[0]
        base = node.children[0].children[0]
        return ctr(ex(ex(base, a + 1), a), a + 1)

    def bmatch(root, node):
        if (node.rule == CTR and node.params[0] >= 1
                and node.children[0].rule == EX
                and node.children[0].params[0] == node.params[0] - 1
                and node.children[0].children[0].rule == EX
                and node.children[0].children[0].params[0] == node.params[0]):
            return [()]
        return []

    def bapply(root, node, aux):
        if not bmatch(root, node):
            raise InapplicableStep("tau_ctr_ex backward: pattern mismatch")
        a = node.params[0] - 1
        base = node.children[0].children[0].children[0]
        return ex(ctr(base, a), a)

    return fmatch, fapply, bmatch, bapply


@_rule("tau_weak_ex")
def _tau_weak_ex():
    def fmatch(root, node):
        if (node.rule == EX and node.children[0].rule == WEAK
                and node.children[0].params[0] == node.params[0] + 1):
            return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("tau_weak_ex: pattern mismatch")
        i = node.params[0]
        v = node.children[0].params[1]
        return weak(node.children[0].children[0], i, v)

    def bmatch(root, node):
        if node.rule == WEAK and node.params[0] < len(node.children[0].conclusion.antecedent):
            return [()]
        return []

    def bapply(root, node, aux):
        if not bmatch(root, node):
            raise InapplicableStep("tau_weak_ex backward: weakening at the extreme right")
        i, v = node.params
        return ex(weak(node.children[0], i + 1, v), i)

    return fmatch, fapply, bmatch, bapply


@_rule("tau_R_ex")
def _tau_R_ex():
    def fmatch(root, node):
        if node.rule == RIMP and node.params[0] >= 1:
            return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("tau_R_ex: introduction already leftmost")
        j = node.params[0]
        return rimp(ex(node.children[0], j - 1), j - 1)

    def bmatch(root, node):
        if (node.rule == RIMP and node.children[0].rule == EX
                and node.children[0].params[0] == node.params[0]):
            return [()]
        return []

    def bapply(root, node, aux):
        if not bmatch(root, node):
            raise InapplicableStep("tau_R_ex backward: pattern mismatch")
        j = node.params[0]
        return rimp(node.children[0].children[0], j + 1)

    return fmatch, fapply, bmatch, bapply


@_rule("tau_L_ex2")
def _tau_L_ex2():
    def fmatch(root, node):
        if (node.rule == LIMP
                and node.params[0] + 1 < len(node.children[1].conclusion.antecedent)):
            return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("tau_L_ex2: consumed variable has no right neighbour")
        i, y = node.params
        return limp(node.children[0], ex(node.children[1], i), i + 1, y)

    def bmatch(root, node):
        if (node.rule == LIMP and node.params[0] >= 1
                and node.children[1].rule == EX
                and node.children[1].params[0] == node.params[0] - 1):
            return [()]
        return []

    def bapply(root, node, aux):
        if not bmatch(root, node):
            raise InapplicableStep("tau_L_ex2 backward: pattern mismatch")
        i, y = node.params
        return limp(node.children[0], node.children[1].children[0], i - 1, y)

    return fmatch, fapply, bmatch, bapply


@_rule("tau_ex_ex")
def _tau_ex_ex():
    def fmatch(root, node):
        if node.rule != EX:
            return []
        positions, base = _ex_chain(node)
        n = len(node.conclusion.antecedent)
        perm = chain_permutation(positions, n)
        canonical = sort_decomposition(perm)
        if canonical == positions:
            return []
        return [(tuple(canonical),)]

    def fapply(root, node, aux):
        (target,) = aux
        positions, base = _ex_chain(node)
        n = len(node.conclusion.antecedent)
        if chain_permutation(list(target), n) != chain_permutation(positions, n):
            raise InapplicableStep("tau_ex_ex: decompositions realize different permutations")
        p = base
        for pos in target:
            p = ex(p, pos)
        return p

    return fmatch, fapply, fmatch, fapply


# ---------------------------------------------------------------------------
# commuting conversions: structural over structural

def _two_unary(idname: str,
               down_rule: str, up_rule: str,
               fwd_cond, fwd_build, bwd_cond, bwd_build):
    """Helper for stacks of two unary rules (down = closer to the root)."""
    def fmatch(root, node):
        if node.rule == down_rule and node.children[0].rule == up_rule \
                and fwd_cond(node, node.children[0]):
            return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep(f"{idname}: pattern mismatch")
        return fwd_build(node, node.children[0], node.children[0].children[0])

    def bmatch(root, node):
        if node.rule == up_rule and node.children[0].rule == down_rule \
                and bwd_cond(node, node.children[0]):
            return [()]
        return []

    def bapply(root, node, aux):
        if not bmatch(root, node):
            raise InapplicableStep(f"{idname} backward: pattern mismatch")
        return bwd_build(node, node.children[0], node.children[0].children[0])

    return fmatch, fapply, bmatch, bapply


@_rule("comm_weak_weak")
def _comm_weak_weak():
    return _two_unary(
        "comm_weak_weak", WEAK, WEAK,
        lambda n, c: n.params[0] > c.params[0],
        lambda n, c, base: weak(weak(base, n.params[0] - 1, n.params[1]),
                                c.params[0], c.params[1]),
        lambda n, c: c.params[0] >= n.params[0],
        lambda n, c, base: weak(weak(base, n.params[0], n.params[1]),
                                c.params[0] + 1, c.params[1]),
    )


@_rule("comm_ctr_weak")
def _comm_ctr_weak():
    return _two_unary(
        "comm_ctr_weak", WEAK, CTR,
        lambda n, c: n.params[0] > c.params[0],
        lambda n, c, base: ctr(weak(base, n.params[0] + 1, n.params[1]), c.params[0]),
        lambda n, c: c.params[0] > n.params[0] + 1,
        lambda n, c, base: weak(ctr(base, n.params[0]), c.params[0] - 1, c.params[1]),
    )


@_rule("comm_ctr_weak2")
def _comm_ctr_weak2():
    return _two_unary(
        "comm_ctr_weak2", WEAK, CTR,
        lambda n, c: n.params[0] <= c.params[0],
        lambda n, c, base: ctr(weak(base, n.params[0], n.params[1]), c.params[0] + 1),
        lambda n, c: c.params[0] < n.params[0],
        lambda n, c, base: weak(ctr(base, n.params[0] - 1), c.params[0], c.params[1]),
    )


@_rule("comm_ex_weak")
def _comm_ex_weak():
    return _two_unary(
        "comm_ex_weak", WEAK, EX,
        lambda n, c: n.params[0] >= c.params[0] + 2,
        lambda n, c, base: ex(weak(base, n.params[0], n.params[1]), c.params[0]),
        lambda n, c: c.params[0] >= n.params[0] + 2,
        lambda n, c, base: weak(ex(base, n.params[0]), c.params[0], c.params[1]),
    )


@_rule("comm_ex_weak2")
def _comm_ex_weak2():
    return _two_unary(
        "comm_ex_weak2", WEAK, EX,
        lambda n, c: n.params[0] <= c.params[0],
        lambda n, c, base: ex(weak(base, n.params[0], n.params[1]), c.params[0] + 1),
        lambda n, c: c.params[0] <= n.params[0] - 1,
        lambda n, c, base: weak(ex(base, n.params[0] - 1), c.params[0], c.params[1]),
    )


@_rule("comm_ctr_ctr2")
def _comm_ctr_ctr2():
    return _two_unary(
        "comm_ctr_ctr2", CTR, CTR,
        lambda n, c: n.params[0] > c.params[0],
        lambda n, c, base: ctr(ctr(base, n.params[0] + 1), c.params[0]),
        lambda n, c: c.params[0] > n.params[0] + 1,
        lambda n, c, base: ctr(ctr(base, n.params[0]), c.params[0] - 1),
    )


@_rule("comm_ex_ctr")
def _comm_ex_ctr():
    return _two_unary(
        "comm_ex_ctr", CTR, EX,
        lambda n, c: n.params[0] >= c.params[0] + 2,
        lambda n, c, base: ex(ctr(base, n.params[0]), c.params[0]),
        lambda n, c: c.params[0] >= n.params[0] + 2,
        lambda n, c, base: ctr(ex(base, n.params[0]), c.params[0]),
    )


@_rule("comm_ex_ctr2")
def _comm_ex_ctr2():
    return _two_unary(
        "comm_ex_ctr2", CTR, EX,
        lambda n, c: n.params[0] + 1 < c.params[0],
        lambda n, c, base: ex(ctr(base, n.params[0]), c.params[0] - 1),
        lambda n, c: n.params[0] >= c.params[0] + 1,
        lambda n, c, base: ctr(ex(base, n.params[0] + 1), c.params[0]),
    )


@_rule("comm_R_ex")
def _comm_R_ex():
    return _two_unary(
        "comm_R_ex", EX, RIMP,
        lambda n, c: c.params[0] >= n.params[0] + 2,
        lambda n, c, base: rimp(ex(base, n.params[0]), c.params[0]),
        lambda n, c: n.params[0] >= c.params[0] + 2,
        lambda n, c, base: ex(rimp(base, n.params[0]), c.params[0]),
    )


@_rule("comm_R_weak")
def _comm_R_weak():
    return _two_unary(
        "comm_R_weak", WEAK, RIMP,
        lambda n, c: n.params[0] == c.params[0],
        lambda n, c, base: rimp(weak(base, n.params[0], n.params[1]), c.params[0] + 1),
        lambda n, c: n.params[0] >= 1 and c.params[0] == n.params[0] - 1,
        lambda n, c, base: weak(rimp(base, n.params[0] - 1), n.params[0] - 1, c.params[1]),
    )


@_rule("comm_R_ctr")
def _comm_R_ctr():
    return _two_unary(
        "comm_R_ctr", CTR, RIMP,
        lambda n, c: c.params[0] >= n.params[0] + 2,
        lambda n, c, base: rimp(ctr(base, n.params[0]), c.params[0] - 1),
        lambda n, c: n.params[0] >= c.params[0] + 1,
        lambda n, c, base: ctr(rimp(base, n.params[0] + 1), c.params[0]),
    )


@_rule("comm_R_L")
def _comm_R_L():
    def fmatch(root, node):
        if (node.rule == LIMP and node.children[1].rule == RIMP
                and node.children[1].params[0] == node.params[0] + 1):
            return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("comm_R_L: pattern mismatch")
        i, y = node.params
        left, inner = node.children[0], node.children[1].children[0]
        g = len(left.conclusion.antecedent)
        return rimp(limp(left, inner, i, y), 1 + g + i)

    def bmatch(root, node):
        if node.rule != RIMP or node.children[0].rule != LIMP:
            return []
        child = node.children[0]
        g = len(child.children[0].conclusion.antecedent)
        if node.params[0] == 1 + g + child.params[0]:
            return [()]
        return []

    def bapply(root, node, aux):
        if not bmatch(root, node):
            raise InapplicableStep("comm_R_L backward: pattern mismatch")
        child = node.children[0]
        i, y = child.params
        return limp(child.children[0], rimp(child.children[1], i + 1), i, y)

    return fmatch, fapply, bmatch, bapply


@_rule("comm_weak_L")
def _comm_weak_L():
    # segment "ab": weakening inside the left branch <-> weakening below;
    # segment "bc": weakening below <-> weakening at the front of the right
    # branch followed by the exchanges that park it after the left block.
    def fmatch(root, node):
        out = []
        if node.rule == LIMP and node.children[0].rule == WEAK:
            out.append(("ab",))
        if node.rule == WEAK and node.children[0].rule == LIMP:
            g1 = len(node.children[0].children[0].conclusion.antecedent)
            if 1 <= node.params[0] <= g1 + 1:
                out.append(("bc",))
        return out

    def fapply(root, node, aux):
        (segment,) = aux
        if segment == "ab":
            if not (node.rule == LIMP and node.children[0].rule == WEAK):
                raise InapplicableStep("comm_weak_L(ab): pattern mismatch")
            i, y = node.params
            wk = node.children[0]
            j, z = wk.params
            return weak(limp(wk.children[0], node.children[1], i, y), 1 + j, z)
        if segment == "bc":
            if not (node.rule == WEAK and node.children[0].rule == LIMP):
                raise InapplicableStep("comm_weak_L(bc): pattern mismatch")
            b, z = node.params
            l = node.children[0]
            i, y = l.params
            g1 = len(l.children[0].conclusion.antecedent)
            if not 1 <= b <= g1 + 1:
                raise InapplicableStep("comm_weak_L(bc): weakening outside the left block")
            core = limp(l.children[0], weak(l.children[1], 0, z), i + 1, y)
            return ex_run(core, move_left_positions(1 + g1, b))
        raise InapplicableStep(f"comm_weak_L: unknown segment {segment!r}")

    def _bc_chain_fits(positions, base) -> bool:
        if not (base.rule == LIMP and base.params[0] >= 1
                and base.children[1].rule == WEAK
                and base.children[1].params[0] == 0):
            return False
        g1 = len(base.children[0].conclusion.antecedent)
        src = 1 + g1
        # bottom-first the parking run reads b, b+1, ..., src-1
        expect = list(range(src - len(positions), src))
        return positions == expect and (not positions or positions[0] >= 1)

    def bmatch(root, node):
        out = []
        if node.rule == WEAK and node.children[0].rule == LIMP:
            g1 = len(node.children[0].children[0].conclusion.antecedent)
            if 1 <= node.params[0] <= g1 + 1:
                out.append(("ab",))
        positions, base = _ex_chain(node)
        if _bc_chain_fits(positions, base):
            out.append(("bc",))
        return out

    def bapply(root, node, aux):
        (segment,) = aux
        if segment == "ab":
            if not (node.rule == WEAK and node.children[0].rule == LIMP):
                raise InapplicableStep("comm_weak_L(ab) backward: pattern mismatch")
            b, z = node.params
            l = node.children[0]
            i, y = l.params
            g1 = len(l.children[0].conclusion.antecedent)
            if not 1 <= b <= g1 + 1:
                raise InapplicableStep("comm_weak_L(ab) backward: weakening outside the left block")
            return limp(weak(l.children[0], b - 1, z), l.children[1], i, y)
        if segment == "bc":
            positions, base = _ex_chain(node)
            if not _bc_chain_fits(positions, base):
                raise InapplicableStep("comm_weak_L(bc) backward: not a parking run")
            g1 = len(base.children[0].conclusion.antecedent)
            b = 1 + g1 - len(positions)
            i, y = base.params
            wk = base.children[1]
            z = wk.params[1]
            return weak(limp(base.children[0], wk.children[0], i - 1, y), b, z)
        raise InapplicableStep(f"comm_weak_L backward: unknown segment {segment!r}")

    return fmatch, fapply, bmatch, bapply


@_rule("comm_L_ctr")
def _comm_L_ctr():
    def fmatch(root, node):
        if node.rule == CTR and node.children[0].rule == LIMP:
            g = len(node.children[0].children[0].conclusion.antecedent)
            a = node.params[0]
            if 1 <= a and a + 1 <= g:
                return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("comm_L_ctr: pattern mismatch")
        a = node.params[0]
        l = node.children[0]
        i, y = l.params
        return limp(ctr(l.children[0], a - 1), l.children[1], i, y)

    def bmatch(root, node):
        if node.rule == LIMP and node.children[0].rule == CTR:
            return [()]
        return []

    def bapply(root, node, aux):
        if not bmatch(root, node):
            raise InapplicableStep("comm_L_ctr backward: pattern mismatch")
        i, y = node.params
        c = node.children[0]
        return ctr(limp(c.children[0], node.children[1], i, y), c.params[0] + 1)

    return fmatch, fapply, bmatch, bapply


@_rule("comm_L_ctr2")
def _comm_L_ctr2():
    def fmatch(root, node):
        if node.rule == CTR and node.children[0].rule == LIMP:
            l = node.children[0]
            g = len(l.children[0].conclusion.antecedent)
            a = node.params[0]
            if a >= g + 1 and a - 1 - g >= l.params[0]:
                return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("comm_L_ctr2: pattern mismatch")
        a = node.params[0]
        l = node.children[0]
        i, y = l.params
        g = len(l.children[0].conclusion.antecedent)
        r = a - 1 - g
        return limp(l.children[0], ctr(l.children[1], r + 1), i, y)

    def bmatch(root, node):
        if (node.rule == LIMP and node.children[1].rule == CTR
                and node.children[1].params[0] >= node.params[0] + 1):
            return [()]
        return []

    def bapply(root, node, aux):
        if not bmatch(root, node):
            raise InapplicableStep("comm_L_ctr2 backward: pattern mismatch")
        i, y = node.params
        c = node.children[1]
        g = len(node.children[0].conclusion.antecedent)
        return ctr(limp(node.children[0], c.children[0], i, y), 1 + g + c.params[0] - 1)

    return fmatch, fapply, bmatch, bapply


@_rule("comm_L_ex")
def _comm_L_ex():
    def fmatch(root, node):
        if node.rule == EX and node.children[0].rule == LIMP:
            g = len(node.children[0].children[0].conclusion.antecedent)
            a = node.params[0]
            if 1 <= a and a + 1 <= g:
                return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("comm_L_ex: pattern mismatch")
        a = node.params[0]
        l = node.children[0]
        i, y = l.params
        return limp(ex(l.children[0], a - 1), l.children[1], i, y)

    def bmatch(root, node):
        if node.rule == LIMP and node.children[0].rule == EX:
            return [()]
        return []

    def bapply(root, node, aux):
        if not bmatch(root, node):
            raise InapplicableStep("comm_L_ex backward: pattern mismatch")
        i, y = node.params
        e = node.children[0]
        return ex(limp(e.children[0], node.children[1], i, y), e.params[0] + 1)

    return fmatch, fapply, bmatch, bapply


@_rule("comm_L_ex2")
def _comm_L_ex2():
    def fmatch(root, node):
        if node.rule == EX and node.children[0].rule == LIMP:
            l = node.children[0]
            g = len(l.children[0].conclusion.antecedent)
            a = node.params[0]
            if a >= g + 1 and (a - 1 - g) + 1 < l.params[0]:
                return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("comm_L_ex2: pattern mismatch")
        a = node.params[0]
        l = node.children[0]
        i, y = l.params
        g = len(l.children[0].conclusion.antecedent)
        r = a - 1 - g
        return limp(l.children[0], ex(l.children[1], r), i, y)

    def bmatch(root, node):
        if (node.rule == LIMP and node.children[1].rule == EX
                and node.children[1].params[0] + 1 < node.params[0]):
            return [()]
        return []

    def bapply(root, node, aux):
        if not bmatch(root, node):
            raise InapplicableStep("comm_L_ex2 backward: pattern mismatch")
        i, y = node.params
        e = node.children[1]
        g = len(node.children[0].conclusion.antecedent)
        return ex(limp(node.children[0], e.children[0], i, y), 1 + g + e.params[0])

    return fmatch, fapply, bmatch, bapply


@_rule("comm_L_L")
def _comm_L_L():
    # lower rule consumes the variable directly left of the one consumed by
    # the upper rule, both living in the upper rule's right branch
    def fmatch(root, node):
        if node.rule != LIMP or node.children[1].rule != LIMP:
            return []
        upper = node.children[1]
        d = len(upper.children[0].conclusion.antecedent)
        if node.params[0] == d + upper.params[0]:
            return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("comm_L_L: pattern mismatch")
        i2, z2 = node.params         # lower rule (z')
        upper = node.children[1]
        i1, z1 = upper.params        # upper rule (z)
        pa = node.children[0]        # proof of the lower argument
        pb = upper.children[0]       # proof of the upper argument
        pc = upper.children[1]
        t = i1 - 1
        inner = limp(pa, pc, t, z2)
        ga = len(pa.conclusion.antecedent)
        outer = limp(pb, inner, 1 + ga + t, z1)
        gb = len(pb.conclusion.antecedent)
        return ex_run(outer, block_swap_positions(1 + gb, 1 + ga))

    def bmatch(root, node):
        positions, base = _ex_chain(node)
        if not positions or base.rule != LIMP or base.children[1].rule != LIMP:
            return []
        inner = base.children[1]
        ga = len(inner.children[0].conclusion.antecedent)
        gb = len(base.children[0].conclusion.antecedent)
        if base.params[0] != 1 + ga + inner.params[0]:
            return []
        n = len(node.conclusion.antecedent)
        # the run was emitted in application order; bottom-first reverses it
        want_chain = list(reversed(block_swap_positions(1 + gb, 1 + ga)))
        if chain_permutation(positions, n) == chain_permutation(want_chain, n):
            return [()]
        return []

    def bapply(root, node, aux):
        if not bmatch(root, node):
            raise InapplicableStep("comm_L_L backward: pattern mismatch")
        positions, base = _ex_chain(node)
        i_outer, z1 = base.params
        inner = base.children[1]
        t, z2 = inner.params
        pb = base.children[0]
        pa = inner.children[0]
        pc = inner.children[1]
        gb = len(pb.conclusion.antecedent)
        upper = limp(pb, pc, t + 1, z1)
        return limp(pa, upper, gb + t + 1, z2)

    return fmatch, fapply, bmatch, bapply


@_rule("comm_L_L2")
def _comm_L_L2():
    # lower rule consumes a variable from the upper rule's left branch
    def fmatch(root, node):
        if node.rule != LIMP or node.children[1].rule != LIMP:
            return []
        upper = node.children[1]
        d = len(upper.children[0].conclusion.antecedent)
        if 1 <= node.params[0] <= d:
            return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("comm_L_L2: pattern mismatch")
        i2, z2 = node.params
        upper = node.children[1]
        i1, z1 = upper.params
        pa = node.children[0]
        pb = upper.children[0]
        pc = upper.children[1]
        folded = limp(pa, pb, i2 - 1, z2)
        lower = limp(folded, pc, i1, z1)
        ga = len(pa.conclusion.antecedent)
        return ex_run(lower, move_right_positions(0, 1 + ga))

    def bmatch(root, node):
        positions, base = _ex_chain(node)
        if not positions or base.rule != LIMP or base.children[0].rule != LIMP:
            return []
        folded = base.children[0]
        ga = len(folded.children[0].conclusion.antecedent)
        # bottom-first the parking run reads ga, ga-1, ..., 0
        if positions == list(range(ga, -1, -1)):
            return [()]
        return []

    def bapply(root, node, aux):
        if not bmatch(root, node):
            raise InapplicableStep("comm_L_L2 backward: pattern mismatch")
        positions, base = _ex_chain(node)
        i1, z1 = base.params
        folded = base.children[0]
        k, z2 = folded.params
        pa, pb = folded.children
        pc = base.children[1]
        upper = limp(pb, pc, i1, z1)
        return limp(pa, upper, 1 + k, z2)

    return fmatch, fapply, bmatch, bapply


# ---------------------------------------------------------------------------
# co-equivalence

@_rule("co_ctr_assoc")
def _co_ctr_assoc():
    return _two_unary(
        "co_ctr_assoc", CTR, CTR,
        lambda n, c: n.params[0] == c.params[0],
        lambda n, c, base: ctr(ctr(base, n.params[0] + 1), n.params[0]),
        lambda n, c: c.params[0] == n.params[0] + 1,
        lambda n, c, base: ctr(ctr(base, n.params[0]), n.params[0]),
    )


@_rule("co_ctr_comm_alt")
def _co_ctr_comm_alt():
    def fmatch(root, node):
        return [()] if node.rule == CTR else []

    def fapply(root, node, aux):
        if node.rule != CTR:
            raise InapplicableStep("co_ctr_comm_alt: expected a contraction")
        a = node.params[0]
        base = node.children[0]
        first = base.conclusion.antecedent[a]
        renamed = subst_strong(base, Occurrence((), a + 1), first)
        return ctr(ex(renamed, a), a)

    def bmatch(root, node):
        if (node.rule == CTR and node.children[0].rule == EX
                and node.children[0].params[0] == node.params[0]):
            base = node.children[0].children[0]
            a = node.params[0]
            if base.conclusion.antecedent[a] == base.conclusion.antecedent[a + 1]:
                ty = base.conclusion.antecedent[a].type
                return [(_fresh(root, ty),)]
        return []

    def bapply(root, node, aux):
        if not bmatch(root, node):
            raise InapplicableStep("co_ctr_comm_alt backward: pattern mismatch")
        (y,) = aux
        a = node.params[0]
        base = node.children[0].children[0]
        renamed = subst_strong(base, Occurrence((), a + 1), y)
        return ctr(renamed, a)

    return fmatch, fapply, bmatch, bapply


@_rule("co_weak_ctr")
def _co_weak_ctr():
    # forward erases a contraction with a weakened-in partner; backward
    # expands any hypothesis into such a detour
    def fmatch(root, node):
        if (node.rule == CTR and node.children[0].rule == WEAK
                and node.children[0].params[0] == node.params[0] + 1):
            return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("co_weak_ctr: pattern mismatch")
        return node.children[0].children[0]

    def bmatch(root, node):
        out = []
        for a, v in enumerate(node.conclusion.antecedent):
            out.append((a, _fresh(root, v.type)))
        return out

    def bapply(root, node, aux):
        a, x2 = aux
        ant = node.conclusion.antecedent
        if not (0 <= a < len(ant)):
            raise InapplicableStep("co_weak_ctr backward: position out of range")
        if x2.type != ant[a].type:
            raise InapplicableStep("co_weak_ctr backward: wrong inserted type")
        return ctr(weak(node, a + 1, x2), a)

    return fmatch, fapply, bmatch, bapply


# ---------------------------------------------------------------------------
# lambda-equivalence

@_rule("lambda_L_L_ctr")
def _lambda_L_L_ctr():
    def fmatch(root, node):
        if (node.rule == LIMP and node.children[1].rule == CTR
                and node.children[1].params[0] == node.params[0]):
            y = node.params[1]
            return [(_fresh(root, y.type),)]
        return []

    def fapply(root, node, aux):
        if not (node.rule == LIMP and node.children[1].rule == CTR
                and node.children[1].params[0] == node.params[0]):
            raise InapplicableStep("lambda_L_L_ctr: pattern mismatch")
        (y2,) = aux
        i, y = node.params
        if y2.type != y.type:
            raise InapplicableStep("lambda_L_L_ctr: fresh variable has the wrong type")
        p1 = node.children[0]
        base = node.children[1].children[0]
        g = len(p1.conclusion.antecedent)
        inner = limp(p1, base, i + 1, y2)
        outer = limp(p1, inner, 1 + g + i, y)
        outer = ex_run(outer, move_left_positions(1 + g, 1))
        outer = ctr(outer, 0)
        return merge_blocks(outer, 1, g)

    def bmatch(root, node):
        return [()] if _lambda_llctr_parse(node) is not None else []

    def bapply(root, node, aux):
        parsed = _lambda_llctr_parse(node)
        if parsed is None:
            raise InapplicableStep("lambda_L_L_ctr backward: pattern mismatch")
        p1, base, i, y = parsed
        return limp(p1, ctr(base, i), i, y)

    return fmatch, fapply, bmatch, bapply


def _lambda_llctr_parse(node: Preproof):
    """Recognise the expanded form produced by lambda_L_L_ctr forward."""
    # peel the merge of the duplicated left block
    probe = node
    ctrs = 0
    # the merge is g contractions with interleaved parking exchanges; work
    # backwards by locating the inner double-limp first
    def find(n: Preproof, depth: int):
        if (n.rule == LIMP and n.children[1].rule == LIMP):
            return n, depth
        if n.rule in (CTR, EX) and n.children:
            return find(n.children[0], depth + 1)
        return None, depth

    core, _ = find(node, 0)
    if core is None:
        return None
    outer = core
    inner = outer.children[1]
    p1 = outer.children[0]
    if inner.children[0] != p1:
        return None
    g = len(p1.conclusion.antecedent)
    iy, y = outer.params
    i2, y2 = inner.params
    if i2 < 1 or iy != 1 + g + (i2 - 1):
        return None
    i = i2 - 1
    base = inner.children[1]
    expect = limp(p1, base, i + 1, y2)
    expect = limp(p1, expect, 1 + g + i, y)
    expect = ex_run(expect, move_left_positions(1 + g, 1))
    expect = ctr(expect, 0)
    expect = merge_blocks(expect, 1, g)
    if expect != node:
        return None
    return p1, base, i, y


@_rule("lambda_weak_L")
def _lambda_weak_L():
    def fmatch(root, node):
        if (node.rule == LIMP and node.children[1].rule == WEAK
                and node.children[1].params[0] == node.params[0]):
            return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("lambda_weak_L: pattern mismatch")
        i, y = node.params
        p1 = node.children[0]
        base = node.children[1].children[0]
        return weak_run(weak(base, 0, y), 1, p1.conclusion.antecedent)

    def bmatch(root, node):
        from .gen import prove  # local import: gen depends on rewrite helpers
        out = []
        # node must be a run weak(g,..) .. weak(1,..) over weak(0, y:p->q)
        chain: list[tuple[int, Variable]] = []
        probe = node
        while probe.rule == WEAK:
            chain.append((probe.params[0], probe.params[1]))
            probe = probe.children[0]
        if not chain or chain[-1][0] != 0:
            return []
        y = chain[-1][1]
        if not isinstance(y.type, Imp):
            return []
        # the positions below the innermost must be g, g-1, ..., 1
        g = len(chain) - 1
        if [c[0] for c in chain[:-1]] != list(range(g, 0, -1)):
            return []
        gamma = tuple(c[1] for c in reversed(chain[:-1]))
        p1 = prove(gamma, y.type.antecedent)
        if p1 is None:
            return []
        base = probe
        x = _fresh(root, y.type.consequent)
        out.append((0, x, p1))
        return out

    def bapply(root, node, aux):
        i, x, p1 = aux
        chain: list[tuple[int, Variable]] = []
        probe = node
        while probe.rule == WEAK:
            chain.append((probe.params[0], probe.params[1]))
            probe = probe.children[0]
        g = len(p1.conclusion.antecedent)
        if len(chain) < g + 1:
            raise InapplicableStep("lambda_weak_L backward: weakening run too short")
        chain = chain[:g + 1]
        base = node
        for _ in range(g + 1):
            base = base.children[0]
        y = chain[-1][1]
        if chain[-1][0] != 0 or [c[0] for c in chain[:-1]] != list(range(g, 0, -1)):
            raise InapplicableStep("lambda_weak_L backward: not an insertion run")
        if tuple(c[1] for c in reversed(chain[:-1])) != p1.conclusion.antecedent:
            raise InapplicableStep("lambda_weak_L backward: run does not insert the branch context")
        if not isinstance(y.type, Imp) or p1.conclusion.succedent != y.type.antecedent:
            raise InapplicableStep("lambda_weak_L backward: branch proves the wrong formula")
        if x.type != y.type.consequent:
            raise InapplicableStep("lambda_weak_L backward: consumed variable has the wrong type")
        return limp(p1, weak(base, i, x), i, y)

    return fmatch, fapply, bmatch, bapply


@_rule("eta", invariant="beta_eta")
def _eta():
    def fmatch(root, node):
        if (node.rule == RIMP and node.params[0] == 1
                and node.children[0].rule == LIMP
                and node.children[0].params[0] == 0
                and node.children[0].children[0].rule == AX
                and node.children[0].children[1].rule == AX):
            return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("eta: pattern mismatch")
        return ax(node.children[0].params[1])

    def bmatch(root, node):
        if node.rule == AX and isinstance(node.params[0].type, Imp):
            z = node.params[0]
            avoid = collect_variables(root)
            x = fresh_variable(z.type.antecedent, avoid)
            w = fresh_variable(z.type.consequent, avoid | {x})
            return [(x, w)]
        return []

    def bapply(root, node, aux):
        if node.rule != AX or not isinstance(node.params[0].type, Imp):
            raise InapplicableStep("eta backward: expected an axiom on an implication")
        x, w = aux
        z = node.params[0]
        if x.type != z.type.antecedent or w.type != z.type.consequent:
            raise InapplicableStep("eta backward: wrong auxiliary types")
        return rimp(limp(ax(x), ax(w), 0, z), 1)

    return fmatch, fapply, bmatch, bapply


# ---------------------------------------------------------------------------
# cut reductions

def _cut_parts(node: Preproof):
    if node.rule != CUT:
        return None
    return node.children[0], node.children[1], node.params[0]


@_rule("cut_ax_left")
def _cut_ax_left():
    def fmatch(root, node):
        parts = _cut_parts(node)
        if parts is None:
            return []
        left, right, i = parts
        if left.rule == AX and right.rule != CUT and i == 0:
            return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("cut_ax_left: pattern mismatch")
        left, right, i = _cut_parts(node)
        return subst_strong(right, Occurrence((), 0), left.params[0])

    def bmatch(root, node):
        if node.rule in (CUT,) or not node.conclusion.antecedent:
            return []
        x = node.conclusion.antecedent[0]
        return [(_fresh(root, x.type),)]

    def bapply(root, node, aux):
        if node.rule == CUT or not node.conclusion.antecedent:
            raise InapplicableStep("cut_ax_left backward: needs a proper rule and a hypothesis")
        (y,) = aux
        x = node.conclusion.antecedent[0]
        if y.type != x.type:
            raise InapplicableStep("cut_ax_left backward: wrong type")
        return cut(ax(x), subst_strong(node, Occurrence((), 0), y), 0)

    return fmatch, fapply, bmatch, bapply


@_rule("cut_ax_right")
def _cut_ax_right():
    def fmatch(root, node):
        parts = _cut_parts(node)
        if parts is None:
            return []
        left, right, i = parts
        if right.rule == AX and left.rule != CUT:
            return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("cut_ax_right: pattern mismatch")
        return node.children[0]

    def bmatch(root, node):
        if node.rule == CUT:
            return []
        return [(_fresh(root, node.conclusion.succedent),)]

    def bapply(root, node, aux):
        if node.rule == CUT:
            raise InapplicableStep("cut_ax_right backward: needs a proper final rule")
        (x,) = aux
        if x.type != node.conclusion.succedent:
            raise InapplicableStep("cut_ax_right backward: wrong type")
        return cut(node, ax(x), 0)

    return fmatch, fapply, bmatch, bapply


@_rule("cut_struc_vs_any")
def _cut_struc_vs_any():
    def fmatch(root, node):
        parts = _cut_parts(node)
        if parts is None:
            return []
        left, right, i = parts
        if left.rule in STRUCTURAL and right.rule != CUT:
            return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("cut_struc_vs_any: pattern mismatch")
        left, right, i = _cut_parts(node)
        inner = cut(left.children[0], right, i)
        if left.rule == CTR:
            return ctr(inner, left.params[0])
        if left.rule == WEAK:
            return weak(inner, left.params[0], left.params[1])
        return ex(inner, left.params[0])

    def bmatch(root, node):
        if node.rule not in STRUCTURAL or node.children[0].rule != CUT:
            return []
        inner = node.children[0]
        g = len(inner.children[0].conclusion.antecedent)
        a = node.params[0]
        span = a + (1 if node.rule == WEAK else 2)
        if node.rule == WEAK and a <= g:
            return [()]
        if node.rule in (CTR, EX) and span <= g:
            return [()]
        return []

    def bapply(root, node, aux):
        if not bmatch(root, node):
            raise InapplicableStep("cut_struc_vs_any backward: pattern mismatch")
        inner = node.children[0]
        left, right, i = _cut_parts(inner)
        if right.rule == CUT:
            raise InapplicableStep("cut_struc_vs_any backward: right branch ends in a cut")
        if node.rule == CTR:
            new_left = ctr(left, node.params[0])
        elif node.rule == WEAK:
            new_left = weak(left, node.params[0], node.params[1])
        else:
            new_left = ex(left, node.params[0])
        return cut(new_left, right, i)

    return fmatch, fapply, bmatch, bapply


@_rule("cut_L_vs_any")
def _cut_L_vs_any():
    def fmatch(root, node):
        parts = _cut_parts(node)
        if parts is None:
            return []
        left, right, i = parts
        if left.rule == LIMP and right.rule != CUT:
            return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("cut_L_vs_any: pattern mismatch")
        left, right, i = _cut_parts(node)
        inner = cut(left.children[1], right, i)
        return limp(left.children[0], inner, left.params[0], left.params[1])

    def bmatch(root, node):
        if node.rule != LIMP or node.children[1].rule != CUT:
            return []
        innercut = node.children[1]
        if innercut.children[1].rule == CUT:
            return []
        if node.params[0] < len(innercut.children[0].conclusion.antecedent):
            return [()]
        return []

    def bapply(root, node, aux):
        if not bmatch(root, node):
            raise InapplicableStep("cut_L_vs_any backward: pattern mismatch")
        i, y = node.params
        innercut = node.children[1]
        p2, p3, ci = innercut.children[0], innercut.children[1], innercut.params[0]
        return cut(limp(node.children[0], p2, i, y), p3, ci)

    return fmatch, fapply, bmatch, bapply


@_rule("cut_log_vs_struc_np")
def _cut_log_vs_struc_np():
    def _fits(node):
        parts = _cut_parts(node)
        if parts is None:
            return None
        left, right, i = parts
        if left.rule not in LOGICAL or right.rule not in STRUCTURAL:
            return None
        a = right.params[0]
        if right.rule == WEAK and i == a:
            return None
        if right.rule == CTR and i == a:
            return None
        if right.rule == EX and i in (a, a + 1):
            return None
        return left, right, i, a

    def fmatch(root, node):
        return [()] if _fits(node) is not None else []

    def fapply(root, node, aux):
        got = _fits(node)
        if got is None:
            raise InapplicableStep("cut_log_vs_struc_np: pattern mismatch")
        left, right, i, a = got
        g = len(left.conclusion.antecedent)
        base = right.children[0]
        new_a = g + a - (1 if i < a else 0)
        if right.rule == WEAK:
            i2 = i - (1 if i > a else 0)
            return weak(cut(left, base, i2), new_a, right.params[1])
        if right.rule == CTR:
            i2 = i + (1 if i > a else 0)
            return ctr(cut(left, base, i2), new_a)
        # EX
        return ex(cut(left, base, i), new_a)

    def bmatch(root, node):
        return [()] if _bwd_find(node) is not None else []

    def _bwd_find(node):
        if node.rule not in STRUCTURAL or node.children[0].rule != CUT:
            return None
        inner = node.children[0]
        left, base, i2 = inner.children[0], inner.children[1], inner.params[0]
        if left.rule not in LOGICAL:
            return None
        # search the (a, i) pair whose forward image is this node
        for a in range(len(base.conclusion.antecedent) + 2):
            for i in range(len(base.conclusion.antecedent) + 2):
                try:
                    if node.rule == WEAK:
                        cand = cut(left, weak(base, a, node.params[1]), i)
                    elif node.rule == CTR:
                        cand = cut(left, ctr(base, a), i)
                    else:
                        cand = cut(left, ex(base, a), i)
                except ProofError:
                    continue
                got = _fits(cand)
                if got is None:
                    continue
                if fapply(None, cand, ()) == node:
                    return cand
        return None

    def bapply(root, node, aux):
        cand = _bwd_find(node)
        if cand is None:
            raise InapplicableStep("cut_log_vs_struc_np backward: no preimage")
        return cand

    return fmatch, fapply, bmatch, bapply


@_rule("cut_log_vs_ctr")
def _cut_log_vs_ctr():
    def fmatch(root, node):
        parts = _cut_parts(node)
        if parts is None:
            return []
        left, right, i = parts
        if left.rule in LOGICAL and right.rule == CTR and right.params[0] == i:
            return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("cut_log_vs_ctr: pattern mismatch")
        left, right, i = _cut_parts(node)
        base = right.children[0]
        g = len(left.conclusion.antecedent)
        inner = cut(left, base, i)
        outer = cut(left, inner, g + i)
        return merge_blocks(outer, 0, g)

    return fmatch, fapply, None, None


@_rule("cut_log_vs_weak")
def _cut_log_vs_weak():
    def fmatch(root, node):
        parts = _cut_parts(node)
        if parts is None:
            return []
        left, right, i = parts
        if left.rule in LOGICAL and right.rule == WEAK and right.params[0] == i:
            return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("cut_log_vs_weak: pattern mismatch")
        left, right, i = _cut_parts(node)
        return weak_run(right.children[0], 0, left.conclusion.antecedent)

    return fmatch, fapply, None, None


@_rule("cut_R_vs_R")
def _cut_R_vs_R():
    def fmatch(root, node):
        parts = _cut_parts(node)
        if parts is None:
            return []
        left, right, i = parts
        if left.rule == RIMP and right.rule == RIMP:
            return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("cut_R_vs_R: pattern mismatch")
        left, right, i = _cut_parts(node)
        c2 = right.params[0]
        base = right.children[0]
        i2 = i + (1 if i >= c2 else 0)
        g = len(left.conclusion.antecedent)
        new_c = g + c2 - (1 if i2 < c2 else 0)
        return rimp(cut(left, base, i2), new_c)

    return fmatch, fapply, None, None


@_rule("cut_R_vs_L", invariant="beta_eta")
def _cut_R_vs_L():
    def fmatch(root, node):
        parts = _cut_parts(node)
        if parts is None:
            return []
        left, right, i = parts
        if left.rule == RIMP and right.rule == LIMP and i == 0:
            return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("cut_R_vs_L: pattern mismatch")
        left, right, _ = _cut_parts(node)
        p1, c = left.children[0], left.params[0]
        p2, p3, i3 = right.children[0], right.children[1], right.params[0]
        inner1 = cut(p2, p1, c)
        inner2 = cut(inner1, p3, i3)
        t = len(p2.conclusion.antecedent)
        gd = len(p1.conclusion.antecedent) - 1
        return ex_run(inner2, block_swap_positions(t, gd))

    return fmatch, fapply, None, None


@_rule("cut_R_vs_L_nonp")
def _cut_R_vs_L_nonp():
    def fmatch(root, node):
        parts = _cut_parts(node)
        if parts is None:
            return []
        left, right, i = parts
        if left.rule == RIMP and right.rule == LIMP \
                and i >= 1 + len(right.children[0].conclusion.antecedent):
            return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("cut_R_vs_L_nonp: pattern mismatch")
        left, right, i = _cut_parts(node)
        p2, p3, i3 = right.children[0], right.children[1], right.params[0]
        yv = right.params[1]
        d = len(p2.conclusion.antecedent)
        rr = i - 1 - d
        pos3 = rr + (1 if rr >= i3 else 0)
        g = len(left.conclusion.antecedent)
        inner = cut(left, p3, pos3)
        new_i3 = g + i3 - (1 if pos3 < i3 else 0)
        relimp = limp(p2, inner, new_i3, yv)
        return ex_run(relimp, block_swap_positions(1 + d, g))

    return fmatch, fapply, None, None


@_rule("cut_R_vs_L_nonp2")
def _cut_R_vs_L_nonp2():
    def fmatch(root, node):
        parts = _cut_parts(node)
        if parts is None:
            return []
        left, right, i = parts
        if left.rule == RIMP and right.rule == LIMP \
                and 1 <= i <= len(right.children[0].conclusion.antecedent):
            return [()]
        return []

    def fapply(root, node, aux):
        if not fmatch(root, node):
            raise InapplicableStep("cut_R_vs_L_nonp2: pattern mismatch")
        left, right, i = _cut_parts(node)
        p2, p3, i3 = right.children[0], right.children[1], right.params[0]
        yv = right.params[1]
        g = len(left.conclusion.antecedent)
        inner = cut(left, p2, i - 1)
        relimp = limp(inner, p3, i3, yv)
        return ex_run(relimp, move_right_positions(0, g))

    return fmatch, fapply, None, None


# ---------------------------------------------------------------------------
# public interface

RULE_IDS: tuple[str, ...] = tuple(_RULES)

assert len(RULE_IDS) == 46, f"rule catalogue has {len(RULE_IDS)} entries"


def rule_info(rule: str) -> Rule:
    try:
        return _RULES[rule]
    except KeyError:
        raise KeyError(f"unknown rewrite rule {rule!r}") from None


def translation_invariant(rule: str) -> str:
    """``exact`` if the rule never changes the translated term; else ``beta_eta``."""
    return rule_info(rule).invariant


def applicable_steps(p: Preproof, rule: str) -> list[RewriteStep]:
    """Every address/direction/aux at which the rule's patterns match."""
    r = rule_info(rule)
    out: list[RewriteStep] = []
    for path, node in p:
        for aux in r.fwd_match(p, node):
            out.append(RewriteStep(rule, path, FORWARD, aux))
        if r.bwd_match is not None:
            for aux in r.bwd_match(p, node):
                out.append(RewriteStep(rule, path, BACKWARD, aux))
    return out


def apply_step(p: Preproof, step: RewriteStep, check: bool = True) -> Preproof:
    r = rule_info(step.rule)
    node = p.at(step.address)
    if step.direction == FORWARD:
        new = r.fwd_apply(p, node, step.aux)
    elif step.direction == BACKWARD:
        if r.bwd_apply is None:
            raise UnsupportedDirection(
                f"{step.rule} has no backward application (it erases a branch)")
        new = r.bwd_apply(p, node, step.aux)
    else:
        raise ValueError(f"bad direction {step.direction!r}")
    if check:
        if new.conclusion != node.conclusion:
            raise InapplicableStep(
                f"{step.rule} would change the local conclusion "
                f"{node.conclusion!r} -> {new.conclusion!r}")
    result = replace_at(p, step.address, new)
    if check:
        bad = validate(result)
        if bad:
            raise InapplicableStep(f"{step.rule} produced an invalid tree: {bad[0]}")
    return result


def replay(p: Preproof, steps: Iterable[RewriteStep]) -> Preproof:
    for step in steps:
        p = apply_step(p, step)
    return p
