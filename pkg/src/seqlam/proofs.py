"""Preproof trees over the seven LJ rules.

A node carries a rule kind, position parameters, children and its conclusion
sequent.  Smart constructors (:func:`ax` ... :func:`limp`) compute conclusions
and reject ill-formed instances; :func:`validate` re-checks a whole tree from
scratch so that deserialised or hand-built nodes get the same scrutiny.

Rule parameters (all indices 0-based):

* ``ax``      -- params ``(v,)``: concludes ``v |- type(v)``.
* ``cut``     -- params ``(i,)``: consumes position ``i`` of the right
  premise's antecedent; conclusion ``G, D, T |- q``.
* ``ctr``     -- params ``(i,)``: contracts positions ``i, i+1`` (equal
  types), keeping the variable at ``i``.
* ``weak``    -- params ``(i, v)``: inserts ``v`` at position ``i``.
* ``ex``      -- params ``(i,)``: swaps positions ``i`` and ``i+1``.
* ``rimp``    -- params ``(i,)``: eliminates position ``i``, concluding the
  implication.
* ``limp``    -- params ``(i, y)``: consumes position ``i`` of the right
  premise; the new variable ``y`` lands at the front of the antecedent.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .syntax import Formula, Imp, Sequent, Variable, print_sequent

AX, CUT, CTR, WEAK, EX, RIMP, LIMP = "ax", "cut", "ctr", "weak", "ex", "rimp", "limp"

RULES = (AX, CUT, CTR, WEAK, EX, RIMP, LIMP)
STRUCTURAL = (CTR, WEAK, EX)
LOGICAL = (RIMP, LIMP)

Address = tuple[int, ...]


class ProofError(Exception):
    pass


@dataclass(frozen=True, slots=True)
class Preproof:
    rule: str
    params: tuple
    children: tuple["Preproof", ...]
    conclusion: Sequent

    def __repr__(self) -> str:
        return f"<{self.rule} {print_sequent(self.conclusion)}>"

    @property
    def index(self) -> int:
        return self.params[0]

    @property
    def variable(self) -> Variable:
        # ax: the axiom variable; weak: inserted; limp: introduced
        return self.params[-1]

    def at(self, address: Address) -> "Preproof":
        node = self
        for i in address:
            node = node.children[i]
        return node

    def __iter__(self) -> Iterator[tuple[Address, "Preproof"]]:
        yield from _walk(self, ())


def _walk(node: Preproof, path: Address) -> Iterator[tuple[Address, Preproof]]:
    yield path, node
    for i, child in enumerate(node.children):
        yield from _walk(child, path + (i,))


def node_count(p: Preproof) -> int:
    return 1 + sum(node_count(c) for c in p.children)


def height(p: Preproof) -> int:
    """One less than the number of rules on the longest root-to-leaf path."""
    if not p.children:
        return 0
    return 1 + max(height(c) for c in p.children)


def replace_at(p: Preproof, address: Address, new: Preproof) -> Preproof:
    if not address:
        return new
    i = address[0]
    kids = list(p.children)
    kids[i] = replace_at(kids[i], address[1:], new)
    return rebuild(p.rule, p.params, tuple(kids))


# ---------------------------------------------------------------------------
# conclusion computation and constructors

def _conclude(rule: str, params: tuple, children: tuple[Preproof, ...]) -> Sequent:
    """Compute the conclusion forced by the rule instance, or raise ProofError."""
    def bad(msg: str) -> ProofError:
        return ProofError(f"{rule}{params}: {msg}")

    if rule == AX:
        if children:
            raise bad("axiom takes no premises")
        (v,) = params
        if not isinstance(v, Variable):
            raise bad("axiom parameter must be a variable")
        return Sequent((v,), v.type)

    if rule in (CTR, WEAK, EX, RIMP):
        if len(children) != 1:
            raise bad("expected one premise")
        ant, succ = children[0].conclusion.antecedent, children[0].conclusion.succedent
        if rule == CTR:
            (i,) = params
            if not (0 <= i and i + 1 < len(ant)):
                raise bad(f"contraction index {i} out of range for {len(ant)}")
            if ant[i].type != ant[i + 1].type:
                raise bad("contracted variables must share a type")
            return Sequent(ant[:i + 1] + ant[i + 2:], succ)
        if rule == WEAK:
            i, v = params
            if not isinstance(v, Variable):
                raise bad("weakening needs a variable to insert")
            if not (0 <= i <= len(ant)):
                raise bad(f"weakening index {i} out of range for {len(ant)}")
            return Sequent(ant[:i] + (v,) + ant[i:], succ)
        if rule == EX:
            (i,) = params
            if not (0 <= i and i + 1 < len(ant)):
                raise bad(f"exchange index {i} out of range for {len(ant)}")
            return Sequent(ant[:i] + (ant[i + 1], ant[i]) + ant[i + 2:], succ)
        # RIMP
        (i,) = params
        if not (0 <= i < len(ant)):
            raise bad(f"introduction index {i} out of range for {len(ant)}")
        return Sequent(ant[:i] + ant[i + 1:], Imp(ant[i].type, succ))

    if rule in (CUT, LIMP):
        if len(children) != 2:
            raise bad("expected two premises")
        left, right = children[0].conclusion, children[1].conclusion
        rant = right.antecedent
        if rule == CUT:
            (i,) = params
            if not (0 <= i < len(rant)):
                raise bad(f"cut index {i} out of range for {len(rant)}")
            if rant[i].type != left.succedent:
                raise bad("cut formula does not match the consumed hypothesis")
            return Sequent(left.antecedent + rant[:i] + rant[i + 1:], right.succedent)
        # LIMP
        i, y = params
        if not isinstance(y, Variable):
            raise bad("left introduction needs the introduced variable")
        if not (0 <= i < len(rant)):
            raise bad(f"left introduction index {i} out of range for {len(rant)}")
        want = Imp(left.succedent, rant[i].type)
        if y.type != want:
            raise bad(f"introduced variable must have type {want!r}, got {y.type!r}")
        return Sequent((y,) + left.antecedent + rant[:i] + rant[i + 1:], right.succedent)

    raise bad("unknown rule")


def rebuild(rule: str, params: tuple, children: tuple[Preproof, ...]) -> Preproof:
    return Preproof(rule, params, children, _conclude(rule, params, children))


def ax(v: Variable) -> Preproof:
    return rebuild(AX, (v,), ())


def cut(left: Preproof, right: Preproof, i: int) -> Preproof:
    return rebuild(CUT, (i,), (left, right))


def ctr(child: Preproof, i: int) -> Preproof:
    return rebuild(CTR, (i,), (child,))


def weak(child: Preproof, i: int, v: Variable) -> Preproof:
    return rebuild(WEAK, (i, v), (child,))


def ex(child: Preproof, i: int) -> Preproof:
    return rebuild(EX, (i,), (child,))


def rimp(child: Preproof, i: int) -> Preproof:
    return rebuild(RIMP, (i,), (child,))


def limp(left: Preproof, right: Preproof, i: int, y: Variable) -> Preproof:
    return rebuild(LIMP, (i, y), (left, right))


def raw_node(rule: str, params: tuple, children: tuple[Preproof, ...],
             conclusion: Sequent) -> Preproof:
    """Build a node without checking; pair with :func:`validate`."""
    return Preproof(rule, params, children, conclusion)


# ---------------------------------------------------------------------------
# validation

@dataclass(frozen=True, slots=True)
class Violation:
    address: Address
    message: str

    def __repr__(self) -> str:
        return f"at {list(self.address)}: {self.message}"


def validate(p: Preproof) -> list[Violation]:
    """All schema violations in the tree; empty means the preproof is valid."""
    out: list[Violation] = []
    for path, node in p:
        if node.rule not in RULES:
            out.append(Violation(path, f"unknown rule {node.rule!r}"))
            continue
        if not node.children and node.rule != AX:
            out.append(Violation(path, f"leaf labelled {node.rule}, only axioms may be leaves"))
            continue
        try:
            want = _conclude(node.rule, node.params, node.children)
        except ProofError as e:
            out.append(Violation(path, str(e)))
            continue
        if want != node.conclusion:
            out.append(Violation(
                path,
                f"conclusion is {print_sequent(node.conclusion)} "
                f"but the rule instance forces {print_sequent(want)}"))
    return out


def is_valid(p: Preproof) -> bool:
    return not validate(p)


def is_cut_free(p: Preproof) -> bool:
    return all(node.rule != CUT for _, node in p)


def is_strict(p: Preproof) -> bool:
    """Gentzen-strict: every non-ax/ex rule acts at the leftmost position."""
    for _, node in p:
        if node.rule in (CUT, CTR, WEAK, RIMP, LIMP) and node.params[0] != 0:
            return False
    return True


def count_rule(p: Preproof, rule: str) -> int:
    return sum(1 for _, node in p if node.rule == rule)


def map_children(p: Preproof, f: Callable[[Preproof], Preproof]) -> Preproof:
    return rebuild(p.rule, p.params, tuple(f(c) for c in p.children))
