"""Formulas, typed variables, contexts and sequents.

Formulas are implicational only: atoms closed under ``->``.  A variable is a
name *tagged with its formula*; two variables with the same name but different
formulas are different variables.  Contexts are ordered tuples of variables,
repetitions allowed.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Iterable, Iterator


class ParseError(ValueError):
    """Raised on malformed textual input; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_atom_cache: dict[str, "Formula"] = {}


class Formula:
    """An implicational formula, also read as a simple type."""

    __slots__ = ()

    def is_atom(self) -> bool:
        return isinstance(self, Atom)


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Imp(Formula):
    antecedent: Formula
    consequent: Formula

    def __repr__(self) -> str:
        return print_formula(self)


def atom(name: str) -> Atom:
    got = _atom_cache.get(name)
    if got is None:
        got = Atom(sys.intern(name))
        _atom_cache[name] = got
    return got


def imp(a: Formula, b: Formula) -> Imp:
    return Imp(a, b)


def width(f: Formula) -> int:
    """Number of ``->`` constructors in ``f``."""
    match f:
        case Atom():
            return 0
        case Imp(a, b):
            return width(a) + width(b) + 1
    raise TypeError(f"not a formula: {f!r}")


@dataclass(frozen=True, slots=True)
class Variable:
    """A named hypothesis tag; identity is the (name, formula) pair."""

    name: str
    type: Formula

    def __repr__(self) -> str:
        return f"{self.name}:{print_formula(self.type)}"


Context = tuple[Variable, ...]


@dataclass(frozen=True, slots=True)
class Sequent:
    antecedent: Context
    succedent: Formula

    def __repr__(self) -> str:
        return print_sequent(self)


def context_set(ctx: Iterable[Variable]) -> frozenset[Variable]:
    """Underlying set of a context: order and multiplicity discarded."""
    return frozenset(ctx)


def repetition_free(ctx: Iterable[Variable]) -> bool:
    seen = set()
    for v in ctx:
        if v in seen:
            return False
        seen.add(v)
    return True


# The canonical series of variables of a given type.  Generated names carry
# the reserved "@" prefix; parsers accept them (serialised proofs must round
# trip) but fresh generation never collides with user names.

def canonical_variable(type: Formula, index: int) -> Variable:
    if index < 1:
        raise ValueError("canonical series starts at index 1")
    return Variable(f"@{index}", type)


def fresh_variable(type: Formula, avoid: Iterable[Variable]) -> Variable:
    """Least-index member of the canonical series for ``type`` not in ``avoid``."""
    taken = set(avoid)
    i = 1
    while True:
        v = canonical_variable(type, i)
        if v not in taken:
            return v
        i += 1


def fresh_named(type: Formula, base: str, avoid_names: set[str]) -> Variable:
    """A variable named ``base`` with primes appended until the name is unused."""
    name = base
    while name in avoid_names:
        name += "'"
    return Variable(name, type)


# ---------------------------------------------------------------------------
# printing

def print_formula(f: Formula, _right: bool = True) -> str:
    match f:
        case Atom(name):
            return name
        case Imp(a, b):
            s = f"{print_formula(a, False)} -> {print_formula(b, True)}"
            return s if _right else f"({s})"
    raise TypeError(f"not a formula: {f!r}")


def print_variable(v: Variable) -> str:
    return f"{v.name}:{print_formula(v.type)}"


def print_context(ctx: Context) -> str:
    return ", ".join(print_variable(v) for v in ctx)


def print_sequent(s: Sequent) -> str:
    left = print_context(s.antecedent)
    return f"{left} |- {print_formula(s.succedent)}" if left else f"|- {print_formula(s.succedent)}"


# ---------------------------------------------------------------------------
# parsing

_NAME_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_@")
_NAME_CHARS = _NAME_START | set("0123456789'")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t\n":
            self.pos += 1

    def eof(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, token: str) -> None:
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            raise ParseError(f"expected {token!r}", self.pos)
        self.pos += len(token)

    def try_token(self, token: str) -> bool:
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def name(self) -> str:
        self.skip_ws()
        start = self.pos
        if self.pos >= len(self.text) or self.text[self.pos] not in _NAME_START:
            raise ParseError("expected a name", self.pos)
        self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos] in _NAME_CHARS:
            self.pos += 1
        return self.text[start:self.pos]


def _parse_formula(sc: _Scanner) -> Formula:
    left = _parse_formula_head(sc)
    if sc.try_token("->"):
        return imp(left, _parse_formula(sc))
    return left


def _parse_formula_head(sc: _Scanner) -> Formula:
    if sc.try_token("("):
        f = _parse_formula(sc)
        sc.expect(")")
        return f
    return atom(sc.name())


def parse_formula(text: str) -> Formula:
    sc = _Scanner(text)
    f = _parse_formula(sc)
    if not sc.eof():
        raise ParseError("trailing input after formula", sc.pos)
    return f


def _parse_variable(sc: _Scanner) -> Variable:
    name = sc.name()
    sc.expect(":")
    return Variable(name, _parse_formula_head_or_arrow(sc))


def _parse_formula_head_or_arrow(sc: _Scanner) -> Formula:
    # a variable's type extends until a delimiter (comma, turnstile, ...)
    left = _parse_formula_head(sc)
    if sc.try_token("->"):
        return imp(left, _parse_formula_head_or_arrow(sc))
    return left


def parse_variable(text: str) -> Variable:
    sc = _Scanner(text)
    v = _parse_variable(sc)
    if not sc.eof():
        raise ParseError("trailing input after variable", sc.pos)
    return v


def parse_context(text: str) -> Context:
    sc = _Scanner(text)
    if sc.eof():
        return ()
    ctx = [_parse_variable(sc)]
    while sc.try_token(","):
        ctx.append(_parse_variable(sc))
    if not sc.eof():
        raise ParseError("trailing input after context", sc.pos)
    return tuple(ctx)


def parse_sequent(text: str) -> Sequent:
    sc = _Scanner(text)
    ctx: list[Variable] = []
    if not sc.try_token("|-"):
        ctx.append(_parse_variable(sc))
        while sc.try_token(","):
            ctx.append(_parse_variable(sc))
        sc.expect("|-")
    f = _parse_formula(sc)
    if not sc.eof():
        raise ParseError("trailing input after sequent", sc.pos)
    return Sequent(tuple(ctx), f)


def all_names(vars: Iterable[Variable]) -> set[str]:
    return {v.name for v in vars}


def iter_subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Imp):
        yield from iter_subformulas(f.antecedent)
        yield from iter_subformulas(f.consequent)
