"""Simply-typed lambda terms and beta/eta normalisation.

Terms are values of :class:`Term`; equality and hashing go through a cached
de Bruijn key, so ``==`` is alpha-equivalence, matching the convention that a
"term" is an alpha-class of preterms.  Free variables keep their names; the
pretty printer renames binders to a deterministic readable series.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .syntax import (
    Atom, Formula, Imp, ParseError, Variable, _Scanner, _parse_formula_head_or_arrow,
    imp, print_formula,
)


class TermTypeError(TypeError):
    pass


class Term:
    __slots__ = ()

    type: Formula

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Term):
            return NotImplemented
        return _key(self) == _key(other)

    def __hash__(self) -> int:
        return hash(_key(self))

    def __repr__(self) -> str:
        return print_term(self)


@dataclass(frozen=True, slots=True, eq=False)
class Var(Term):
    var: Variable

    @property
    def type(self) -> Formula:
        return self.var.type


@dataclass(frozen=True, eq=False)
class App(Term):
    fun: Term
    arg: Term
    type: Formula = field(init=False)

    def __post_init__(self):
        ft = self.fun.type
        if not isinstance(ft, Imp) or ft.antecedent != self.arg.type:
            raise TermTypeError(
                f"cannot apply {print_term(self.fun)} : {print_formula(ft)} "
                f"to {print_term(self.arg)} : {print_formula(self.arg.type)}")
        object.__setattr__(self, "type", ft.consequent)


@dataclass(frozen=True, eq=False)
class Abs(Term):
    binder: Variable
    body: Term
    type: Formula = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "type", imp(self.binder.type, self.body.type))


def type_of(m: Term) -> Formula:
    return m.type


def _key(m: Term, env: tuple[Variable, ...] = ()) -> tuple:
    if not env and not isinstance(m, Var):
        cached = m.__dict__.get("_alpha_key")
        if cached is not None:
            return cached
    match m:
        case Var(v):
            for i, b in enumerate(reversed(env)):
                if b == v:
                    k = ("b", i)
                    break
            else:
                k = ("f", v.name, v.type)
        case App(fun=f, arg=a):
            k = ("a", _key(f, env), _key(a, env))
        case Abs(binder=b, body=n):
            k = ("l", b.type, _key(n, env + (b,)))
        case _:
            raise TypeError(f"not a term: {m!r}")
    if not env and not isinstance(m, Var):
        object.__setattr__(m, "_alpha_key", k)
    return k


def fv(m: Term) -> frozenset[Variable]:
    match m:
        case Var(v):
            return frozenset((v,))
        case App(fun=f, arg=a):
            return fv(f) | fv(a)
        case Abs(binder=b, body=n):
            return fv(n) - {b}
    raise TypeError(f"not a term: {m!r}")


def fv_seq(m: Term) -> tuple[Variable, ...]:
    """Distinct free variables in order of first occurrence, left to right."""
    out: list[Variable] = []
    seen: set[Variable] = set()

    def walk(t: Term, bound: frozenset[Variable]) -> None:
        match t:
            case Var(v):
                if v not in bound and v not in seen:
                    seen.add(v)
                    out.append(v)
            case App(fun=f, arg=a):
                walk(f, bound)
                walk(a, bound)
            case Abs(binder=b, body=n):
                walk(n, bound | {b})

    walk(m, frozenset())
    return tuple(out)


def size(m: Term) -> int:
    match m:
        case Var():
            return 1
        case App(fun=f, arg=a):
            return 1 + size(f) + size(a)
        case Abs(body=n):
            return 1 + size(n)
    raise TypeError


def all_var_names(m: Term) -> set[str]:
    match m:
        case Var(v):
            return {v.name}
        case App(fun=f, arg=a):
            return all_var_names(f) | all_var_names(a)
        case Abs(binder=b, body=n):
            return {b.name} | all_var_names(n)
    raise TypeError


def _freshen(b: Variable, taken: set[str]) -> Variable:
    name = b.name
    while name in taken:
        name += "'"
    return Variable(name, b.type)


def rename_free(m: Term, table: dict[Variable, Variable]) -> Term:
    """Rename free variables according to ``table`` (targets assumed fresh)."""
    if not table:
        return m
    match m:
        case Var(v):
            return Var(table.get(v, v))
        case App(fun=f, arg=a):
            return App(rename_free(f, table), rename_free(a, table))
        case Abs(binder=b, body=n):
            inner = {k: v for k, v in table.items() if k != b}
            return Abs(b, rename_free(n, inner))
    raise TypeError


def substitute(m: Term, x: Variable, n: Term) -> Term:
    """Capture-avoiding substitution ``m[x := n]``."""
    if x.type != n.type:
        raise TermTypeError(
            f"substituting {print_term(n)} : {print_formula(n.type)} "
            f"for {x!r} of different type")
    if x not in fv(m):
        return m
    match m:
        case Var(v):
            return n if v == x else m
        case App(fun=f, arg=a):
            return App(substitute(f, x, n), substitute(a, x, n))
        case Abs(binder=b, body=body):
            if b == x:
                return m
            if b in fv(n):
                b2 = _freshen(b, all_var_names(body) | all_var_names(n) | {x.name})
                body = substitute(body, b, Var(b2))
                b = b2
            return Abs(b, substitute(body, x, n))
    raise TypeError


def is_beta_normal(m: Term) -> bool:
    match m:
        case Var():
            return True
        case App(fun=f, arg=a):
            return not isinstance(f, Abs) and is_beta_normal(f) and is_beta_normal(a)
        case Abs(body=n):
            return is_beta_normal(n)
    raise TypeError


def has_eta_redex(m: Term) -> bool:
    match m:
        case Var():
            return False
        case App(fun=f, arg=a):
            return has_eta_redex(f) or has_eta_redex(a)
        case Abs(binder=b, body=App(fun=f, arg=Var(v))) if v == b and b not in fv(f):
            return True
        case Abs(body=n):
            return has_eta_redex(n)
    raise TypeError


def is_beta_eta_normal(m: Term) -> bool:
    return is_beta_normal(m) and not has_eta_redex(m)


def _beta_once_leftmost(m: Term) -> Term | None:
    """One leftmost-outermost beta step, or None if beta-normal."""
    match m:
        case Var():
            return None
        case App(fun=Abs(binder=b, body=body), arg=a):
            return substitute(body, b, a)
        case App(fun=f, arg=a):
            f2 = _beta_once_leftmost(f)
            if f2 is not None:
                return App(f2, a)
            a2 = _beta_once_leftmost(a)
            return None if a2 is None else App(f, a2)
        case Abs(binder=b, body=n):
            n2 = _beta_once_leftmost(n)
            return None if n2 is None else Abs(b, n2)
    raise TypeError


def beta_normalize(m: Term) -> Term:
    while True:
        m2 = _beta_once_leftmost(m)
        if m2 is None:
            return m
        # free variables only ever shrink along a reduction
        assert fv(m2) <= fv(m)
        assert m2.type == m.type
        m = m2


def _eta_once(m: Term) -> Term | None:
    """One innermost eta contraction, or None."""
    match m:
        case Var():
            return None
        case App(fun=f, arg=a):
            f2 = _eta_once(f)
            if f2 is not None:
                return App(f2, a)
            a2 = _eta_once(a)
            return None if a2 is None else App(f, a2)
        case Abs(binder=b, body=body):
            b2 = _eta_once(body)
            if b2 is not None:
                return Abs(b, b2)
            match body:
                case App(fun=f, arg=Var(v)) if v == b and b not in fv(f):
                    return f
            return None
    raise TypeError


def beta_eta_normalize(m: Term) -> Term:
    """The unique beta-eta-normal form of ``m``."""
    while True:
        m = beta_normalize(m)
        m2 = _eta_once(m)
        if m2 is None:
            return m
        assert m2.type == m.type
        m = m2


def fv_beta(m: Term) -> frozenset[Variable]:
    """Free variables surviving beta reduction: FV of the beta-normal form."""
    return fv(beta_normalize(m))


def compose_terms(n: Term, m: Term) -> Term:
    """Composite ``\\x. (n (m x))`` with x fresh; n : tau -> rho, m : sigma -> tau."""
    if not isinstance(m.type, Imp):
        raise TermTypeError(f"not composable: {print_term(m)} : {print_formula(m.type)}")
    if not isinstance(n.type, Imp) or n.type.antecedent != m.type.consequent:
        raise TermTypeError(
            f"cannot compose {print_term(n)} : {print_formula(n.type)} "
            f"after {print_term(m)} : {print_formula(m.type)}")
    taken = all_var_names(n) | all_var_names(m)
    x = _freshen(Variable("x", m.type.antecedent), taken)
    return Abs(x, App(n, App(m, Var(x))))


# ---------------------------------------------------------------------------
# printing / parsing

_BINDER_NAMES = ("x", "y", "z", "u", "v", "w", "t", "s")


def _pick_binder_name(taken: set[str]) -> str:
    for name in _BINDER_NAMES:
        if name not in taken:
            return name
    i = 1
    while True:
        for name in _BINDER_NAMES:
            cand = name + "'" * i
            if cand not in taken:
                return cand
        i += 1


def canonical_binders(m: Term, taken: frozenset[str] = frozenset()) -> Term:
    """Rename binders to the readable series x, y, z, ... deterministically."""
    match m:
        case Var():
            return m
        case App(fun=f, arg=a):
            return App(canonical_binders(f, taken), canonical_binders(a, taken))
        case Abs(binder=b, body=n):
            n = canonical_binders(n, taken | {b.name})
            avoid = {v.name for v in fv(n) if v != b} | set(taken)
            name = _pick_binder_name(avoid)
            if name != b.name:
                b2 = Variable(name, b.type)
                n = substitute(n, b, Var(b2))
                b = b2
            return Abs(b, n)
    raise TypeError


def print_term(m: Term, rename: bool = True) -> str:
    if rename:
        m = canonical_binders(m)
    return _print_raw(m)


def _print_raw(m: Term) -> str:
    match m:
        case Var(v):
            return v.name
        case App(fun=f, arg=a):
            return f"({_print_raw(f)} {_print_raw(a)})"
        case Abs(binder=b, body=n):
            return f"\\{b.name}:{print_formula(b.type)}. {_print_raw(n)}"
    raise TypeError


def parse_term(text: str, context: tuple[Variable, ...] = ()) -> Term:
    """Parse a term; free occurrences take their types from ``context``.

    Binder annotations are required; other occurrences may optionally carry
    ``:type`` annotations, checked for consistency.
    """
    sc = _Scanner(text)
    env = {v.name: v for v in context}
    t = _parse_term(sc, env)
    if not sc.eof():
        raise ParseError("trailing input after term", sc.pos)
    return t


def _parse_term(sc: _Scanner, env: dict[str, Variable]) -> Term:
    parts = [_parse_term_head(sc, env)]
    while True:
        ch = sc.peek()
        if ch in ("", ")", ".", ",", "|"):
            break
        parts.append(_parse_term_head(sc, env))
    t = parts[0]
    for arg in parts[1:]:
        t = App(t, arg)
    return t


def _parse_term_head(sc: _Scanner, env: dict[str, Variable]) -> Term:
    if sc.try_token("\\") or sc.try_token("λ"):
        pos = sc.pos
        name = sc.name()
        sc.expect(":")
        ty = _parse_formula_head_or_arrow(sc)
        sc.expect(".")
        binder = Variable(name, ty)
        inner = dict(env)
        inner[name] = binder
        body = _parse_term(sc, inner)
        return Abs(binder, body)
    if sc.try_token("("):
        t = _parse_term(sc, env)
        sc.expect(")")
        return t
    pos = sc.pos
    name = sc.name()
    if sc.try_token(":"):
        ty = _parse_formula_head_or_arrow(sc)
        known = env.get(name)
        if known is not None and known.type != ty:
            raise ParseError(f"variable {name} annotated with conflicting type", pos)
        return Var(Variable(name, ty))
    if name not in env:
        raise ParseError(f"unknown variable {name!r}: annotate it or add it to the context", pos)
    return Var(env[name])


def subterms(m: Term) -> Iterator[Term]:
    yield m
    match m:
        case App(fun=f, arg=a):
            yield from subterms(f)
            yield from subterms(a)
        case Abs(body=n):
            yield from subterms(n)
