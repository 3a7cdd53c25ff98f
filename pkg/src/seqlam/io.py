"""Serialisation: s-expressions (canonical), a JSON mirror, the stacked
pretty printer, and rewrite-step records.

S-expression shape, one form per node::

    (rule param* (seq (var*) formula) child*)

with formulas as ``atom`` or ``(-> f g)`` and variables as ``(name formula)``.
Round trips are bit-exact; the conclusion is stored and checked on parse.
"""
from __future__ import annotations

import json
from typing import Any

from .proofs import (
    AX, CTR, CUT, EX, LIMP, RIMP, WEAK, Preproof, ProofError, raw_node, validate,
)
from .rewrite import RewriteStep
from .syntax import (
    Atom, Formula, Imp, ParseError, Sequent, Variable, atom, imp,
    parse_formula, print_formula, print_sequent,
)

# ---------------------------------------------------------------------------
# s-expressions

Sexp = str | list


def _tokenize(text: str) -> list[str]:
    out: list[str] = []
    i = 0
    while i < len(text):
        c = text[i]
        if c in " \t\n":
            i += 1
        elif c in "()":
            out.append(c)
            i += 1
        else:
            j = i
            while j < len(text) and text[j] not in " \t\n()":
                j += 1
            out.append(text[i:j])
            i = j
    return out


def _read(tokens: list[str], pos: int) -> tuple[Sexp, int]:
    if pos >= len(tokens):
        raise ParseError("unexpected end of s-expression", pos)
    tok = tokens[pos]
    if tok == "(":
        items: list[Sexp] = []
        pos += 1
        while pos < len(tokens) and tokens[pos] != ")":
            item, pos = _read(tokens, pos)
            items.append(item)
        if pos >= len(tokens):
            raise ParseError("missing closing parenthesis", pos)
        return items, pos + 1
    if tok == ")":
        raise ParseError("unexpected closing parenthesis", pos)
    return tok, pos + 1


def parse_sexp(text: str) -> Sexp:
    tokens = _tokenize(text)
    sexp, pos = _read(tokens, 0)
    if pos != len(tokens):
        raise ParseError("trailing input after s-expression", pos)
    return sexp


def formula_to_sexp(f: Formula) -> Sexp:
    match f:
        case Atom(name):
            return name
        case Imp(a, b):
            return ["->", formula_to_sexp(a), formula_to_sexp(b)]
    raise TypeError


def formula_from_sexp(s: Sexp) -> Formula:
    if isinstance(s, str):
        return atom(s)
    if len(s) == 3 and s[0] == "->":
        return imp(formula_from_sexp(s[1]), formula_from_sexp(s[2]))
    raise ParseError(f"bad formula form {s!r}", 0)


def variable_to_sexp(v: Variable) -> Sexp:
    return [v.name, formula_to_sexp(v.type)]


def variable_from_sexp(s: Sexp) -> Variable:
    if not (isinstance(s, list) and len(s) == 2 and isinstance(s[0], str)):
        raise ParseError(f"bad variable form {s!r}", 0)
    return Variable(s[0], formula_from_sexp(s[1]))


def sequent_to_sexp(s: Sequent) -> Sexp:
    return ["seq", [variable_to_sexp(v) for v in s.antecedent],
            formula_to_sexp(s.succedent)]


def sequent_from_sexp(s: Sexp) -> Sequent:
    if not (isinstance(s, list) and len(s) == 3 and s[0] == "seq"):
        raise ParseError(f"bad sequent form {s!r}", 0)
    return Sequent(tuple(variable_from_sexp(v) for v in s[1]),
                   formula_from_sexp(s[2]))


def proof_to_sexp(p: Preproof) -> Sexp:
    params: list[Sexp] = []
    if p.rule == AX:
        params = [variable_to_sexp(p.params[0])]
    elif p.rule in (CUT, CTR, EX, RIMP):
        params = [str(p.params[0])]
    elif p.rule == WEAK:
        params = [str(p.params[0]), variable_to_sexp(p.params[1])]
    elif p.rule == LIMP:
        params = [str(p.params[0]), variable_to_sexp(p.params[1])]
    return [p.rule, *params, sequent_to_sexp(p.conclusion),
            *[proof_to_sexp(c) for c in p.children]]


def proof_from_sexp(s: Sexp) -> Preproof:
    if not isinstance(s, list) or not s or not isinstance(s[0], str):
        raise ParseError(f"bad proof form {s!r}", 0)
    rule = s[0]
    if rule == AX:
        params: tuple = (variable_from_sexp(s[1]),)
        rest = s[2:]
    elif rule in (CUT, CTR, EX, RIMP):
        params = (int(s[1]),)
        rest = s[2:]
    elif rule in (WEAK, LIMP):
        params = (int(s[1]), variable_from_sexp(s[2]))
        rest = s[3:]
    else:
        raise ParseError(f"unknown rule {rule!r}", 0)
    if not rest:
        raise ParseError("missing conclusion sequent", 0)
    conclusion = sequent_from_sexp(rest[0])
    children = tuple(proof_from_sexp(c) for c in rest[1:])
    return raw_node(rule, params, children, conclusion)


def print_sexp(s: Sexp) -> str:
    if isinstance(s, str):
        return s
    return "(" + " ".join(print_sexp(i) for i in s) + ")"


def proof_to_text(p: Preproof) -> str:
    return print_sexp(proof_to_sexp(p))


def proof_from_text(text: str, check: bool = True) -> Preproof:
    p = proof_from_sexp(parse_sexp(text))
    if check:
        bad = validate(p)
        if bad:
            raise ProofError(f"deserialised proof is invalid: {bad[0]}")
    return p


# ---------------------------------------------------------------------------
# JSON mirror

def proof_to_json(p: Preproof) -> dict:
    out: dict[str, Any] = {"rule": p.rule}
    if p.rule == AX:
        out["variable"] = str(p.params[0])
    elif p.rule in (CUT, CTR, EX, RIMP):
        out["index"] = p.params[0]
    elif p.rule == WEAK:
        out["index"] = p.params[0]
        out["variable"] = str(p.params[1])
    elif p.rule == LIMP:
        out["index"] = p.params[0]
        out["introduces"] = str(p.params[1])
    out["conclusion"] = {
        "antecedent": [str(v) for v in p.conclusion.antecedent],
        "succedent": print_formula(p.conclusion.succedent),
    }
    if p.children:
        out["children"] = [proof_to_json(c) for c in p.children]
    return out


def _variable_from_str(s: str) -> Variable:
    from .syntax import parse_variable
    return parse_variable(s)


def proof_from_json(d: dict, check: bool = True) -> Preproof:
    rule = d["rule"]
    if rule == AX:
        params: tuple = (_variable_from_str(d["variable"]),)
    elif rule in (CUT, CTR, EX, RIMP):
        params = (d["index"],)
    elif rule == WEAK:
        params = (d["index"], _variable_from_str(d["variable"]))
    elif rule == LIMP:
        params = (d["index"], _variable_from_str(d["introduces"]))
    else:
        raise ParseError(f"unknown rule {rule!r}", 0)
    concl = Sequent(
        tuple(_variable_from_str(v) for v in d["conclusion"]["antecedent"]),
        parse_formula(d["conclusion"]["succedent"]))
    children = tuple(proof_from_json(c, check=False) for c in d.get("children", []))
    p = raw_node(rule, params, children, concl)
    if check:
        bad = validate(p)
        if bad:
            raise ProofError(f"deserialised proof is invalid: {bad[0]}")
    return p


# ---------------------------------------------------------------------------
# rewrite steps

def step_to_json(step: RewriteStep) -> dict:
    return {
        "rule": step.rule,
        "address": list(step.address),
        "direction": step.direction,
        "aux": [_aux_to_json(a) for a in step.aux],
    }


def _aux_to_json(a) -> Any:
    if isinstance(a, Variable):
        return {"var": str(a)}
    if isinstance(a, Preproof):
        return {"proof": proof_to_text(a)}
    if isinstance(a, tuple):
        return {"seq": [_aux_to_json(x) for x in a]}
    return a


def _aux_from_json(a) -> Any:
    if isinstance(a, dict):
        if "var" in a:
            return _variable_from_str(a["var"])
        if "proof" in a:
            return proof_from_text(a["proof"])
        if "seq" in a:
            return tuple(_aux_from_json(x) for x in a["seq"])
    return a


def step_from_json(d: dict) -> RewriteStep:
    return RewriteStep(
        d["rule"], tuple(d["address"]), d["direction"],
        tuple(_aux_from_json(a) for a in d.get("aux", [])))


def trace_to_json(source: Preproof, target: Preproof, steps) -> dict:
    return {
        "source": proof_to_text(source),
        "target": proof_to_text(target),
        "steps": [step_to_json(s) for s in steps],
    }


def trace_from_json(d: dict):
    return (proof_from_text(d["source"]), proof_from_text(d["target"]),
            [step_from_json(s) for s in d["steps"]])


# ---------------------------------------------------------------------------
# stacked pretty printer

def pretty_proof(p: Preproof) -> str:
    """Monospace stacked-inference rendering, premises over conclusions."""
    lines, _ = _render(p)
    return "\n".join(lines)


_RULE_LABEL = {
    AX: "ax", CUT: "cut", CTR: "ctr", WEAK: "weak", EX: "ex",
    RIMP: "R->", LIMP: "L->",
}


def _render(p: Preproof) -> tuple[list[str], int]:
    concl = print_sequent(p.conclusion)
    label = f" ({_RULE_LABEL[p.rule]})"
    if not p.children:
        bar = "-" * len(concl)
        width = len(concl) + len(label)
        return [_pad(bar + label, width), _pad(concl, width)], width
    blocks = [_render(c) for c in p.children]
    gap = 3
    top_width = sum(w for _, w in blocks) + gap * (len(blocks) - 1)
    height = max(len(ls) for ls, _ in blocks)
    rows: list[str] = []
    for r in range(height):
        row = []
        for ls, w in blocks:
            pad_count = height - len(ls)
            row.append(ls[r - pad_count] if r >= pad_count else " " * w)
        rows.append((" " * gap).join(row))
    width = max(top_width, len(concl) + len(label))
    bar = "-" * max(top_width, len(concl))
    out = [_pad(r, width) for r in rows]
    out.append(_pad(bar + label, width))
    out.append(_pad(_center(concl, max(top_width, len(concl))), width))
    return out, width


def _pad(s: str, w: int) -> str:
    return s + " " * (w - len(s))


def _center(s: str, w: int) -> str:
    left = (w - len(s)) // 2
    return " " * left + s


def dumps_json(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
