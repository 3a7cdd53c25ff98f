"""HTTP service wrapping the kernel: one endpoint per verb.

The handlers are plain functions over the request/response models, so the
command line client calls them in-process by default and over HTTP when
pointed at a running server.
"""
from __future__ import annotations

from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import io
from .ancestry import is_well_labelled
from .normalize import (
    NormalFormReport, classify_normal, eliminate_all_cuts, is_normal,
    is_well_structured, to_normal,
)
from .proofs import Preproof, ProofError, count_rule, height, is_cut_free, validate
from .rewrite import replay
from .syntax import ParseError, parse_context, print_formula
from .terms import beta_eta_normalize, fv_seq, parse_term, print_term
from .translate import RepetitionError, invert, proof_equiv, translate

Format = Literal["text", "json", "sexp"]


class ServiceError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status
        self.message = message


def _parse_proof(text: str) -> Preproof:
    try:
        return io.proof_from_text(text)
    except (ParseError, ProofError) as e:
        raise ServiceError(400, f"bad proof: {e}") from e


class ProofPayload(BaseModel):
    proof: str = Field(description="proof in s-expression form")


class CheckRequest(ProofPayload):
    pass


class CheckResponse(BaseModel):
    valid: bool
    violations: list[str]
    cut_free: bool
    well_labelled: bool
    well_structured: bool
    structure_violations: list[str]
    normal: bool
    height: int
    rules: dict[str, int]


def check(req: CheckRequest) -> CheckResponse:
    try:
        p = io.proof_from_text(req.proof, check=False)
    except ParseError as e:
        raise ServiceError(400, f"bad proof: {e}") from e
    bad = validate(p)
    if bad:
        return CheckResponse(
            valid=False, violations=[str(v) for v in bad], cut_free=False,
            well_labelled=False, well_structured=False,
            structure_violations=[], normal=False, height=0, rules={})
    struct = is_well_structured(p) if is_cut_free(p) else None
    return CheckResponse(
        valid=True,
        violations=[],
        cut_free=is_cut_free(p),
        well_labelled=is_well_labelled(p),
        well_structured=bool(struct and struct.ok),
        structure_violations=list(struct.violations) if struct else ["contains a cut"],
        normal=is_cut_free(p) and is_normal(p),
        height=height(p),
        rules={r: n for r in ("ax", "cut", "ctr", "weak", "ex", "rimp", "limp")
               if (n := count_rule(p, r))},
    )


class TranslateRequest(ProofPayload):
    pass


class TranslateResponse(BaseModel):
    term: str
    type: str
    context: str


def do_translate(req: TranslateRequest) -> TranslateResponse:
    p = _parse_proof(req.proof)
    m = translate(p)
    return TranslateResponse(
        term=print_term(m),
        type=print_formula(m.type),
        context=", ".join(str(v) for v in p.conclusion.antecedent),
    )


class InvertRequest(BaseModel):
    term: str
    context: str = ""


class InvertResponse(BaseModel):
    proof: str
    report: dict


def do_invert(req: InvertRequest) -> InvertResponse:
    try:
        ctx = parse_context(req.context)
        m = parse_term(req.term, ctx)
    except ParseError as e:
        raise ServiceError(400, f"bad input: {e}") from e
    try:
        full_ctx = ctx if ctx else fv_seq(m)
        p = invert(m, full_ctx)
    except RepetitionError as e:
        raise ServiceError(422, str(e)) from e
    except ProofError as e:
        raise ServiceError(422, str(e)) from e
    return InvertResponse(proof=io.proof_to_text(p),
                          report=classify_normal(p).to_json())


class TransformRequest(ProofPayload):
    trace: bool = False


class TransformResponse(BaseModel):
    proof: str
    term: str
    trace: Optional[dict] = None


def do_cut_elim(req: TransformRequest) -> TransformResponse:
    p = _parse_proof(req.proof)
    result = eliminate_all_cuts(p)
    trace = io.trace_to_json(p, result, []) if req.trace else None
    return TransformResponse(proof=io.proof_to_text(result),
                             term=print_term(translate(result)), trace=trace)


def do_normalize(req: TransformRequest) -> TransformResponse:
    p = _parse_proof(req.proof)
    try:
        result = to_normal(p)
    except RepetitionError as e:
        raise ServiceError(422, str(e)) from e
    trace = io.trace_to_json(p, result, []) if req.trace else None
    return TransformResponse(proof=io.proof_to_text(result),
                             term=print_term(translate(result)), trace=trace)


class EquivRequest(BaseModel):
    proof1: str
    proof2: str


class EquivResponse(BaseModel):
    equivalent: bool
    normal_form1: str
    normal_form2: str


def do_equiv(req: EquivRequest) -> EquivResponse:
    p1 = _parse_proof(req.proof1)
    p2 = _parse_proof(req.proof2)
    try:
        eq = proof_equiv(p1, p2)
    except RepetitionError as e:
        raise ServiceError(422, str(e)) from e
    except ProofError as e:
        raise ServiceError(422, str(e)) from e
    n1 = beta_eta_normalize(translate(p1))
    n2 = beta_eta_normalize(translate(p2))
    return EquivResponse(equivalent=eq, normal_form1=print_term(n1),
                         normal_form2=print_term(n2))


class ComposeRequest(BaseModel):
    outer: str
    inner: str


class ComposeResponse(BaseModel):
    proof: str
    term: str
    normal_form: str


def do_compose(req: ComposeRequest) -> ComposeResponse:
    from .category import ProofMorphism, compose_proofs
    from .syntax import Imp
    psi = _parse_proof(req.outer)
    pi = _parse_proof(req.inner)
    st, it = psi.conclusion.succedent, pi.conclusion.succedent
    if psi.conclusion.antecedent != pi.conclusion.antecedent:
        raise ServiceError(422, "proofs must share a hypothesis context")
    if not (isinstance(st, Imp) and isinstance(it, Imp) and st.antecedent == it.consequent):
        raise ServiceError(422, f"cannot compose {print_formula(st)} after {print_formula(it)}")
    gamma = psi.conclusion.antecedent
    mor = compose_proofs(
        ProofMorphism(gamma, st.antecedent, st.consequent, psi),
        ProofMorphism(gamma, it.antecedent, it.consequent, pi))
    assert isinstance(mor.payload, Preproof)
    term = translate(mor.payload)
    return ComposeResponse(proof=io.proof_to_text(mor.payload),
                           term=print_term(term),
                           normal_form=print_term(beta_eta_normalize(term)))


class TraceRequest(BaseModel):
    proof: str
    steps: list[dict]


class TraceResponse(BaseModel):
    proof: str


def do_trace(req: TraceRequest) -> TraceResponse:
    p = _parse_proof(req.proof)
    try:
        steps = [io.step_from_json(s) for s in req.steps]
        result = replay(p, steps)
    except (KeyError, ProofError) as e:
        raise ServiceError(422, f"trace replay failed: {e}") from e
    return TraceResponse(proof=io.proof_to_text(result))


# ---------------------------------------------------------------------------
# app factory

HANDLERS = {
    "check": (CheckRequest, check),
    "translate": (TranslateRequest, do_translate),
    "invert": (InvertRequest, do_invert),
    "cut-elim": (TransformRequest, do_cut_elim),
    "normalize": (TransformRequest, do_normalize),
    "equiv": (EquivRequest, do_equiv),
    "compose": (ComposeRequest, do_compose),
    "trace": (TraceRequest, do_trace),
}


def _guarded(fn, req):
    try:
        return fn(req)
    except ServiceError as e:
        raise HTTPException(status_code=e.status, detail=e.message)


def create_app() -> FastAPI:
    app = FastAPI(title="seqlam", description="sequent calculus / lambda calculus kernel")

    @app.post("/check", response_model=CheckResponse)
    def post_check(req: CheckRequest):
        return _guarded(check, req)

    @app.post("/translate", response_model=TranslateResponse)
    def post_translate(req: TranslateRequest):
        return _guarded(do_translate, req)

    @app.post("/invert", response_model=InvertResponse)
    def post_invert(req: InvertRequest):
        return _guarded(do_invert, req)

    @app.post("/cut-elim", response_model=TransformResponse)
    def post_cut_elim(req: TransformRequest):
        return _guarded(do_cut_elim, req)

    @app.post("/normalize", response_model=TransformResponse)
    def post_normalize(req: TransformRequest):
        return _guarded(do_normalize, req)

    @app.post("/equiv", response_model=EquivResponse)
    def post_equiv(req: EquivRequest):
        return _guarded(do_equiv, req)

    @app.post("/compose", response_model=ComposeResponse)
    def post_compose(req: ComposeRequest):
        return _guarded(do_compose, req)

    @app.post("/trace", response_model=TraceResponse)
    def post_trace(req: TraceRequest):
        return _guarded(do_trace, req)

    @app.get("/health")
    def health() -> dict:
        return {"ok": True}

    return app


app = create_app()
