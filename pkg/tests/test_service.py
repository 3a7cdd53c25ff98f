import pytest
from fastapi.testclient import TestClient

from seqlam import io
from seqlam.samples import church_two, church_two_well, word_001_repeated
from seqlam.service import app

client = TestClient(app)
TWO = io.proof_to_text(church_two())


def test_health():
    assert client.get("/health").json() == {"ok": True}


def test_check_endpoint():
    got = client.post("/check", json={"proof": TWO}).json()
    assert got["valid"] and got["cut_free"]
    assert got["height"] == 4
    assert got["rules"]["limp"] == 2


def test_check_rejects_garbage():
    resp = client.post("/check", json={"proof": "(nonsense"})
    assert resp.status_code == 400


def test_translate_endpoint():
    got = client.post("/translate", json={"proof": TWO}).json()
    assert got["term"] == "\\x:p. (y (y x))"
    assert got["type"] == "p -> p"
    assert got["context"] == "y:p -> p"


def test_invert_endpoint_round_trip():
    got = client.post("/invert", json={
        "term": "\\x:p. (y (y x))", "context": "y:p->p"}).json()
    back = client.post("/translate", json={"proof": got["proof"]}).json()
    assert back["term"] == "\\x:p. (y (y x))"
    assert got["report"]["classification"] == "abstraction-nf"


def test_invert_rejects_non_normal():
    resp = client.post("/invert", json={
        "term": "(\\x:p. x) z", "context": "z:p"})
    assert resp.status_code == 422


def test_normalize_endpoint():
    got = client.post("/normalize", json={"proof": TWO}).json()
    reparsed = io.proof_from_text(got["proof"])
    from seqlam.normalize import is_normal
    assert is_normal(reparsed)
    assert got["term"] == "\\x:p. (y (y x))"


def test_normalize_repeated_context_is_422():
    bad = io.proof_to_text(word_001_repeated())
    resp = client.post("/normalize", json={"proof": bad})
    assert resp.status_code == 422
    assert "repetition-free" in resp.json()["detail"]


def test_cut_elim_endpoint():
    from seqlam.proofs import ax, cut, is_cut_free
    from seqlam.syntax import Variable
    left = church_two()
    proof = cut(left, ax(Variable("w", left.conclusion.succedent)), 0)
    got = client.post("/cut-elim", json={"proof": io.proof_to_text(proof)}).json()
    assert is_cut_free(io.proof_from_text(got["proof"]))


def test_equiv_endpoint():
    normal = client.post("/normalize", json={"proof": TWO}).json()["proof"]
    got = client.post("/equiv", json={"proof1": TWO, "proof2": normal}).json()
    assert got["equivalent"]
    assert got["normal_form1"] == got["normal_form2"]


def test_compose_endpoint():
    got = client.post("/compose", json={"outer": TWO, "inner": TWO}).json()
    assert got["normal_form"] == "\\x:p. (y (y (y (y x))))"
    reparsed = io.proof_from_text(got["proof"])
    assert reparsed.conclusion.succedent == io.parse_formula("p -> p")


def test_compose_mismatch_is_422():
    ident_q = client.post("/invert", json={"term": "\\a:q. a"}).json()["proof"]
    resp = client.post("/compose", json={"outer": TWO, "inner": ident_q})
    assert resp.status_code == 422


def test_trace_endpoint_replays():
    from seqlam.rewrite import applicable_steps
    from seqlam.samples import eta_expanded_axiom
    proof = eta_expanded_axiom()
    step = applicable_steps(proof, "eta")[0]
    payload = {
        "proof": io.proof_to_text(proof),
        "steps": [io.step_to_json(step)],
    }
    got = client.post("/trace", json=payload).json()
    reparsed = io.proof_from_text(got["proof"])
    assert reparsed.rule == "ax"


def test_every_emitted_proof_reparses_and_validates():
    from seqlam.proofs import validate
    for endpoint, payload in [
        ("/normalize", {"proof": TWO}),
        ("/cut-elim", {"proof": TWO}),
        ("/invert", {"term": "\\x:p. x", "context": ""}),
    ]:
        got = client.post(endpoint, json=payload).json()
        assert validate(io.proof_from_text(got["proof"])) == []
