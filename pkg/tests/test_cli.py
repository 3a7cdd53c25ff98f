import json

from click.testing import CliRunner

from seqlam import io
from seqlam.cli import main
from seqlam.proofs import ax, cut
from seqlam.samples import church_two, eta_expanded_axiom, word_001_repeated
from seqlam.syntax import Variable

runner = CliRunner()
TWO = io.proof_to_text(church_two())


def test_translate_stdin():
    r = runner.invoke(main, ["translate"], input=TWO)
    assert r.exit_code == 0
    assert r.output.strip() == "\\x:p. (y (y x))"


def test_translate_file(tmp_path):
    f = tmp_path / "two.sexp"
    f.write_text(TWO)
    r = runner.invoke(main, ["translate", str(f)])
    assert r.exit_code == 0 and "(y (y x))" in r.output


def test_parse_error_exit_code():
    r = runner.invoke(main, ["translate"], input="(((")
    assert r.exit_code == 1


def test_precondition_exit_code():
    bad = io.proof_to_text(word_001_repeated())
    r = runner.invoke(main, ["normalize"], input=bad)
    assert r.exit_code == 2


def test_equiv_verdict(tmp_path):
    norm = runner.invoke(main, ["--format", "sexp", "normalize"], input=TWO)
    f1 = tmp_path / "a.sexp"
    f2 = tmp_path / "b.sexp"
    f1.write_text(TWO)
    f2.write_text(norm.output.strip())
    r = runner.invoke(main, ["equiv", str(f1), str(f2)])
    assert r.exit_code == 0
    assert r.output.splitlines()[0] == "equivalent"


def test_invert_text_output():
    r = runner.invoke(main, ["invert", "\\x:p. x", "--context", ""])
    assert r.exit_code == 0
    assert "(ax)" in r.output and "(R->)" in r.output


def test_invert_sexp_reparses():
    r = runner.invoke(main, ["--format", "sexp", "invert", "\\x:p. (y (y x))",
                             "--context", "y:p->p"])
    assert r.exit_code == 0
    proof = io.proof_from_text(r.output.strip())
    assert proof.conclusion.antecedent[0].name == "y"


def test_json_format():
    r = runner.invoke(main, ["--format", "json", "check"], input=TWO)
    data = json.loads(r.output)
    assert data["valid"] and data["height"] == 4


def test_cut_elim_and_formats():
    proof = cut(church_two(), ax(Variable("w", church_two().conclusion.succedent)), 0)
    r = runner.invoke(main, ["--format", "sexp", "cut-elim"],
                      input=io.proof_to_text(proof))
    assert r.exit_code == 0
    assert "cut" not in r.output.split("(seq")[0]


def test_batch_mode(tmp_path):
    a = tmp_path / "a.sexp"
    b = tmp_path / "b.sexp"
    a.write_text(TWO)
    b.write_text(io.proof_to_text(eta_expanded_axiom()))
    lst = tmp_path / "batch.txt"
    lst.write_text(f"{a}\n{b}\n")
    r = runner.invoke(main, ["translate", "--batch", str(lst)])
    assert r.exit_code == 0
    assert "(y (y x))" in r.output and "(z x)" in r.output


def test_trace_round_trip(tmp_path):
    from seqlam.rewrite import applicable_steps, apply_step
    proof = eta_expanded_axiom()
    step = applicable_steps(proof, "eta")[0]
    target = apply_step(proof, step)
    blob = io.trace_to_json(proof, target, [step])
    f = tmp_path / "trace.json"
    f.write_text(io.dumps_json(blob))
    r = runner.invoke(main, ["--format", "sexp", "trace", str(f)])
    assert r.exit_code == 0
    assert io.proof_from_text(r.output.strip()) == target


def test_seed_flag_accepted():
    r = runner.invoke(main, ["--seed", "7", "translate"], input=TWO)
    assert r.exit_code == 0


def test_output_reparses_and_validates():
    from seqlam.proofs import validate
    r = runner.invoke(main, ["--format", "sexp", "normalize"], input=TWO)
    assert validate(io.proof_from_text(r.output.strip())) == []
