"""Command line front end.

Each verb is a thin client of the service layer: requests are built from the
arguments, dispatched in-process by default, or posted to a running server
with ``--server``.  Exit codes: 0 on success, 1 on parse errors, 2 on
precondition violations (for example a repeated context for ``equiv``).
"""
from __future__ import annotations

import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor

import click

from . import io, service
from .proofs import ProofError
from .syntax import ParseError

PARSE_EXIT = 1
PRECONDITION_EXIT = 2


class Session:
    def __init__(self, fmt: str, server: str | None, seed: int, trace_out: str | None):
        self.format = fmt
        self.server = server
        self.rng = random.Random(seed)
        self.trace_out = trace_out

    def call(self, verb: str, payload: dict) -> dict:
        if self.server:
            import httpx
            resp = httpx.post(f"{self.server.rstrip('/')}/{verb}", json=payload,
                              timeout=120.0)
            if resp.status_code == 400:
                raise ParseError(resp.json().get("detail", "bad input"), 0)
            if resp.status_code == 422:
                raise ProofError(resp.json().get("detail", "precondition violation"))
            resp.raise_for_status()
            return resp.json()
        model, fn = service.HANDLERS[verb]
        try:
            result = fn(model(**payload))
        except service.ServiceError as e:
            if e.status == 400:
                raise ParseError(e.message, 0) from e
            raise ProofError(e.message) from e
        return result.model_dump()


pass_session = click.make_pass_decorator(Session)


@click.group()
@click.option("--format", "fmt", type=click.Choice(["text", "json", "sexp"]),
              default="text", help="output format")
@click.option("--server", default=None, help="base URL of a running service")
@click.option("--seed", default=0, type=int, help="seed for any sampling")
@click.option("--trace", "trace_out", default=None,
              type=click.Path(dir_okay=False), help="write a rewrite trace here")
@click.pass_context
def main(ctx, fmt, server, seed, trace_out):
    """Sequent calculus and lambda calculus kernel."""
    ctx.obj = Session(fmt, server, seed, trace_out)


def _read_input(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _fail(exc: Exception, code: int):
    click.echo(f"error: {exc}", err=True)
    sys.exit(code)


def _guard(fn, *args):
    try:
        return fn(*args)
    except ParseError as e:
        _fail(e, PARSE_EXIT)
    except ProofError as e:
        _fail(e, PRECONDITION_EXIT)


def _emit_proof(session: Session, sexp_text: str) -> None:
    proof = io.proof_from_text(sexp_text)
    if session.format == "sexp":
        click.echo(sexp_text)
    elif session.format == "json":
        click.echo(io.dumps_json(io.proof_to_json(proof)))
    else:
        click.echo(io.pretty_proof(proof))


def _batch_paths(batch: str | None) -> list[str] | None:
    if batch is None:
        return None
    with open(batch) as fh:
        return [line.strip() for line in fh if line.strip()]


def _run_batch(paths: list[str], worker) -> None:
    with ThreadPoolExecutor(max_workers=4) as pool:
        for path, result in zip(paths, pool.map(worker, paths)):
            click.echo(f"== {path}")
            click.echo(result)


@main.command()
@click.argument("path", required=False)
@click.option("--batch", default=None, type=click.Path(exists=True))
@pass_session
def check(session: Session, path, batch):
    """Validate a proof and report its structural properties."""
    paths = _batch_paths(batch)
    if paths is not None:
        _run_batch(paths, lambda p: io.dumps_json(
            _guard(session.call, "check", {"proof": _read_input(p)})))
        return
    result = _guard(session.call, "check", {"proof": _read_input(path)})
    if session.format == "text":
        for key, value in result.items():
            click.echo(f"{key}: {value}")
    else:
        click.echo(io.dumps_json(result))
    if not result["valid"]:
        sys.exit(PRECONDITION_EXIT)


@main.command()
@click.argument("path", required=False)
@click.option("--batch", default=None, type=click.Path(exists=True))
@pass_session
def translate(session: Session, path, batch):
    """Translate a proof to its lambda term."""
    paths = _batch_paths(batch)
    if paths is not None:
        _run_batch(paths, lambda p: _guard(
            session.call, "translate", {"proof": _read_input(p)})["term"])
        return
    result = _guard(session.call, "translate", {"proof": _read_input(path)})
    if session.format == "text":
        click.echo(result["term"])
    else:
        click.echo(io.dumps_json(result))


@main.command()
@click.argument("term", required=False)
@click.option("--context", default="", help='hypotheses, e.g. "y:p->p, x:p"')
@pass_session
def invert(session: Session, term, context):
    """Build the normal proof of a beta-eta-normal term."""
    text = term if term is not None else sys.stdin.read()
    result = _guard(session.call, "invert", {"term": text, "context": context})
    if session.format == "json":
        click.echo(io.dumps_json(result))
    else:
        _emit_proof(session, result["proof"])


@main.command(name="cut-elim")
@click.argument("path", required=False)
@pass_session
def cut_elim(session: Session, path):
    """Eliminate every cut from a proof."""
    payload = {"proof": _read_input(path), "trace": session.trace_out is not None}
    result = _guard(session.call, "cut-elim", payload)
    if session.trace_out and result.get("trace"):
        with open(session.trace_out, "w") as fh:
            fh.write(io.dumps_json(result["trace"]))
    _emit_proof(session, result["proof"])


@main.command()
@click.argument("path", required=False)
@pass_session
def normalize(session: Session, path):
    """Rewrite a proof to its normal form."""
    payload = {"proof": _read_input(path), "trace": session.trace_out is not None}
    result = _guard(session.call, "normalize", payload)
    if session.trace_out and result.get("trace"):
        with open(session.trace_out, "w") as fh:
            fh.write(io.dumps_json(result["trace"]))
    _emit_proof(session, result["proof"])


@main.command()
@click.argument("path1")
@click.argument("path2")
@pass_session
def equiv(session: Session, path1, path2):
    """Decide whether two proofs of the same sequent are equivalent."""
    result = _guard(session.call, "equiv",
                    {"proof1": _read_input(path1), "proof2": _read_input(path2)})
    if session.format == "text":
        click.echo("equivalent" if result["equivalent"] else "inequivalent")
        click.echo(f"normal form 1: {result['normal_form1']}")
        click.echo(f"normal form 2: {result['normal_form2']}")
    else:
        click.echo(io.dumps_json(result))


@main.command()
@click.argument("outer")
@click.argument("inner")
@pass_session
def compose(session: Session, outer, inner):
    """Compose two proofs of implications over a shared context."""
    result = _guard(session.call, "compose",
                    {"outer": _read_input(outer), "inner": _read_input(inner)})
    if session.format == "text":
        click.echo(result["term"])
        click.echo(result["proof"])
    else:
        click.echo(io.dumps_json(result))


@main.command()
@click.argument("trace_file", type=click.Path(exists=True))
@pass_session
def trace(session: Session, trace_file):
    """Replay a serialized rewrite-step trace against its source proof."""
    with open(trace_file) as fh:
        data = json.load(fh)
    result = _guard(session.call, "trace",
                    {"proof": data["source"], "steps": data["steps"]})
    want = data.get("target")
    if want and result["proof"] != want:
        click.echo("replay diverged from the recorded target", err=True)
        sys.exit(PRECONDITION_EXIT)
    _emit_proof(session, result["proof"])


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8421, type=int)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn
    uvicorn.run("seqlam.service:app", host=host, port=port)


if __name__ == "__main__":
    main()
