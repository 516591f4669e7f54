"""Command-line interface.

    missing-why explain --ontology F --query "SubClassOf(:A :B)" --method M
                        [--signature F2] [--max-classes K] [--format json|dot]
                        [--limit N] [--out F3]
    missing-why abduce  --ontology F --query Q [--query Q2 ...]
                        [--signature F2] [--max-axioms N] [--max-depth N] [--limit N]
    missing-why unravel --hypotheses F --count N
    missing-why serve   [--port P] [--host H]
"""

from __future__ import annotations

import argparse
import sys

from . import service
from .abduction import parse_fixpoint_blocks, unravel_fixpoints
from .errors import AlreadyEntailed, MissingWhyError
from .graphdoc import graph_to_dot, graph_to_json
from .parsing import parse
from .syntax import render


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _write_out(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load_signature(path: str | None):
    if path is None:
        return None
    return service.signature_from_json(_read(path))


def _session_for(args) -> service.Session:
    session = service.create_session(_read(args.ontology))
    missing = [parse(q, kind="axiom") for q in args.query]
    service.set_query(session, missing, _load_signature(args.signature))
    return session


def _cmd_explain(args) -> int:
    session = _session_for(args)
    support = service.check_support(session, args.method)
    if not support.supported:
        print(f"not supported: {support.message}", file=sys.stderr)
        return 2
    try:
        result = service.generate_explanations(session, args.method, page_size=args.limit)
    except AlreadyEntailed as exc:
        print(f"The entailment holds -- nothing to explain. ({exc.axiom_text})")
        return 0
    if isinstance(result.payload, service.GraphPayload):
        doc = service.result_graph(session, args.max_classes)
        text = graph_to_dot(doc) if args.format == "dot" else graph_to_json(doc)
        _write_out(text, args.out)
        if result.payload.relevant is not None and not args.out:
            part = result.payload.relevant
            print(f"# witness: {part.witness}", file=sys.stderr)
            if part.contrast:
                print(f"# contrast: {part.contrast}", file=sys.stderr)
            for condition in part.conditions:
                print(f"# condition: {render(condition)}", file=sys.stderr)
    else:
        lines = []
        for i, hyp in enumerate(result.payload.hypotheses):
            status = {True: "verified", False: "failed", None: "unverifiable"}[hyp.verified]
            lines.append(f"[{i}] ({status}) " + " ".join(render(a) for a in hyp.axioms))
        _write_out("\n".join(lines) + ("\n" if lines else ""), args.out)
    return 0


def _cmd_abduce(args) -> int:
    session = _session_for(args)
    session.options.abduction_max_axioms = args.max_axioms
    session.options.abduction_max_depth = args.max_depth
    try:
        result = service.generate_explanations(
            session, service.NAIVE_ABDUCTION, page_size=args.limit
        )
    except AlreadyEntailed as exc:
        print(f"The entailment holds -- nothing to explain. ({exc.axiom_text})")
        return 0
    lines = []
    for i, hyp in enumerate(result.payload.hypotheses):
        lines.append(f"[{i}] " + " ".join(render(a) for a in hyp.axioms))
    if result.payload.exhausted:
        lines.append("(exhausted: no further hypotheses within the bounds)")
    _write_out("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_unravel(args) -> int:
    fixpoints = parse_fixpoint_blocks(_read(args.hypotheses))
    hypotheses = unravel_fixpoints(fixpoints, args.count)
    lines = []
    for i, hyp in enumerate(hypotheses):
        lines.append(f"[{i}] (depth {hyp.depth}) " + " ".join(render(a) for a in hyp.axioms))
    _write_out("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .httpapi import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="missing-why",
        description="Explain why an ontology does not entail an axiom",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    explain = sub.add_parser("explain", help="generate a counterexample or hypotheses")
    explain.add_argument("--ontology", required=True)
    explain.add_argument("--query", action="append", required=True)
    explain.add_argument("--method", default=service.SMALL_MODEL, choices=service.METHODS)
    explain.add_argument("--signature", default=None)
    explain.add_argument("--max-classes", type=int, default=service.DEFAULT_LABEL_COUNT)
    explain.add_argument("--format", default="json", choices=("json", "dot"))
    explain.add_argument("--limit", type=int, default=5)
    explain.add_argument("--out", default=None)
    explain.set_defaults(func=_cmd_explain)

    abduce = sub.add_parser("abduce", help="signature-bounded abduction")
    abduce.add_argument("--ontology", required=True)
    abduce.add_argument("--query", action="append", required=True)
    abduce.add_argument("--signature", default=None)
    abduce.add_argument("--max-axioms", type=int, default=2)
    abduce.add_argument("--max-depth", type=int, default=1)
    abduce.add_argument("--limit", type=int, default=10)
    abduce.add_argument("--out", default=None)
    abduce.set_defaults(func=_cmd_abduce)

    unravel = sub.add_parser("unravel", help="unravel fixpoint hypotheses")
    unravel.add_argument("--hypotheses", required=True)
    unravel.add_argument("--count", type=int, required=True)
    unravel.add_argument("--out", default=None)
    unravel.set_defaults(func=_cmd_unravel)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--port", type=int, default=8080)
    serve.add_argument("--host", default="127.0.0.1")
    serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MissingWhyError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
