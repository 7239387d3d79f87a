"""Command-line front end: ``prefonto <command> <kb> ...``.

Exit status is 0 on success, 1 when the KB or the question is at fault
(unknown ids, violations, no applicable preference) and 2 for usage errors
and unparseable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from . import document
from .decision import DecisionProblem, decide
from .errors import IoError, ParseError, PrefOntoError, QuerySyntaxError, ValidationFailed
from .explain import explain, render
from .inference import derive_cause_preferences, fulfillable
from .query import evaluate, parse

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise _UsageError(f"{self.prog}: {message}")


def _ids(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    p = _ArgumentParser(prog="prefonto", description="Query and reason over a preference knowledge base.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    v = sub.add_parser("validate", help="check a KB document against its constraints")
    v.add_argument("kb")

    q = sub.add_parser("query", help="evaluate a query")
    q.add_argument("kb")
    src = q.add_mutually_exclusive_group(required=True)
    src.add_argument("-q", dest="query_file", metavar="FILE")
    src.add_argument("-e", dest="query_text", metavar="QUERY")
    q.add_argument("--format", choices=("table", "json"), default="table")

    d = sub.add_parser("decide", help="choose among options for an agent")
    d.add_argument("kb")
    d.add_argument("--agent", required=True)
    d.add_argument("--options", required=True, type=_ids, help="comma-separated description ids")
    d.add_argument("--context")
    d.add_argument("--inventory", type=_ids)
    d.add_argument("--depth", type=int, default=1)

    f = sub.add_parser("fulfill", help="check whether an option can be realised from an inventory")
    f.add_argument("kb")
    f.add_argument("--option", required=True)
    f.add_argument("--inventory", required=True, type=_ids)
    f.add_argument("--depth", type=int, default=1)

    i = sub.add_parser("infer", help="derive a preference over causes from one over effects")
    i.add_argument("kb")
    i.add_argument("--order", required=True)
    i.add_argument("--links", required=True, metavar="FILE",
                   help="JSON list of {cause, effect} records or [cause, effect] pairs")

    x = sub.add_parser("explain", help="show why an option ranks where it does")
    x.add_argument("kb")
    x.add_argument("--choice", required=True)
    x.add_argument("--agent", required=True)
    x.add_argument("--options", type=_ids)
    x.add_argument("--context")
    x.add_argument("--inventory", type=_ids)
    x.add_argument("--depth", type=int, default=1)
    return p


def _read_links(path: str) -> list[tuple[str, str]]:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from None
    links = []
    for k, rec in enumerate(data if isinstance(data, list) else [None]):
        if isinstance(rec, dict) and set(rec) == {"cause", "effect"}:
            links.append((rec["cause"], rec["effect"]))
        elif isinstance(rec, list) and len(rec) == 2:
            links.append((rec[0], rec[1]))
        else:
            raise ParseError("expected a list of {cause, effect} records", f"{path}:$[{k}]")
    return links


def _validate(args, out: TextIO) -> int:
    try:
        kb = document.load(args.kb, strict=False)
    except ValidationFailed as exc:
        report = exc.report
    else:
        report = kb.load_report
    for v in report:
        print(v, file=out)
    n = len(report)
    print(f"{n} violation{'s' if n != 1 else ''}", file=out)
    return EXIT_OK if report.ok else EXIT_DOMAIN


def _query(args, out: TextIO) -> int:
    if args.query_file is not None:
        try:
            with open(args.query_file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise IoError(f"cannot read {args.query_file}: {exc.strerror}") from None
    else:
        text = args.query_text
    query = parse(text)
    table = evaluate(query, document.load(args.kb))
    print(table.dumps() if args.format == "json" else table.to_text(), file=out)
    return EXIT_OK


def _decide(args, out: TextIO) -> int:
    kb = document.load(args.kb)
    result = decide(kb, DecisionProblem(args.agent, tuple(args.options), args.context),
                    inventory=args.inventory, depth=args.depth)
    print("choices: " + ", ".join(result.choices), file=out)
    for opt, els in result.matched.items():
        print(f"matched: {opt} -> {', '.join(els)}", file=out)
    if result.unmatched:
        print("unmatched: " + ", ".join(result.unmatched), file=out)
    if result.infeasible:
        print("infeasible: " + ", ".join(result.infeasible), file=out)
    print("orders: " + ", ".join(result.provenance), file=out)
    return EXIT_OK


def _fulfill(args, out: TextIO) -> int:
    kb = document.load(args.kb)
    r = fulfillable(kb, args.option, args.inventory, args.depth)
    print(f"{r.option}: {'fulfillable' if r.fulfillable else 'not fulfillable'}", file=out)
    for var, ind in sorted(r.bindings.items()):
        print(f"  ?{var} <- {ind}", file=out)
    for s in r.substitutions:
        print(f"  substitution: {s.supplied} for {s.required} (shared ancestor {s.ancestor})", file=out)
    for var in r.missing:
        print(f"  missing: ?{var}", file=out)
    return EXIT_OK if r.fulfillable else EXIT_DOMAIN


def _infer(args, out: TextIO) -> int:
    kb = document.load(args.kb)
    derived = derive_cause_preferences(kb, args.order, _read_links(args.links))
    print(f"derived order {derived.id} from {args.order}", file=out)
    for el in sorted(derived.elements):
        print(f"  element {el}", file=out)
    for a, b in derived.closure_pairs(reflexive=False):
        print(f"  {a} <= {b}", file=out)
    return EXIT_OK


def _explain(args, out: TextIO) -> int:
    kb = document.load(args.kb)
    expl = explain(kb, args.choice, args.agent, options=args.options, context=args.context,
                   inventory=args.inventory, depth=args.depth)
    print(render(kb, expl), file=out)
    return EXIT_OK


_COMMANDS = {
    "validate": _validate, "query": _query, "decide": _decide,
    "fulfill": _fulfill, "infer": _infer, "explain": _explain,
}


def run_cli(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args, out)
    except (QuerySyntaxError, ParseError, IoError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except (PrefOntoError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run_cli())
