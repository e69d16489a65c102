"""Command-line interface.

Subcommands::

    hmreq check FILE...      parse and validate CNL files
    hmreq export FILE        export a CNL file as JSON
    hmreq conflicts PROJECT  print the value-conflict table of a project
    hmreq serve PROJECT      run the dashboard HTTP service

Exit codes: 0 success, 1 the input had Error diagnostics, 2 usage or I/O
problems (missing files, bad lexicon, unreadable project, bind failure).
The lexicon defaults to the bundled seed lexicon; override it with
``--lexicon`` or the ``HMREQ_LEXICON`` environment variable.
"""

from __future__ import annotations

import argparse
import os
import sys

from hmreq import diagnostics as diag
from hmreq.diagnostics import format_diagnostic, format_diagnostic_verbose
from hmreq.jsonio import to_json
from hmreq.lexicon import Lexicon, LexiconError, load_lexicon_file, load_seed_lexicon
from hmreq.parser import parse_document
from hmreq.project import ProjectError, load_project
from hmreq.source import SourceDocument
from hmreq.validation import validate
from hmreq.values import load_value_space

_QUARTILE_ORDER = {"Q1": 1, "Q2": 2, "Q3": 3, "Q4": 4}


def _resolve_lexicon(path: str | None) -> Lexicon:
    path = path or os.environ.get("HMREQ_LEXICON")
    if path is None:
        return load_seed_lexicon()
    return load_lexicon_file(path)


def _read_source(path: str) -> SourceDocument:
    with open(path, encoding="utf-8") as fh:
        return SourceDocument(text=fh.read(), origin=path)


def cmd_check(args: argparse.Namespace) -> int:
    try:
        lexicon = _resolve_lexicon(args.lexicon)
    except (OSError, LexiconError) as exc:
        print(f"hmreq: {exc}", file=sys.stderr)
        return 2
    try:
        sources = [_read_source(path) for path in args.paths]
    except OSError as exc:
        print(f"hmreq: {exc}", file=sys.stderr)
        return 2
    saw_errors = False
    for src in sources:
        doc, diags = parse_document(src, lexicon)
        if doc is not None:
            diags = sorted(
                diags + validate(doc), key=lambda d: d.span.start
            )
        for d in diags:
            if args.format == "machine":
                print(format_diagnostic(d, src))
            else:
                print(format_diagnostic_verbose(d, src))
        saw_errors = saw_errors or diag.has_errors(diags)
    return 1 if saw_errors else 0


def cmd_export(args: argparse.Namespace) -> int:
    try:
        lexicon = _resolve_lexicon(args.lexicon)
        src = _read_source(args.path)
    except (OSError, LexiconError) as exc:
        print(f"hmreq: {exc}", file=sys.stderr)
        return 2
    doc, diags = parse_document(src, lexicon)
    if doc is None:
        for d in diags:
            print(format_diagnostic(d, src), file=sys.stderr)
        return 1
    payload = to_json(doc, diags)
    if args.out is None:
        sys.stdout.write(payload)
        return 0
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    except OSError as exc:
        print(f"hmreq: cannot write {args.out}: {exc}", file=sys.stderr)
        return 2
    return 0


def cmd_conflicts(args: argparse.Namespace) -> int:
    try:
        lexicon = _resolve_lexicon(args.lexicon)
    except (OSError, LexiconError) as exc:
        print(f"hmreq: {exc}", file=sys.stderr)
        return 2
    space = load_value_space()
    try:
        project = load_project(args.project, lexicon, space)
    except ProjectError as exc:
        print(f"hmreq: {exc}", file=sys.stderr)
        return 2
    minimum = _QUARTILE_ORDER[args.min_quartile]
    rows: list[tuple[float, str, list[str]]] = []
    for req in project.document.requirements:
        report = space.requirement_conflicts(
            project.assignments_for(req.id)
        )
        average = report.average
        if average is None:
            continue
        lines = [
            f"{req.id} {p.stakeholder_a}↔{p.stakeholder_b} "
            f"{p.value_a}↔{p.value_b} {p.score:.2f} {p.quartile}"
            for p in report.pairs
            if _QUARTILE_ORDER[p.quartile] >= minimum
        ]
        if not lines:
            continue
        lines.append(f"{req.id} average {average:.2f}")
        rows.append((average, req.id, lines))
    rows.sort(key=lambda r: (-r[0], r[1]))
    for _, _, lines in rows:
        for line in lines:
            print(line)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from hmreq.service import create_app

    try:
        lexicon = _resolve_lexicon(args.lexicon)
    except (OSError, LexiconError) as exc:
        print(f"hmreq: {exc}", file=sys.stderr)
        return 2
    space = load_value_space()
    try:
        app = create_app(args.project, lexicon=lexicon, space=space)
    except ProjectError as exc:
        print(f"hmreq: {exc}", file=sys.stderr)
        return 2
    config = uvicorn.Config(
        app, host=args.bind, port=args.port, log_level="warning"
    )
    server = uvicorn.Server(config)
    try:
        sock = config.bind_socket()
    except (OSError, SystemExit):
        print(
            f"hmreq: cannot bind {args.bind}:{args.port}", file=sys.stderr
        )
        return 2
    try:
        server.run(sockets=[sock])
    except KeyboardInterrupt:
        # uvicorn re-raises the interrupt after its graceful shutdown;
        # reaching this point means the server already stopped cleanly.
        pass
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hmreq",
        description="Check, export, and serve human-monitoring "
        "requirement documents.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser(
        "check", help="parse and validate CNL files"
    )
    p_check.add_argument("paths", nargs="+", metavar="FILE")
    p_check.add_argument("--lexicon", metavar="FILE")
    p_check.add_argument(
        "--format", choices=("text", "machine"), default="text"
    )
    p_check.set_defaults(func=cmd_check)

    p_export = sub.add_parser(
        "export", help="export a CNL file as JSON"
    )
    p_export.add_argument("path", metavar="FILE")
    p_export.add_argument("--out", metavar="FILE")
    p_export.add_argument("--lexicon", metavar="FILE")
    p_export.set_defaults(func=cmd_export)

    p_conflicts = sub.add_parser(
        "conflicts", help="print the value-conflict table of a project"
    )
    p_conflicts.add_argument("project", metavar="PROJECT")
    p_conflicts.add_argument(
        "--min-quartile",
        choices=("Q1", "Q2", "Q3", "Q4"),
        default="Q1",
    )
    p_conflicts.add_argument("--lexicon", metavar="FILE")
    p_conflicts.set_defaults(func=cmd_conflicts)

    p_serve = sub.add_parser(
        "serve", help="run the dashboard HTTP service"
    )
    p_serve.add_argument("project", metavar="PROJECT")
    p_serve.add_argument("--port", type=int, default=8645)
    p_serve.add_argument("--bind", default="127.0.0.1")
    p_serve.add_argument("--lexicon", metavar="FILE")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
