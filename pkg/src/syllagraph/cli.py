"""Command-line front end.

Exit codes: 0 success, 1 validation errors present, 2 parse failure,
3 I/O failure, 4 bad invocation.  Diagnostics go to stderr so stdout stays
pipe-clean for --format json consumers.  SYLLAGRAPH_NO_COLOR disables ANSI
styling.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from . import analysis, dsl, emit, linkcheck
from .emit import SCHEMA_VERSION
from .model import CourseGraph, Severity

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_PARSE = 2
EXIT_IO = 3
EXIT_USAGE = 4


def _use_color(stream) -> bool:
    if os.environ.get("SYLLAGRAPH_NO_COLOR"):
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def _style(text: str, code: str, stream) -> str:
    if _use_color(stream):
        return f"\x1b[{code}m{text}\x1b[0m"
    return text


def _load(path: str) -> CourseGraph | int:
    """Parse the file at path, or print errors and return an exit code."""
    try:
        source = Path(path).read_text("utf-8")
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        return dsl.parse(source)
    except dsl.ParseFailure as failure:
        for err in failure.errors:
            print(_style(f"{path}:{err}", "31", sys.stderr), file=sys.stderr)
        return EXIT_PARSE


def _diag_obj(d) -> dict:
    return {
        "severity": d.severity.value,
        "rule": d.rule,
        "message": d.message,
        "subject": d.subject,
    }


def cmd_validate(args) -> int:
    graph = _load(args.path)
    if isinstance(graph, int):
        return graph
    config = analysis.RuleConfig(
        max_note_chars=args.max_note_chars,
        min_videos=args.min_videos,
        max_videos=args.max_videos,
        rules_disabled=frozenset(args.disable or ()),
    )
    diagnostics = analysis.validate(graph, config)
    if args.format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "diagnostics": [_diag_obj(d) for d in diagnostics],
        }
        print(json.dumps(doc, sort_keys=True, indent=1))
    else:
        for d in diagnostics:
            color = "31" if d.severity is Severity.ERROR else "33"
            tag = _style(d.severity.value, color, sys.stderr)
            where = f" [{d.subject}]" if d.subject else ""
            print(f"{tag} {d.rule}{where}: {d.message}", file=sys.stderr)
        if not diagnostics:
            print("clean: no findings", file=sys.stderr)
    has_errors = any(d.severity is Severity.ERROR for d in diagnostics)
    return EXIT_VALIDATION if has_errors else EXIT_OK


def cmd_highlight(args) -> int:
    graph = _load(args.path)
    if isinstance(graph, int):
        return graph
    ids = {n.id for n in graph.nodes}
    if args.node not in ids:
        print(
            f"error: unknown node {args.node!r}; valid ids: {', '.join(sorted(ids))}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    hs = analysis.highlight(graph, args.node)
    edges = [
        f"{graph.edges[i].from_id}->{graph.edges[i].to_id}:{graph.edges[i].kind.value}"
        for i in sorted(hs.edge_indices)
    ]
    if args.format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "origin": hs.origin,
            "node_ids": sorted(hs.node_ids),
            "edge_indices": sorted(hs.edge_indices),
            "edges": edges,
        }
        print(json.dumps(doc, sort_keys=True, indent=1))
    else:
        print(f"origin: {hs.origin}")
        print("nodes:")
        for node_id in sorted(hs.node_ids):
            print(f"  {node_id}")
        print("edges:")
        for e in edges:
            print(f"  {e}")
    return EXIT_OK


def _write_atomic(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".sg-tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_emit(args) -> int:
    graph = _load(args.path)
    if isinstance(graph, int):
        return graph
    what = args.what
    wanted = ("bundle", "site", "print") if what == "all" else (what,)
    out = Path(args.out)

    # stage everything in memory first so failures leave no partial files
    try:
        staged: dict[str, bytes] = {}
        if "bundle" in wanted:
            staged["bundle.json"] = emit.emit_bundle(graph)
        if "site" in wanted:
            for rel, data in emit.emit_site(graph).items():
                staged[rel] = data
        if "print" in wanted:
            staged["print.svg"] = emit.emit_print(graph)
    except emit.EmitError as exc:
        for d in exc.diagnostics:
            print(
                _style(f"error {d.rule}: {d.message}", "31", sys.stderr),
                file=sys.stderr,
            )
        return EXIT_VALIDATION

    try:
        for rel, data in staged.items():
            target = out / rel
            _write_atomic(target, data)
            print(str(target))
    except OSError as exc:
        print(f"error: cannot write under {out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_check_links(args) -> int:
    graph = _load(args.path)
    if isinstance(graph, int):
        return graph
    config = linkcheck.CheckConfig(
        max_concurrent=args.max_concurrent,
        timeout_ms=args.timeout_ms,
        retries=args.retries,
    )
    report = linkcheck.check_links(graph, config)
    if args.format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "entries": [
                {
                    "node_id": e.node_id,
                    "url": e.url,
                    "outcome": e.outcome.value,
                    "http_status": e.http_status,
                    "latency_ms": e.latency_ms,
                }
                for e in report.entries
            ],
            "summary": report.summary,
        }
        print(json.dumps(doc, sort_keys=True, indent=1))
    else:
        for e in report.entries:
            status = str(e.http_status) if e.http_status is not None else "-"
            print(f"{e.outcome.value:<12} {status:>4} {e.latency_ms:>6}ms "
                  f"{e.node_id}  {e.url}")
        summary = report.summary
        print(
            f"checked {len(report.entries)}: {summary['ok']} ok, "
            f"{summary['broken']} broken, {summary['timeout']} timeout, "
            f"{summary['invalid_url']} invalid",
            file=sys.stderr,
        )
    bad = report.summary["broken"] + report.summary["timeout"] + report.summary["invalid_url"]
    if args.strict and bad:
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_stats(args) -> int:
    graph = _load(args.path)
    if isinstance(graph, int):
        return graph
    s = analysis.stats(graph)
    if args.format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "node_count": s.node_count,
            "edge_count": s.edge_count,
            "side_counts": {k.value: v for k, v in s.side_counts.items()},
            "kind_counts": {k.value: v for k, v in s.kind_counts.items()},
            "video_link_total": s.video_link_total,
            "text_link_total": s.text_link_total,
        }
        print(json.dumps(doc, sort_keys=True, indent=1))
    else:
        rows = [
            ("nodes", s.node_count),
            ("edges", s.edge_count),
        ]
        rows += [(f"side {k.value}", v) for k, v in s.side_counts.items()]
        rows += [(f"kind {k.value}", v) for k, v in s.kind_counts.items()]
        rows += [
            ("video links", s.video_link_total),
            ("text links", s.text_link_total),
        ]
        width = max(len(name) for name, _ in rows)
        for name, value in rows:
            print(f"{name:<{width}}  {value}")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="syllagraph", description="Course-graph compiler toolchain")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="run the lint rule registry")
    p.add_argument("path")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--max-note-chars", type=int, default=80)
    p.add_argument("--min-videos", type=int, default=5)
    p.add_argument("--max-videos", type=int, default=10)
    p.add_argument("--disable", action="append", metavar="RULE",
                   help="disable a rule id (repeatable)")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("highlight", help="routes from a node to the sink")
    p.add_argument("path")
    p.add_argument("--node", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_highlight)

    p = sub.add_parser("emit", help="write bundle, site, or print view")
    p.add_argument("path")
    p.add_argument("--out", required=True)
    p.add_argument("--what", choices=("bundle", "site", "print", "all"), default="all")
    p.set_defaults(func=cmd_emit)

    p = sub.add_parser("check-links", help="audit resource link health")
    p.add_argument("path")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--max-concurrent", type=int, default=8)
    p.add_argument("--timeout-ms", type=int, default=10_000)
    p.add_argument("--retries", type=int, default=1)
    p.add_argument("--strict", action="store_true",
                   help="exit 1 when any link is broken, timed out, or invalid")
    p.set_defaults(func=cmd_check_links)

    p = sub.add_parser("stats", help="graph statistics")
    p.add_argument("path")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:
    raise SystemExit(main())
