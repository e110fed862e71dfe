"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines alongside the pytest report.
"""

import random
import threading
import time
import xml.etree.ElementTree as ET
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

import pytest

from syllagraph.analysis import RuleConfig, highlight, stats, validate
from syllagraph.corpus import load_corpus
from syllagraph.dsl import parse, serialize
from syllagraph.emit import emit_bundle, emit_print, emit_site
from syllagraph.linkcheck import CheckConfig, Outcome, check_links
from syllagraph.model import CourseGraph, Resource, ResourceKind, Severity, Side

from conftest import enumerate_routes, make_node, random_dag, random_graph
from test_corpus import EXPECTED_GLOSSARY, EXPECTED_TITLES

FIXTURES = Path(__file__).parent / "fixtures"


class _budget:
    def __init__(self, name, seconds):
        self.name = name
        self.seconds = seconds

    def __enter__(self):
        self.start = time.monotonic()
        return self

    def __exit__(self, *exc):
        if exc[0] is None:
            elapsed = time.monotonic() - self.start
            assert elapsed < self.seconds, (
                f"{self.name} took {elapsed:.2f}s (budget {self.seconds}s)"
            )
            print(f"PASS {self.name} ({elapsed:.2f}s)")


def test_corpus_counts():
    with _budget("corpus-counts", 1.0):
        g = load_corpus()
        assert len(g.nodes) == 27
        s = stats(g)
        assert s.side_counts == {Side.AS: 13, Side.AD: 12, Side.OTHER: 2}
        assert [n.title for n in g.nodes] == EXPECTED_TITLES
        glossary = {e.key: e.meaning for e in g.glossary}
        for key, meaning in EXPECTED_GLOSSARY.items():
            assert glossary[key] == meaning


def test_highlight_oracle_equivalence():
    with _budget("highlight-oracle-500-dags", 30.0):
        rng = random.Random(20260826)
        for _ in range(500):
            g = random_dag(rng, max_nodes=12, max_edges=30)
            origin = rng.choice(g.node_ids)
            hs = highlight(g, origin)
            nodes, edges = enumerate_routes(g, origin)
            assert hs.node_ids == nodes
            assert hs.edge_indices == edges


def test_corpus_route_sanity():
    with _budget("corpus-route-sanity", 1.0):
        g = load_corpus()
        for node_id in g.node_ids:
            hs = highlight(g, node_id)
            assert hs.node_ids, node_id
            assert g.sink_id in hs.node_ids, node_id
        sink_hs = highlight(g, g.sink_id)
        assert sink_hs.node_ids == {g.sink_id}
        assert sink_hs.edge_indices == set()


def test_dsl_round_trip():
    with _budget("dsl-round-trip-1000", 30.0):
        rng = random.Random(1453)
        for _ in range(1000):
            g = random_graph(rng)
            assert parse(serialize(g)) == g
        corpus = load_corpus()
        assert parse(serialize(corpus)) == corpus


def test_lint_fixtures():
    with _budget("lint-fixtures", 5.0):
        expected = {
            "R1": "r1_notation.sgs",
            "R2": "r2_note_brevity.sgs",
            "R3": "r3_video_range.sgs",
            "R4": "r4_sink_reach.sgs",
            "R5": "r5_pos_overlap.sgs",
            "R6": "r6_orphan.sgs",
            "R7": "r7_cycle.sgs",
            "R8": "r8_direct_media.sgs",
        }
        for rule, filename in expected.items():
            g = parse((FIXTURES / filename).read_text("utf-8"))
            disabled = frozenset({"R4"}) if rule == "R6" else frozenset()
            diags = validate(g, RuleConfig(rules_disabled=disabled))
            assert {d.rule for d in diags} == {rule}, filename
        corpus_errors = [
            d for d in validate(load_corpus()) if d.severity is Severity.ERROR
        ]
        assert corpus_errors == []


def test_deterministic_emission():
    with _budget("deterministic-emission", 10.0):
        g = load_corpus()
        assert emit_bundle(g) == emit_bundle(g)
        assert emit_site(g) == emit_site(g)
        svg = emit_print(g)
        assert svg == emit_print(g)
        ns = "{http://www.w3.org/2000/svg}"
        root = ET.fromstring(svg)
        rects = [
            r for r in root.iter(ns + "rect")
            if (r.get("class") or "").startswith("node")
        ]
        arrows = [p for p in root.iter(ns + "path") if p.get("marker-end")]
        assert len(rects) == 27
        assert len(arrows) == len(g.edges)


class _AuditHandler(BaseHTTPRequestHandler):
    in_flight = 0
    max_in_flight = 0
    lock = threading.Lock()

    def _respond(self):
        cls = type(self)
        with cls.lock:
            cls.in_flight += 1
            cls.max_in_flight = max(cls.max_in_flight, cls.in_flight)
        try:
            path = self.path.split("?")[0]
            if path == "/ok":
                time.sleep(0.05)
                self.send_response(200)
            elif path == "/missing":
                self.send_response(404)
            else:  # /slow
                time.sleep(1.0)
                self.send_response(200)
            self.end_headers()
        finally:
            with cls.lock:
                cls.in_flight -= 1

    do_HEAD = _respond
    do_GET = _respond

    def log_message(self, *args):
        pass


def test_link_audit_under_mock_server():
    with _budget("link-audit", 20.0):
        httpd = ThreadingHTTPServer(("127.0.0.1", 0), _AuditHandler)
        threading.Thread(target=httpd.serve_forever, daemon=True).start()
        base = f"http://127.0.0.1:{httpd.server_port}"
        try:
            urls = (
                [f"{base}/ok?i={i}" for i in range(8)]
                + [f"{base}/missing", f"{base}/slow"]
            )
            resources = tuple(
                Resource(ResourceKind.VIDEO, u, f"r{i}") for i, u in enumerate(urls)
            )
            g = CourseGraph(
                title="audit", sink_id="a",
                nodes=(make_node("a", resources=resources),),
            )
            config = CheckConfig(max_concurrent=4, timeout_ms=400, retries=0)
            report = check_links(g, config)
            assert len(report.entries) == len(urls)
            by_path = {e.url.split(base)[1].split("?")[0]: e for e in report.entries}
            assert by_path["/ok"].outcome is Outcome.OK
            assert by_path["/missing"].outcome is Outcome.BROKEN
            assert by_path["/slow"].outcome is Outcome.TIMEOUT
            assert _AuditHandler.max_in_flight <= config.max_concurrent

            # full report under total failure
            _AuditHandler.max_in_flight = 0
            dead = tuple(
                Resource(ResourceKind.VIDEO, f"{base}/slow?i={i}", f"d{i}")
                for i in range(5)
            )
            g2 = CourseGraph(
                title="audit", sink_id="a", nodes=(make_node("a", resources=dead),)
            )
            report2 = check_links(g2, CheckConfig(max_concurrent=8, timeout_ms=200, retries=0))
            assert len(report2.entries) == 5
            assert all(e.outcome is Outcome.TIMEOUT for e in report2.entries)
        finally:
            httpd.shutdown()
