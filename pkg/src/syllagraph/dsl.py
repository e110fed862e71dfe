"""Parser and canonical serializer for the .sgs syllabus source format.

Grammar (version 1):

    syllagraph 1                      # optional pragma, first thing in the file
    syllabus "<title>" {
      sink <id>
      meta <key>: "<value>"
      symbol "<key>" = "<meaning>"
      node <id> {
        title: "<text>"
        side: as | ad | other
        pos: (<int>, <int>)
        chapter: <int>                # repeatable, strictly increasing
        uses: <symbol-key>            # repeatable; quoted when not identifier-shaped
        video: "<url>" "<label>"      # likewise text: / audio:
        note: "<text>"
      }
      edge <a> -> <b> : derivative | common_part | perspective ["<note>"]
    }

Comments run from `#` to end of line.  LF and CRLF are both accepted;
serialization always emits LF.  Parsing recovers to the next top-level
directive after an error so several mistakes are reported in one pass.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .model import (
    CourseGraph,
    Edge,
    GraphConstructionError,
    Node,
    RelationshipKind,
    Resource,
    ResourceKind,
    Side,
    SymbolEntry,
    is_valid_id,
)


@dataclass(frozen=True)
class ParseError:
    line: int
    column: int
    expected: str
    found: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: expected {self.expected}, found {self.found!r}"


class ParseFailure(ValueError):
    """Carries every ParseError collected in one pass over the source."""

    def __init__(self, errors: list[ParseError]):
        self.errors = list(errors)
        super().__init__("; ".join(str(e) for e in self.errors))


# --- tokenizer -------------------------------------------------------------

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT_RE = re.compile(r"[0-9]+")

_PUNCT = ("->", "{", "}", "(", ")", ",", ":", "=")

_ESCAPES = {"\\": "\\", '"': '"', "n": "\n", "t": "\t", "r": "\r"}
_UNESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\t": "\\t", "\r": "\\r"}


@dataclass(frozen=True)
class Token:
    kind: str  # "ident" | "int" | "string" | "punct" | "eof"
    value: str
    line: int
    column: int


def _tokenize(text: str) -> tuple[list[Token], list[ParseError]]:
    tokens: list[Token] = []
    errors: list[ParseError] = []
    i, line, col = 0, 1, 1
    n = len(text)

    def advance(k: int) -> None:
        nonlocal i, line, col
        for _ in range(k):
            if text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        c = text[i]
        if c in " \t\r\n":
            advance(1)
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                advance(1)
            continue
        if c == '"':
            sline, scol = line, col
            advance(1)
            out: list[str] = []
            closed = False
            while i < n:
                c = text[i]
                if c == '"':
                    advance(1)
                    closed = True
                    break
                if c == "\n":
                    break
                if c == "\\":
                    if i + 1 < n and text[i + 1] in _ESCAPES:
                        out.append(_ESCAPES[text[i + 1]])
                        advance(2)
                        continue
                    errors.append(
                        ParseError(line, col, "escape sequence", text[i : i + 2])
                    )
                    advance(min(2, n - i))
                    continue
                out.append(c)
                advance(1)
            if not closed:
                errors.append(ParseError(sline, scol, "closing quote", "end of line"))
            tokens.append(Token("string", "".join(out), sline, scol))
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            tokens.append(Token("ident", m.group(), line, col))
            advance(len(m.group()))
            continue
        m = _INT_RE.match(text, i)
        if m:
            tokens.append(Token("int", m.group(), line, col))
            advance(len(m.group()))
            continue
        for p in _PUNCT:
            if text.startswith(p, i):
                tokens.append(Token("punct", p, line, col))
                advance(len(p))
                break
        else:
            errors.append(ParseError(line, col, "token", c))
            advance(1)
    tokens.append(Token("eof", "", line, col))
    return tokens, errors


# --- parser ----------------------------------------------------------------

_TOP_KEYWORDS = {"sink", "meta", "node", "edge", "symbol"}

_SIDES = {"as": Side.AS, "ad": Side.AD, "other": Side.OTHER}
_KINDS = {k.value: k for k in RelationshipKind}
_RESOURCE_KINDS = {k.value: k for k in ResourceKind}


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.errors: list[ParseError] = []

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        t = self.tokens[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def error(self, tok: Token, expected: str) -> None:
        found = tok.value if tok.kind != "eof" else "end of input"
        self.errors.append(ParseError(tok.line, tok.column, expected, found))

    def expect_punct(self, value: str) -> Optional[Token]:
        t = self.peek()
        if t.kind == "punct" and t.value == value:
            return self.next()
        self.error(t, f'"{value}"')
        return None

    def expect(self, kind: str, what: str) -> Optional[Token]:
        t = self.peek()
        if t.kind == kind:
            return self.next()
        self.error(t, what)
        return None

    def sync_top(self) -> None:
        """Skip to the next top-level directive keyword.

        Node-internal directive names never collide with the top-level
        keyword set, so scanning for the next keyword is enough to resume
        after an error anywhere inside a block.
        """
        while True:
            t = self.peek()
            if t.kind == "eof":
                return
            if t.kind == "ident" and t.value in _TOP_KEYWORDS:
                return
            self.next()

    # -- productions --

    def parse_file(self) -> Optional[CourseGraph]:
        t = self.peek()
        if t.kind == "ident" and t.value == "syllagraph":
            self.next()
            v = self.expect("int", "format version")
            if v is not None and v.value != "1":
                self.error(v, 'format version "1"')
        t = self.peek()
        if not (t.kind == "ident" and t.value == "syllabus"):
            self.error(t, '"syllabus"')
            return None
        self.next()
        title_tok = self.expect("string", "quoted syllabus title")
        self.expect_punct("{")

        nodes: list[tuple[Token, Node | None]] = []
        edges: list[tuple[Token, Edge | None]] = []
        symbols: list[tuple[Token, SymbolEntry | None]] = []
        meta: list[tuple[str, str]] = []
        meta_keys: set[str] = set()
        sinks: list[Token] = []

        while True:
            t = self.peek()
            if t.kind == "eof":
                self.error(t, '"}"')
                break
            if t.kind == "punct" and t.value == "}":
                self.next()
                break
            if t.kind != "ident" or t.value not in _TOP_KEYWORDS:
                self.error(t, "sink, meta, node, edge, or symbol")
                self.next()
                self.sync_top()
                continue
            before = len(self.errors)
            if t.value == "sink":
                self.next()
                idt = self.expect("ident", "node id")
                if idt is not None:
                    sinks.append(idt)
            elif t.value == "meta":
                self.next()
                key = self.expect("ident", "meta key")
                self.expect_punct(":")
                val = self.expect("string", "quoted meta value")
                if key is not None and val is not None:
                    if key.value in meta_keys:
                        self.error(key, "unique meta key")
                    else:
                        meta_keys.add(key.value)
                        meta.append((key.value, val.value))
            elif t.value == "symbol":
                self.next()
                key = self.expect("string", "quoted symbol key")
                self.expect_punct("=")
                meaning = self.expect("string", "quoted symbol meaning")
                if key is not None and meaning is not None:
                    try:
                        symbols.append((key, SymbolEntry(key.value, meaning.value)))
                    except GraphConstructionError as exc:
                        self.errors.append(
                            ParseError(key.line, key.column, str(exc), key.value)
                        )
            elif t.value == "node":
                kw = self.next()
                nodes.append((kw, self.parse_node(kw)))
            elif t.value == "edge":
                kw = self.next()
                edges.append((kw, self.parse_edge()))
            if len(self.errors) > before:
                self.sync_top()

        t = self.peek()
        if t.kind != "eof":
            self.error(t, "end of input")

        if self.errors:
            return None
        return self.build_graph(title_tok, sinks, nodes, edges, symbols, meta)

    def parse_node(self, kw: Token) -> Optional[Node]:
        idt = self.expect("ident", "node id")
        if idt is not None and not is_valid_id(idt.value):
            self.error(idt, "node id (lowercase letters, digits, underscore)")
        if self.expect_punct("{") is None:
            return None

        title: Optional[str] = None
        side: Optional[Side] = None
        pos: Optional[tuple[int, int]] = None
        chapters: list[int] = []
        uses: list[str] = []
        resources: list[Resource] = []
        note: Optional[str] = None

        while True:
            t = self.peek()
            if t.kind == "punct" and t.value == "}":
                self.next()
                break
            if t.kind == "eof":
                self.error(t, '"}"')
                return None
            if t.kind != "ident":
                self.error(t, "node directive")
                return None
            name = t.value
            self.next()
            if self.expect_punct(":") is None:
                return None
            if name == "title":
                s = self.expect("string", "quoted title")
                if s is None:
                    return None
                if title is not None:
                    self.error(t, "at most one title directive")
                    return None
                title = s.value
            elif name == "side":
                s = self.expect("ident", "side (as, ad, or other)")
                if s is None:
                    return None
                if s.value not in _SIDES:
                    self.error(s, "side (as, ad, or other)")
                    return None
                if side is not None:
                    self.error(t, "at most one side directive")
                    return None
                side = _SIDES[s.value]
            elif name == "pos":
                if self.expect_punct("(") is None:
                    return None
                a = self.expect("int", "grid column")
                if a is None or self.expect_punct(",") is None:
                    return None
                b = self.expect("int", "grid row")
                if b is None or self.expect_punct(")") is None:
                    return None
                if pos is not None:
                    self.error(t, "at most one pos directive")
                    return None
                pos = (int(a.value), int(b.value))
            elif name == "chapter":
                c = self.expect("int", "chapter number")
                if c is None:
                    return None
                chapters.append(int(c.value))
            elif name == "uses":
                u = self.peek()
                if u.kind in ("ident", "string"):
                    self.next()
                    uses.append(u.value)
                else:
                    self.error(u, "symbol key")
                    return None
            elif name in _RESOURCE_KINDS:
                url = self.expect("string", "quoted url")
                if url is None:
                    return None
                label = self.expect("string", "quoted label")
                if label is None:
                    return None
                try:
                    resources.append(
                        Resource(_RESOURCE_KINDS[name], url.value, label.value)
                    )
                except GraphConstructionError as exc:
                    self.errors.append(
                        ParseError(url.line, url.column, str(exc), url.value)
                    )
                    return None
            elif name == "note":
                s = self.expect("string", "quoted note")
                if s is None:
                    return None
                if note is not None:
                    self.error(t, "at most one note directive")
                    return None
                note = s.value
            else:
                self.error(t, "node directive (title, side, pos, chapter, uses, video, text, audio, or note)")
                return None

        if idt is None:
            return None
        for want, got in (("title", title), ("side", side), ("pos", pos)):
            if got is None:
                self.errors.append(
                    ParseError(kw.line, kw.column, f"{want} directive in node block", idt.value)
                )
                return None
        try:
            return Node(
                id=idt.value,
                title=title,  # type: ignore[arg-type]
                side=side,  # type: ignore[arg-type]
                pos=pos,  # type: ignore[arg-type]
                chapters=tuple(chapters),
                symbols=tuple(uses),
                resources=tuple(resources),
                note=note,
            )
        except GraphConstructionError as exc:
            self.errors.append(ParseError(kw.line, kw.column, str(exc), idt.value))
            return None

    def parse_edge(self) -> Optional[Edge]:
        a = self.expect("ident", "node id")
        if a is None or self.expect_punct("->") is None:
            return None
        b = self.expect("ident", "node id")
        if b is None or self.expect_punct(":") is None:
            return None
        k = self.expect("ident", "relationship kind (derivative, common_part, or perspective)")
        if k is None:
            return None
        if k.value not in _KINDS:
            self.error(k, "relationship kind (derivative, common_part, or perspective)")
            return None
        note: Optional[str] = None
        t = self.peek()
        if t.kind == "string":
            self.next()
            note = t.value
        try:
            return Edge(a.value, b.value, _KINDS[k.value], note)
        except GraphConstructionError as exc:
            self.errors.append(ParseError(a.line, a.column, str(exc), a.value))
            return None

    def build_graph(
        self,
        title_tok: Optional[Token],
        sinks: list[Token],
        nodes: list[tuple[Token, Optional[Node]]],
        edges: list[tuple[Token, Optional[Edge]]],
        symbols: list[tuple[Token, Optional[SymbolEntry]]],
        meta: list[tuple[str, str]],
    ) -> Optional[CourseGraph]:
        node_vals = [n for _, n in nodes if n is not None]
        ids = {n.id for n in node_vals}

        seen: set[str] = set()
        for tok, n in nodes:
            if n is not None:
                if n.id in seen:
                    self.errors.append(
                        ParseError(tok.line, tok.column, "unique node id", n.id)
                    )
                seen.add(n.id)

        if not sinks:
            self.errors.append(ParseError(1, 1, "sink declaration", "end of input"))
        elif len(sinks) > 1:
            t = sinks[1]
            self.errors.append(ParseError(t.line, t.column, "a single sink declaration", t.value))
        else:
            t = sinks[0]
            if t.value not in ids:
                self.errors.append(ParseError(t.line, t.column, "declared node id", t.value))

        triples: set[tuple[str, str, RelationshipKind]] = set()
        edge_vals: list[Edge] = []
        for tok, e in edges:
            if e is None:
                continue
            ok = True
            for endpoint in (e.from_id, e.to_id):
                if endpoint not in ids:
                    self.errors.append(
                        ParseError(tok.line, tok.column, "declared node id", endpoint)
                    )
                    ok = False
            if e.from_id == e.to_id:
                self.errors.append(
                    ParseError(tok.line, tok.column, "distinct edge endpoints", e.from_id)
                )
                ok = False
            trip = (e.from_id, e.to_id, e.kind)
            if trip in triples:
                self.errors.append(
                    ParseError(
                        tok.line, tok.column, "unique (from, to, kind) edge",
                        f"{e.from_id}->{e.to_id}:{e.kind.value}",
                    )
                )
                ok = False
            triples.add(trip)
            if ok:
                edge_vals.append(e)

        keys: set[str] = set()
        symbol_vals: list[SymbolEntry] = []
        for tok, s in symbols:
            if s is None:
                continue
            if s.key in keys:
                self.errors.append(ParseError(tok.line, tok.column, "unique symbol key", s.key))
            else:
                keys.add(s.key)
                symbol_vals.append(s)

        if self.errors or title_tok is None:
            return None
        try:
            return CourseGraph(
                title=title_tok.value,
                sink_id=sinks[0].value,
                nodes=tuple(node_vals),
                edges=tuple(edge_vals),
                glossary=tuple(symbol_vals),
                meta=tuple(meta),
            )
        except GraphConstructionError as exc:
            self.errors.append(ParseError(1, 1, str(exc), "syllabus"))
            return None


def parse(source: str) -> CourseGraph:
    """Parse .sgs source text; raises ParseFailure listing every error found."""
    tokens, lex_errors = _tokenize(source)
    parser = _Parser(tokens)
    graph = parser.parse_file()
    errors = lex_errors + parser.errors
    if errors or graph is None:
        errors.sort(key=lambda e: (e.line, e.column))
        raise ParseFailure(errors or [ParseError(1, 1, "syllabus", "nothing")])
    return graph


# --- serializer ------------------------------------------------------------

def _quote(s: str) -> str:
    return '"' + "".join(_UNESCAPES.get(c, c) for c in s) + '"'


def _symbol_key(key: str) -> str:
    return key if _IDENT_RE.fullmatch(key) else _quote(key)


def serialize(graph: CourseGraph) -> str:
    """Canonical .sgs text; parse(serialize(g)) yields a graph equal to g."""
    lines: list[str] = [f"syllabus {_quote(graph.title)} {{"]
    lines.append(f"  sink {graph.sink_id}")
    for key, value in graph.meta:
        lines.append(f"  meta {key}: {_quote(value)}")
    for entry in graph.glossary:
        lines.append(f"  symbol {_quote(entry.key)} = {_quote(entry.meaning)}")
    for node in graph.nodes:
        lines.append(f"  node {node.id} {{")
        lines.append(f"    title: {_quote(node.title)}")
        lines.append(f"    side: {node.side.value.lower()}")
        lines.append(f"    pos: ({node.pos[0]}, {node.pos[1]})")
        for c in node.chapters:
            lines.append(f"    chapter: {c}")
        for key in node.symbols:
            lines.append(f"    uses: {_symbol_key(key)}")
        for r in node.resources:
            lines.append(f"    {r.kind.value}: {_quote(r.url)} {_quote(r.label)}")
        if node.note is not None:
            lines.append(f"    note: {_quote(node.note)}")
        lines.append("  }")
    for e in graph.edges:
        suffix = f" {_quote(e.note)}" if e.note is not None else ""
        lines.append(f"  edge {e.from_id} -> {e.to_id} : {e.kind.value}{suffix}")
    lines.append("}")
    return "\n".join(lines) + "\n"
