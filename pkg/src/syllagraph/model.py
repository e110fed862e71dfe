"""Immutable domain types for syllabus concept graphs.

Everything here is a frozen dataclass validated at construction time;
analyses elsewhere are pure functions over these values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

_ID_RE = re.compile(r"[a-z][a-z0-9_]*\Z")

POS_MAX = 999


class GraphConstructionError(ValueError):
    """Raised when a domain value violates one of its invariants."""


class Side(Enum):
    AS = "AS"
    AD = "AD"
    OTHER = "Other"


class RelationshipKind(Enum):
    DERIVATIVE = "derivative"
    COMMON_PART = "common_part"
    PERSPECTIVE = "perspective"


class ResourceKind(Enum):
    VIDEO = "video"
    TEXT = "text"
    AUDIO = "audio"


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


def is_valid_id(s: str) -> bool:
    return bool(_ID_RE.match(s))


@dataclass(frozen=True)
class Resource:
    kind: ResourceKind
    url: str
    label: str

    def __post_init__(self) -> None:
        if not (self.url.startswith("http://") or self.url.startswith("https://")):
            raise GraphConstructionError(
                f"resource url must start with http:// or https://: {self.url!r}"
            )
        if not self.label:
            raise GraphConstructionError("resource label must be nonempty")


@dataclass(frozen=True)
class SymbolEntry:
    key: str
    meaning: str

    def __post_init__(self) -> None:
        if not self.key:
            raise GraphConstructionError("symbol key must be nonempty")
        if not self.meaning:
            raise GraphConstructionError(f"symbol {self.key!r} meaning must be nonempty")


@dataclass(frozen=True)
class Node:
    id: str
    title: str
    side: Side
    pos: tuple[int, int]
    chapters: tuple[int, ...] = ()
    symbols: tuple[str, ...] = ()
    resources: tuple[Resource, ...] = ()
    note: Optional[str] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "pos", tuple(self.pos))
        object.__setattr__(self, "chapters", tuple(self.chapters))
        object.__setattr__(self, "symbols", tuple(self.symbols))
        object.__setattr__(self, "resources", tuple(self.resources))
        if not is_valid_id(self.id):
            raise GraphConstructionError(f"invalid node id: {self.id!r}")
        if not self.title:
            raise GraphConstructionError(f"node {self.id}: title must be nonempty")
        col, row = self.pos
        if not (0 <= col <= POS_MAX and 0 <= row <= POS_MAX):
            raise GraphConstructionError(
                f"node {self.id}: pos components must lie in [0, {POS_MAX}]"
            )
        if any(c <= 0 for c in self.chapters):
            raise GraphConstructionError(f"node {self.id}: chapters must be positive")
        if any(a >= b for a, b in zip(self.chapters, self.chapters[1:])):
            raise GraphConstructionError(
                f"node {self.id}: chapters must be strictly increasing"
            )


@dataclass(frozen=True)
class Edge:
    from_id: str
    to_id: str
    kind: RelationshipKind
    note: Optional[str] = None

    def __post_init__(self) -> None:
        if self.note is not None and not self.note.strip():
            raise GraphConstructionError(
                f"edge {self.from_id}->{self.to_id}: note must be nonempty after trimming"
            )


@dataclass(frozen=True)
class CourseGraph:
    title: str
    sink_id: str
    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...] = ()
    glossary: tuple[SymbolEntry, ...] = ()
    meta: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "glossary", tuple(self.glossary))
        object.__setattr__(self, "meta", tuple(tuple(kv) for kv in self.meta))
        ids = [n.id for n in self.nodes]
        seen: set[str] = set()
        for i in ids:
            if i in seen:
                raise GraphConstructionError(f"duplicate node id: {i}")
            seen.add(i)
        if self.sink_id not in seen:
            raise GraphConstructionError(f"sink names unknown node: {self.sink_id!r}")
        for e in self.edges:
            if e.from_id not in seen:
                raise GraphConstructionError(f"edge endpoint names unknown node: {e.from_id!r}")
            if e.to_id not in seen:
                raise GraphConstructionError(f"edge endpoint names unknown node: {e.to_id!r}")
        triples: set[tuple[str, str, RelationshipKind]] = set()
        for e in self.edges:
            if e.from_id == e.to_id:
                raise GraphConstructionError(f"self-loop edge forbidden: {e.from_id}")
            t = (e.from_id, e.to_id, e.kind)
            if t in triples:
                raise GraphConstructionError(
                    f"duplicate edge: {e.from_id}->{e.to_id}:{e.kind.value}"
                )
            triples.add(t)
        gkeys: set[str] = set()
        for s in self.glossary:
            if s.key in gkeys:
                raise GraphConstructionError(f"duplicate glossary key: {s.key!r}")
            gkeys.add(s.key)

    @property
    def node_ids(self) -> tuple[str, ...]:
        return tuple(n.id for n in self.nodes)

    def meta_dict(self) -> dict[str, str]:
        return dict(self.meta)


@dataclass(frozen=True)
class HighlightSet:
    """Nodes and edges lying on some directed route from origin to the sink."""

    origin: str
    node_ids: frozenset[str]
    edge_indices: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "node_ids", frozenset(self.node_ids))
        object.__setattr__(self, "edge_indices", frozenset(self.edge_indices))
        if self.node_ids and self.origin not in self.node_ids:
            raise GraphConstructionError("highlight origin missing from its node set")


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    rule: str
    message: str
    location: Optional[tuple[int, int]] = None
    subject: Optional[str] = None


def node_by_id(graph: CourseGraph, node_id: str) -> Optional[Node]:
    """The node with that id, or None; absence is a value, not an error."""
    for n in graph.nodes:
        if n.id == node_id:
            return n
    return None


def video_count(node: Node) -> int:
    return sum(1 for r in node.resources if r.kind is ResourceKind.VIDEO)
