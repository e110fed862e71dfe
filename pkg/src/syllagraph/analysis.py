"""Graph analyses: reachability, route highlighting, lint rules, statistics.

Route semantics are directed-walk reachability.  On acyclic graphs this
coincides with simple-path enumeration while staying O(V+E) when a cycle
sneaks in.

Lint rule registry:

    R1 notation-consistency  error    every `uses:` key resolves in the glossary
    R2 note-brevity          warning  node/edge notes stay under max_note_chars
    R3 video-range           warning  per-node video count in [min_videos, max_videos]
    R4 sink-reachability     error    every node reaches the sink
    R5 position-overlap      warning  no two nodes share a grid position
    R6 orphan-node           warning  every non-sink node has an incident edge
    R7 acyclicity            warning  no directed cycle
    R8 direct-media-link     warning  video/audio urls point at a media file or
                                      a recognized embed path
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from urllib.parse import urlparse

from .model import (
    CourseGraph,
    Diagnostic,
    HighlightSet,
    RelationshipKind,
    ResourceKind,
    Severity,
    Side,
    video_count,
)

RULE_IDS = ("R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8")

MEDIA_EXTENSIONS = (
    ".mp4", ".m4v", ".webm", ".ogv", ".ogg", ".mov", ".avi",
    ".mp3", ".m4a", ".wav", ".flac",
)

EMBED_PATH_MARKERS = (
    "youtube.com/embed/",
    "youtube-nocookie.com/embed/",
    "player.vimeo.com/video/",
)


class UnknownNodeError(KeyError):
    def __init__(self, node_id: str):
        self.node_id = node_id
        super().__init__(node_id)


@dataclass(frozen=True)
class Stats:
    node_count: int
    edge_count: int
    side_counts: dict[Side, int]
    video_link_total: int
    text_link_total: int
    kind_counts: dict[RelationshipKind, int]

    def __post_init__(self) -> None:
        if sum(self.side_counts.values()) != self.node_count:
            raise ValueError("side counts must sum to node count")


@dataclass(frozen=True)
class RuleConfig:
    max_note_chars: int = 80
    min_videos: int = 5
    max_videos: int = 10
    rules_disabled: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "rules_disabled", frozenset(self.rules_disabled))
        if self.min_videos > self.max_videos:
            raise ValueError("min_videos must not exceed max_videos")
        if self.max_note_chars < 1:
            raise ValueError("max_note_chars must be at least 1")


def _adjacency(graph: CourseGraph, reverse: bool = False) -> dict[str, list[str]]:
    adj: dict[str, list[str]] = {n.id: [] for n in graph.nodes}
    for e in graph.edges:
        a, b = (e.to_id, e.from_id) if reverse else (e.from_id, e.to_id)
        adj[a].append(b)
    return adj


def _bfs(adj: dict[str, list[str]], start: str) -> set[str]:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def reachable_from(graph: CourseGraph, node_id: str) -> set[str]:
    """All nodes reachable by a directed walk from node_id, itself included."""
    adj = _adjacency(graph)
    if node_id not in adj:
        raise UnknownNodeError(node_id)
    return _bfs(adj, node_id)


def reaches(graph: CourseGraph, node_id: str) -> set[str]:
    """All nodes from which node_id is reachable, itself included."""
    adj = _adjacency(graph, reverse=True)
    if node_id not in adj:
        raise UnknownNodeError(node_id)
    return _bfs(adj, node_id)


def highlight(graph: CourseGraph, node_id: str) -> HighlightSet:
    """Every node and edge lying on some directed walk node_id => sink.

    Empty sets when node_id cannot reach the sink at all.
    """
    forward = reachable_from(graph, node_id)
    if graph.sink_id not in forward:
        return HighlightSet(node_id, frozenset(), frozenset())
    backward = reaches(graph, graph.sink_id)
    nodes = frozenset(forward & backward)
    edges = frozenset(
        i
        for i, e in enumerate(graph.edges)
        if e.from_id in forward and e.to_id in backward
    )
    return HighlightSet(node_id, nodes, edges)


def all_highlights(graph: CourseGraph) -> dict[str, HighlightSet]:
    return {n.id: highlight(graph, n.id) for n in graph.nodes}


def has_direct_media_url(url: str) -> bool:
    parsed = urlparse(url)
    path = parsed.path.lower()
    if path.endswith(MEDIA_EXTENSIONS):
        return True
    host_and_path = (parsed.netloc + parsed.path).lower()
    return any(marker in host_and_path for marker in EMBED_PATH_MARKERS)


def validate(graph: CourseGraph, config: RuleConfig | None = None) -> list[Diagnostic]:
    """Run every enabled lint rule; diagnostics sorted by (severity, rule, subject)."""
    cfg = config or RuleConfig()
    out: list[Diagnostic] = []
    glossary_keys = {s.key for s in graph.glossary}

    def add(severity: Severity, rule: str, message: str, subject: str) -> None:
        if rule not in cfg.rules_disabled:
            out.append(Diagnostic(severity, rule, message, None, subject))

    for node in graph.nodes:
        for key in node.symbols:
            if key not in glossary_keys:
                add(
                    Severity.ERROR, "R1",
                    f"node {node.id} uses symbol {key!r} absent from the glossary",
                    f"node:{node.id}",
                )

    for node in graph.nodes:
        if node.note is not None and len(node.note) > cfg.max_note_chars:
            add(
                Severity.WARNING, "R2",
                f"node {node.id} note runs {len(node.note)} chars "
                f"(limit {cfg.max_note_chars})",
                f"node:{node.id}",
            )
    for i, e in enumerate(graph.edges):
        if e.note is not None and len(e.note) > cfg.max_note_chars:
            add(
                Severity.WARNING, "R2",
                f"edge {e.from_id}->{e.to_id} note runs {len(e.note)} chars "
                f"(limit {cfg.max_note_chars})",
                f"edge:{i}:{e.from_id}->{e.to_id}",
            )

    for node in graph.nodes:
        vc = video_count(node)
        if not (cfg.min_videos <= vc <= cfg.max_videos):
            add(
                Severity.WARNING, "R3",
                f"node {node.id} has {vc} video links; expected between "
                f"{cfg.min_videos} and {cfg.max_videos}",
                f"node:{node.id}",
            )

    can_reach_sink = reaches(graph, graph.sink_id)
    for node in graph.nodes:
        if node.id not in can_reach_sink:
            add(
                Severity.ERROR, "R4",
                f"node {node.id} has no route to the sink {graph.sink_id}",
                f"node:{node.id}",
            )

    by_pos: dict[tuple[int, int], list[str]] = {}
    for node in graph.nodes:
        by_pos.setdefault(node.pos, []).append(node.id)
    for pos, ids in by_pos.items():
        if len(ids) > 1:
            add(
                Severity.WARNING, "R5",
                f"nodes {', '.join(ids)} overlap at position {pos}",
                f"pos:{pos[0]},{pos[1]}",
            )

    incident: set[str] = set()
    for e in graph.edges:
        incident.add(e.from_id)
        incident.add(e.to_id)
    for node in graph.nodes:
        if node.id != graph.sink_id and node.id not in incident:
            add(
                Severity.WARNING, "R6",
                f"node {node.id} has no incident edges",
                f"node:{node.id}",
            )

    cycle = _find_cycle(graph)
    if cycle:
        add(
            Severity.WARNING, "R7",
            "graph contains a directed cycle: " + " -> ".join(cycle),
            "graph",
        )

    for node in graph.nodes:
        for r in node.resources:
            if r.kind in (ResourceKind.VIDEO, ResourceKind.AUDIO):
                if not has_direct_media_url(r.url):
                    add(
                        Severity.WARNING, "R8",
                        f"node {node.id} {r.kind.value} link is not a direct "
                        f"media file or embed: {r.url}",
                        f"node:{node.id}",
                    )

    severity_rank = {Severity.ERROR: 0, Severity.WARNING: 1}
    out.sort(key=lambda d: (severity_rank[d.severity], d.rule, d.subject or "", d.message))
    return out


def _find_cycle(graph: CourseGraph) -> list[str]:
    """One directed cycle as a node sequence (closed), or [] if acyclic."""
    adj = _adjacency(graph)
    state: dict[str, int] = {}  # 0 unvisited / 1 on stack / 2 done
    stack: list[str] = []

    def visit(u: str) -> list[str]:
        state[u] = 1
        stack.append(u)
        for v in adj[u]:
            s = state.get(v, 0)
            if s == 1:
                i = stack.index(v)
                return stack[i:] + [v]
            if s == 0:
                found = visit(v)
                if found:
                    return found
        stack.pop()
        state[u] = 2
        return []

    for node in graph.nodes:
        if state.get(node.id, 0) == 0:
            found = visit(node.id)
            if found:
                return found
    return []


def stats(graph: CourseGraph) -> Stats:
    side_counts = Counter(n.side for n in graph.nodes)
    kind_counts = Counter(e.kind for e in graph.edges)
    return Stats(
        node_count=len(graph.nodes),
        edge_count=len(graph.edges),
        side_counts={s: side_counts.get(s, 0) for s in Side},
        video_link_total=sum(video_count(n) for n in graph.nodes),
        text_link_total=sum(
            1 for n in graph.nodes for r in n.resources if r.kind is ResourceKind.TEXT
        ),
        kind_counts={k: kind_counts.get(k, 0) for k in RelationshipKind},
    )


def course_order(graph: CourseGraph) -> list[str]:
    """Deterministic teaching order: chapter-tagged nodes first.

    Tagged nodes sort by (smallest chapter, row, column, id); untagged
    follow in (row, column, id) order.
    """
    tagged = [n for n in graph.nodes if n.chapters]
    untagged = [n for n in graph.nodes if not n.chapters]
    tagged.sort(key=lambda n: (n.chapters[0], n.pos[1], n.pos[0], n.id))
    untagged.sort(key=lambda n: (n.pos[1], n.pos[0], n.id))
    return [n.id for n in tagged] + [n.id for n in untagged]
