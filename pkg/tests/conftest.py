from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from syllagraph.model import (
    CourseGraph,
    Edge,
    Node,
    RelationshipKind,
    Resource,
    ResourceKind,
    Side,
    SymbolEntry,
)

KINDS = list(RelationshipKind)
SIDES = list(Side)
RESOURCE_KINDS = list(ResourceKind)


def make_node(node_id: str, pos=(0, 0), side=Side.OTHER, title=None, **kwargs) -> Node:
    return Node(id=node_id, title=title or node_id.upper(), side=side, pos=pos, **kwargs)


def chain_graph(*ids: str) -> CourseGraph:
    """a -> b -> ... -> sink(last id)."""
    nodes = tuple(make_node(i, pos=(k, 0)) for k, i in enumerate(ids))
    edges = tuple(
        Edge(a, b, RelationshipKind.DERIVATIVE) for a, b in zip(ids, ids[1:])
    )
    return CourseGraph(title="chain", sink_id=ids[-1], nodes=nodes, edges=edges)


# --- independent oracle: exhaustive simple-path enumeration -----------------

def enumerate_routes(graph: CourseGraph, start: str) -> tuple[set[str], set[int]]:
    """Union of nodes/edges over all simple paths start -> sink, by brute force.

    Deliberately naive (re-scans the edge list at every step) so it shares no
    code with the implementation under test.
    """
    sink = graph.sink_id
    nodes_union: set[str] = set()
    edges_union: set[int] = set()
    path_nodes = [start]
    path_edges: list[int] = []

    def dfs(u: str) -> None:
        if u == sink:
            nodes_union.update(path_nodes)
            edges_union.update(path_edges)
            return
        for i, e in enumerate(graph.edges):
            if e.from_id == u and e.to_id not in path_nodes:
                path_nodes.append(e.to_id)
                path_edges.append(i)
                dfs(e.to_id)
                path_nodes.pop()
                path_edges.pop()

    dfs(start)
    return nodes_union, edges_union


def random_dag(rng: random.Random, max_nodes: int = 12, max_edges: int = 30) -> CourseGraph:
    """A random acyclic graph: edges only run forward in a shuffled order."""
    n = rng.randint(1, max_nodes)
    ids = [f"n{i}" for i in range(n)]
    order = ids[:]
    rng.shuffle(order)
    rank = {node_id: k for k, node_id in enumerate(order)}
    candidates = [
        (a, b, kind)
        for a in ids
        for b in ids
        if rank[a] < rank[b]
        for kind in KINDS
    ]
    rng.shuffle(candidates)
    n_edges = rng.randint(0, min(max_edges, len(candidates)))
    edges = tuple(Edge(a, b, kind) for a, b, kind in candidates[:n_edges])
    nodes = tuple(make_node(i, pos=(k % 100, k // 100)) for k, i in enumerate(ids))
    return CourseGraph(
        title="dag", sink_id=rng.choice(ids), nodes=nodes, edges=edges
    )


# --- random valid graphs (seeded RNG, for bulk round-trip runs) -------------

_TEXT_POOL = (
    "abcdefghij ABCXYZ 0123 _-,.;()[]"
    '"\\\n\t\r'
    "éδπ“quoted”→你好"
)


def random_text(rng: random.Random, min_len: int = 1, max_len: int = 24) -> str:
    n = rng.randint(min_len, max_len)
    text = "".join(rng.choice(_TEXT_POOL) for _ in range(n))
    # Model-level invariant: free text must be nonempty after trimming.
    return text if text.strip() else text + rng.choice("abcxyz")


def random_graph(rng: random.Random) -> CourseGraph:
    n = rng.randint(1, 8)
    ids = [f"g{i}_{rng.randint(0, 999)}" for i in range(n)]
    ids = list(dict.fromkeys(ids))
    nodes = []
    for node_id in ids:
        resources = tuple(
            Resource(
                rng.choice(RESOURCE_KINDS),
                "https://example.com/" + random_text(rng, 1, 8).replace("\n", "n"),
                random_text(rng),
            )
            for _ in range(rng.randint(0, 3))
        )
        chapters = tuple(sorted(rng.sample(range(1, 30), rng.randint(0, 3))))
        nodes.append(
            Node(
                id=node_id,
                title=random_text(rng),
                side=rng.choice(SIDES),
                pos=(rng.randint(0, 999), rng.randint(0, 999)),
                chapters=chapters,
                symbols=tuple(random_text(rng, 1, 6) for _ in range(rng.randint(0, 2))),
                resources=resources,
                note=random_text(rng) if rng.random() < 0.4 else None,
            )
        )
    pairs = [(a, b, k) for a in ids for b in ids if a != b for k in KINDS]
    rng.shuffle(pairs)
    edges = tuple(
        Edge(a, b, k, note=random_text(rng) if rng.random() < 0.3 else None)
        for a, b, k in pairs[: rng.randint(0, min(10, len(pairs)))]
    )
    glossary_keys: list[str] = []
    for _ in range(rng.randint(0, 4)):
        key = random_text(rng, 1, 6)
        if key not in glossary_keys:
            glossary_keys.append(key)
    glossary = tuple(SymbolEntry(k, random_text(rng)) for k in glossary_keys)
    meta = tuple(
        (f"key{i}", random_text(rng)) for i in range(rng.randint(0, 3))
    )
    return CourseGraph(
        title=random_text(rng),
        sink_id=rng.choice(ids),
        nodes=tuple(nodes),
        edges=edges,
        glossary=glossary,
        meta=meta,
    )


# --- hypothesis strategies ---------------------------------------------------

ident_st = st.from_regex(r"[a-z][a-z0-9_]{0,7}", fullmatch=True)
text_st = st.text(min_size=1, max_size=30).filter(lambda s: s.strip())
url_st = st.builds(
    lambda suffix: "https://example.com/" + suffix,
    st.text(alphabet="abcdefghij0123456789/._-", max_size=12),
)

resource_st = st.builds(
    Resource,
    kind=st.sampled_from(RESOURCE_KINDS),
    url=url_st,
    label=text_st,
)


@st.composite
def graph_st(draw) -> CourseGraph:
    ids = draw(st.lists(ident_st, min_size=1, max_size=6, unique=True))
    nodes = []
    for node_id in ids:
        chapters = tuple(
            sorted(draw(st.sets(st.integers(min_value=1, max_value=40), max_size=3)))
        )
        nodes.append(
            Node(
                id=node_id,
                title=draw(text_st),
                side=draw(st.sampled_from(SIDES)),
                pos=(
                    draw(st.integers(min_value=0, max_value=999)),
                    draw(st.integers(min_value=0, max_value=999)),
                ),
                chapters=chapters,
                symbols=tuple(draw(st.lists(text_st, max_size=2))),
                resources=tuple(draw(st.lists(resource_st, max_size=2))),
                note=draw(st.none() | text_st),
            )
        )
    pairs = [(a, b, k) for a in ids for b in ids if a != b for k in KINDS]
    chosen = draw(
        st.lists(st.sampled_from(pairs), max_size=8, unique=True) if pairs else st.just([])
    )
    edges = tuple(
        Edge(a, b, k, note=draw(st.none() | text_st)) for a, b, k in chosen
    )
    keys = draw(st.lists(text_st, max_size=3, unique=True))
    glossary = tuple(SymbolEntry(k, draw(text_st)) for k in keys)
    meta_keys = draw(st.lists(st.from_regex(r"[a-z][a-z0-9_]{0,5}", fullmatch=True),
                              max_size=3, unique=True))
    meta = tuple((k, draw(text_st)) for k in meta_keys)
    return CourseGraph(
        title=draw(text_st),
        sink_id=draw(st.sampled_from(ids)),
        nodes=tuple(nodes),
        edges=edges,
        glossary=glossary,
        meta=meta,
    )


@pytest.fixture
def chain3() -> CourseGraph:
    return chain_graph("a", "b", "c")
