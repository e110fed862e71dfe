"""Loader for the bundled intermediate-macroeconomics course graph."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .dsl import parse
from .model import CourseGraph

_DATA_PACKAGE = "syllagraph.data"
CORPUS_FILENAME = "macro_big_picture.sgs"
MANIFEST_FILENAME = "corpus_manifest.json"


@dataclass(frozen=True)
class CorpusManifest:
    node_provenance: dict[str, str]
    edge_provenance: str
    citation_notes: str

    def __post_init__(self) -> None:
        bad = {t for t in self.node_provenance.values()} - {"paper", "curated"}
        if bad:
            raise ValueError(f"unknown provenance tags: {sorted(bad)}")


def corpus_path() -> Path:
    """Filesystem path of the bundled .sgs file (usable by any CLI command)."""
    with resources.as_file(
        resources.files(_DATA_PACKAGE).joinpath(CORPUS_FILENAME)
    ) as p:
        return Path(p)


@lru_cache(maxsize=1)
def load_corpus() -> CourseGraph:
    text = (
        resources.files(_DATA_PACKAGE).joinpath(CORPUS_FILENAME).read_text("utf-8")
    )
    return parse(text)


@lru_cache(maxsize=1)
def load_manifest() -> CorpusManifest:
    raw = json.loads(
        resources.files(_DATA_PACKAGE).joinpath(MANIFEST_FILENAME).read_text("utf-8")
    )
    manifest = CorpusManifest(
        node_provenance=raw["node_provenance"],
        edge_provenance=raw["edge_provenance"],
        citation_notes=raw["citation_notes"],
    )
    missing = {n.id for n in load_corpus().nodes} - manifest.node_provenance.keys()
    if missing:
        raise ValueError(f"manifest missing corpus nodes: {sorted(missing)}")
    return manifest
