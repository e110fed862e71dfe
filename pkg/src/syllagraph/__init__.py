"""syllagraph: compile a plain-text course concept graph into an interactive
syllabus site, a shareable JSON bundle, and a print-view SVG."""

from .analysis import (
    RuleConfig,
    Stats,
    all_highlights,
    course_order,
    highlight,
    reachable_from,
    reaches,
    stats,
    validate,
)
from .corpus import CorpusManifest, corpus_path, load_corpus, load_manifest
from .dsl import ParseError, ParseFailure, parse, serialize
from .emit import EmitError, emit_bundle, emit_print, emit_site
from .linkcheck import CheckConfig, LinkReport, Outcome, check_links
from .model import (
    CourseGraph,
    Diagnostic,
    Edge,
    GraphConstructionError,
    HighlightSet,
    Node,
    RelationshipKind,
    Resource,
    ResourceKind,
    Severity,
    Side,
    SymbolEntry,
    node_by_id,
    video_count,
)

__version__ = "0.1.0"

__all__ = [
    "CheckConfig",
    "CorpusManifest",
    "CourseGraph",
    "Diagnostic",
    "Edge",
    "EmitError",
    "GraphConstructionError",
    "HighlightSet",
    "LinkReport",
    "Node",
    "Outcome",
    "ParseError",
    "ParseFailure",
    "RelationshipKind",
    "Resource",
    "ResourceKind",
    "RuleConfig",
    "Severity",
    "Side",
    "Stats",
    "SymbolEntry",
    "all_highlights",
    "check_links",
    "corpus_path",
    "course_order",
    "emit_bundle",
    "emit_print",
    "emit_site",
    "highlight",
    "load_corpus",
    "load_manifest",
    "node_by_id",
    "parse",
    "reachable_from",
    "reaches",
    "serialize",
    "stats",
    "validate",
    "video_count",
]
