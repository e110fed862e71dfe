"""Deterministic emitters: JSON bundle, static site, and print-view SVG.

All three refuse graphs carrying error-severity lint findings, never embed
timestamps, and produce byte-identical output for equal inputs.

Palette (fixed convention; only the red relationship arrows are inherited
from the source material):

    derivative   stroke #c0392b (red)
    common_part  stroke #2c5faa (blue)
    perspective  stroke #1e8c45 (green)
    AS side      fill   #fdeccd (light amber)
    AD side      fill   #d6e8f7 (light blue)
    Other side   fill   #e8e8e8 (light gray)
"""

from __future__ import annotations

import json
from xml.sax.saxutils import escape as xml_escape

from . import _site_assets
from .analysis import Stats, all_highlights, stats, validate
from .model import CourseGraph, Diagnostic, RelationshipKind, Severity, Side

SCHEMA_VERSION = 1

GENERATED_NOTE = "generated by syllagraph (deterministic build, no timestamps)"

KIND_STROKES = {
    RelationshipKind.DERIVATIVE: "#c0392b",
    RelationshipKind.COMMON_PART: "#2c5faa",
    RelationshipKind.PERSPECTIVE: "#1e8c45",
}

SIDE_FILLS = {
    Side.AS: "#fdeccd",
    Side.AD: "#d6e8f7",
    Side.OTHER: "#e8e8e8",
}

CHAPTER_COLOR = "#c00000"

CELL_W = 180
CELL_H = 90
GUTTER = 40
MARGIN = 40


class EmitError(ValueError):
    """Emission refused; carries the blocking error-severity diagnostics."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        msgs = "; ".join(f"{d.rule}: {d.message}" for d in self.diagnostics)
        super().__init__(f"graph has validation errors: {msgs}")


def _require_clean(graph: CourseGraph) -> None:
    errors = [d for d in validate(graph) if d.severity is Severity.ERROR]
    if errors:
        raise EmitError(errors)


def graph_to_obj(graph: CourseGraph) -> dict:
    return {
        "title": graph.title,
        "sink_id": graph.sink_id,
        "meta": {k: v for k, v in graph.meta},
        "nodes": [
            {
                "id": n.id,
                "title": n.title,
                "side": n.side.value,
                "pos": list(n.pos),
                "chapters": list(n.chapters),
                "symbols": list(n.symbols),
                "resources": [
                    {"kind": r.kind.value, "url": r.url, "label": r.label}
                    for r in n.resources
                ],
                "note": n.note,
            }
            for n in graph.nodes
        ],
        "edges": [
            {"from": e.from_id, "to": e.to_id, "kind": e.kind.value, "note": e.note}
            for e in graph.edges
        ],
        "glossary": [{"key": s.key, "meaning": s.meaning} for s in graph.glossary],
    }


def _stats_to_obj(s: Stats) -> dict:
    return {
        "node_count": s.node_count,
        "edge_count": s.edge_count,
        "side_counts": {side.value: c for side, c in s.side_counts.items()},
        "video_link_total": s.video_link_total,
        "text_link_total": s.text_link_total,
        "kind_counts": {kind.value: c for kind, c in s.kind_counts.items()},
    }


def bundle_obj(graph: CourseGraph) -> dict:
    highlights = all_highlights(graph)
    return {
        "schema_version": SCHEMA_VERSION,
        "generated_note": GENERATED_NOTE,
        "graph": graph_to_obj(graph),
        "highlights": {
            node_id: {
                "origin": hs.origin,
                "node_ids": sorted(hs.node_ids),
                "edge_indices": sorted(hs.edge_indices),
            }
            for node_id, hs in highlights.items()
        },
        "stats": _stats_to_obj(stats(graph)),
    }


def emit_bundle(graph: CourseGraph) -> bytes:
    """UTF-8 JSON bundle; keys sorted, arrays in declaration/index order."""
    _require_clean(graph)
    text = json.dumps(bundle_obj(graph), sort_keys=True, indent=1, ensure_ascii=False)
    return (text + "\n").encode("utf-8")


def emit_site(graph: CourseGraph) -> dict[str, bytes]:
    """Self-contained static site; works from local disk with no network.

    The bundle is both shipped as bundle.json and inlined into index.html so
    the viewer needs no fetch when opened via file://.
    """
    _require_clean(graph)
    bundle = emit_bundle(graph)
    inline = bundle.decode("utf-8").replace("</", "<\\/")
    index = _site_assets.INDEX_HTML_TEMPLATE.format(
        title=xml_escape(graph.title),
        bundle_json=inline,
    )
    return {
        "index.html": index.encode("utf-8"),
        "bundle.json": bundle,
        "viewer.js": _site_assets.VIEWER_JS.encode("utf-8"),
        "viewer.css": _site_assets.VIEWER_CSS.encode("utf-8"),
    }


# --- print view ------------------------------------------------------------

def _node_box(node) -> tuple[int, int, int, int]:
    col, row = node.pos
    x = MARGIN + col * (CELL_W + GUTTER)
    y = MARGIN + row * (CELL_H + GUTTER)
    return x, y, CELL_W, CELL_H


def _wrap_title(title: str, limit: int = 26) -> list[str]:
    words = title.split()
    lines: list[str] = []
    cur = ""
    for w in words:
        cand = f"{cur} {w}".strip()
        if cur and len(cand) > limit:
            lines.append(cur)
            cur = w
        else:
            cur = cand
    if cur:
        lines.append(cur)
    return lines or [title]


def _border_point(cx: float, cy: float, tx: float, ty: float, w: int, h: int):
    """Point where the segment (cx,cy)->(tx,ty) leaves a w*h box centered at (cx,cy)."""
    dx, dy = tx - cx, ty - cy
    if dx == 0 and dy == 0:
        return cx, cy
    tmin = 1.0
    if dx != 0:
        tmin = min(tmin, (w / 2) / abs(dx))
    if dy != 0:
        tmin = min(tmin, (h / 2) / abs(dy))
    return cx + dx * tmin, cy + dy * tmin


def emit_print(graph: CourseGraph) -> bytes:
    """SVG 1.1 print view: one rect per node, one arrowed path per edge."""
    _require_clean(graph)
    max_col = max(n.pos[0] for n in graph.nodes)
    max_row = max(n.pos[1] for n in graph.nodes)
    width = 2 * MARGIN + (max_col + 1) * CELL_W + max_col * GUTTER
    height = 2 * MARGIN + (max_row + 1) * CELL_H + max_row * GUTTER

    centers = {}
    for n in graph.nodes:
        x, y, w, h = _node_box(n)
        centers[n.id] = (x + w / 2, y + h / 2)

    parts: list[str] = []
    parts.append('<?xml version="1.0" encoding="UTF-8"?>')
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">'
    )
    parts.append(f"<title>{xml_escape(graph.title)}</title>")
    parts.append("<defs>")
    for kind, color in sorted(KIND_STROKES.items(), key=lambda kv: kv[0].value):
        parts.append(
            f'<marker id="arrow-{kind.value}" viewBox="0 0 10 10" refX="9" refY="5" '
            f'markerWidth="7" markerHeight="7" orient="auto-start-reverse">'
            f'<path d="M 0 0 L 10 5 L 0 10 z" fill="{color}"/></marker>'
        )
    parts.append("</defs>")
    parts.append(f'<rect width="{width}" height="{height}" fill="#ffffff"/>')

    for n in graph.nodes:
        x, y, w, h = _node_box(n)
        fill = SIDE_FILLS[n.side]
        parts.append(
            f'<rect class="node side-{n.side.value.lower()}" x="{x}" y="{y}" '
            f'width="{w}" height="{h}" rx="8" fill="{fill}" '
            f'stroke="#555555" stroke-width="1.5"/>'
        )
        lines = _wrap_title(n.title)
        line_h = 14
        ty0 = y + h / 2 - (len(lines) - 1) * line_h / 2 + 4
        for i, line in enumerate(lines):
            parts.append(
                f'<text x="{x + w / 2:g}" y="{ty0 + i * line_h:g}" '
                f'text-anchor="middle" font-family="sans-serif" font-size="11" '
                f'fill="#222222">{xml_escape(line)}</text>'
            )
        if n.chapters:
            label = ", ".join(str(c) for c in n.chapters)
            parts.append(
                f'<text class="chapters" x="{x + w - 6}" y="{y + 14}" '
                f'text-anchor="end" font-family="sans-serif" font-size="11" '
                f'font-weight="bold" fill="{CHAPTER_COLOR}">{xml_escape(label)}</text>'
            )

    for e in graph.edges:
        (x1, y1), (x2, y2) = centers[e.from_id], centers[e.to_id]
        sx, sy = _border_point(x1, y1, x2, y2, CELL_W, CELL_H)
        tx, ty = _border_point(x2, y2, x1, y1, CELL_W, CELL_H)
        color = KIND_STROKES[e.kind]
        parts.append(
            f'<path class="edge kind-{e.kind.value}" '
            f'd="M {sx:g} {sy:g} L {tx:g} {ty:g}" stroke="{color}" '
            f'stroke-width="2" fill="none" marker-end="url(#arrow-{e.kind.value})"/>'
        )
        if e.note:
            mx, my = (sx + tx) / 2, (sy + ty) / 2
            parts.append(
                f'<text class="edge-note" x="{mx:g}" y="{my - 4:g}" '
                f'text-anchor="middle" font-family="sans-serif" font-size="9" '
                f'fill="{color}">{xml_escape(e.note)}</text>'
            )

    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")
