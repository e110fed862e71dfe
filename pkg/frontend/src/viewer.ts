import {
  Bundle,
  BundleNode,
  DEFAULT_CONFIG,
  EdgeKind,
  Side,
  ViewerConfig,
} from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

const CELL_W = 180;
const CELL_H = 90;
const GUTTER = 40;
const MARGIN = 40;

const SIDE_FILLS: Record<Side, string> = {
  as: "#fdeccd",
  ad: "#d6e8f7",
  Other: "#e8e8e8",
};

const KIND_STROKES: Record<EdgeKind, string> = {
  derivative: "#c0392b",
  common_part: "#2c5faa",
  perspective: "#1e8c45",
};

const SIDE_LABELS: Record<Side, string> = {
  as: "Aggregate supply",
  ad: "Aggregate demand",
  Other: "Other",
};

export interface Viewer {
  /** Cancel timers and remove everything the viewer added to the mount. */
  destroy(): void;
}

/**
 * Validate a parsed bundle. Returns a human-readable problem description,
 * or null when the bundle is usable.
 */
export function checkBundle(bundle: unknown): string | null {
  if (typeof bundle !== "object" || bundle === null) {
    return "bundle is not a JSON object";
  }
  const b = bundle as Partial<Bundle>;
  if (b.schema_version !== 1) {
    return `unsupported schema_version: ${String(b.schema_version)}`;
  }
  if (!b.graph || !Array.isArray(b.graph.nodes) || !Array.isArray(b.graph.edges)) {
    return "bundle is missing graph.nodes / graph.edges";
  }
  if (typeof b.highlights !== "object" || b.highlights === null) {
    return "bundle is missing precomputed highlights";
  }
  for (const node of b.graph.nodes) {
    if (!(node.id in b.highlights)) {
      return `no highlight entry for node ${node.id}`;
    }
  }
  return null;
}

function cellOrigin(pos: [number, number]): [number, number] {
  const [col, row] = pos;
  return [MARGIN + col * (CELL_W + GUTTER), MARGIN + row * (CELL_H + GUTTER)];
}

function center(node: BundleNode): [number, number] {
  const [x, y] = cellOrigin(node.pos);
  return [x + CELL_W / 2, y + CELL_H / 2];
}

/** Point where the segment from `from` toward `to` leaves `from`'s box. */
function borderPoint(from: BundleNode, to: BundleNode): [number, number] {
  const [cx, cy] = center(from);
  const [tx, ty] = center(to);
  const dx = tx - cx;
  const dy = ty - cy;
  if (dx === 0 && dy === 0) return [cx, cy];
  const sx = dx !== 0 ? CELL_W / 2 / Math.abs(dx) : Infinity;
  const sy = dy !== 0 ? CELL_H / 2 / Math.abs(dy) : Infinity;
  const s = Math.min(sx, sy);
  return [cx + dx * s, cy + dy * s];
}

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

function html<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderError(mount: HTMLElement, message: string): void {
  const panel = html("div", "sg-error-panel");
  panel.appendChild(html("strong", "", "Could not load course graph"));
  panel.appendChild(html("p", "", message));
  mount.appendChild(panel);
}

/**
 * Render a bundle into `mount` and wire up hover highlighting and the
 * resource panel. The viewer does no route computation of its own: lit
 * sets come verbatim from the bundle's precomputed highlights.
 */
export function render(
  bundle: unknown,
  mount: HTMLElement,
  config: Partial<ViewerConfig> = {},
): Viewer | null {
  const problem = checkBundle(bundle);
  if (problem !== null) {
    renderError(mount, problem);
    return null;
  }
  const b = bundle as Bundle;
  const cfg: ViewerConfig = { ...DEFAULT_CONFIG, ...config };
  const fills = { ...SIDE_FILLS, ...cfg.palette };
  const strokes = { ...KIND_STROKES, ...cfg.palette };
  const byId = new Map(b.graph.nodes.map((n) => [n.id, n]));
  const glossary = new Map(b.graph.glossary.map((g) => [g.key, g.meaning]));

  const root = html("div", "sg-viewer");
  root.appendChild(html("h1", "sg-title", b.graph.title));

  const maxCol = Math.max(0, ...b.graph.nodes.map((n) => n.pos[0]));
  const maxRow = Math.max(0, ...b.graph.nodes.map((n) => n.pos[1]));
  const width = MARGIN * 2 + (maxCol + 1) * CELL_W + maxCol * GUTTER;
  const height = MARGIN * 2 + (maxRow + 1) * CELL_H + maxRow * GUTTER;
  const svg = el("svg", {
    class: "sg-graph",
    viewBox: `0 0 ${width} ${height}`,
    width: String(width),
    height: String(height),
  });

  const defs = el("defs", {});
  const marker = el("marker", {
    id: "sg-arrow",
    viewBox: "0 0 10 10",
    refX: "9",
    refY: "5",
    markerWidth: "7",
    markerHeight: "7",
    orient: "auto-start-reverse",
  });
  marker.appendChild(el("path", { d: "M 0 0 L 10 5 L 0 10 z", fill: "context-stroke" }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  const edgeEls: SVGGElement[] = [];
  b.graph.edges.forEach((edge, index) => {
    const from = byId.get(edge.from);
    const to = byId.get(edge.to);
    if (!from || !to) return;
    const g = el("g", { class: "edge", "data-edge-index": String(index) });
    const [x1, y1] = borderPoint(from, to);
    const [x2, y2] = borderPoint(to, from);
    g.appendChild(
      el("path", {
        d: `M ${x1} ${y1} L ${x2} ${y2}`,
        stroke: strokes[edge.kind],
        fill: "none",
        "stroke-width": "2",
        "marker-end": "url(#sg-arrow)",
      }),
    );
    if (cfg.show_edge_notes && edge.note) {
      const label = el("text", {
        x: String((x1 + x2) / 2),
        y: String((y1 + y2) / 2 - 4),
        class: "edge-note",
        "text-anchor": "middle",
      });
      label.textContent = edge.note;
      g.appendChild(label);
    }
    svg.appendChild(g);
    edgeEls.push(g);
  });

  const nodeEls = new Map<string, SVGGElement>();
  for (const node of b.graph.nodes) {
    const [x, y] = cellOrigin(node.pos);
    const g = el("g", { class: "node", "data-node-id": node.id });
    g.appendChild(
      el("rect", {
        class: "node-box",
        x: String(x),
        y: String(y),
        width: String(CELL_W),
        height: String(CELL_H),
        rx: "8",
        fill: fills[node.side],
        stroke: "#444",
      }),
    );
    const title = el("text", {
      x: String(x + CELL_W / 2),
      y: String(y + CELL_H / 2),
      class: "node-title",
      "text-anchor": "middle",
    });
    title.textContent = node.title;
    g.appendChild(title);
    if (node.chapters.length > 0) {
      const tag = el("text", {
        x: String(x + CELL_W - 8),
        y: String(y + 16),
        class: "chapter-tag",
        fill: "#c00000",
        "text-anchor": "end",
      });
      tag.textContent = "ch " + node.chapters.join(", ");
      g.appendChild(tag);
    }
    svg.appendChild(g);
    nodeEls.set(node.id, g);
  }
  root.appendChild(svg);

  const legend = html("ul", "sg-legend");
  for (const kind of Object.keys(KIND_STROKES) as EdgeKind[]) {
    const item = html("li", "legend-kind", kind.replace("_", " "));
    item.style.color = strokes[kind];
    legend.appendChild(item);
  }
  for (const side of Object.keys(SIDE_FILLS) as Side[]) {
    const item = html("li", "legend-side", SIDE_LABELS[side]);
    item.style.background = fills[side];
    legend.appendChild(item);
  }
  root.appendChild(legend);

  const panel = html("aside", "sg-panel");
  panel.hidden = true;
  root.appendChild(panel);
  mount.appendChild(root);

  function clearHighlight(): void {
    for (const g of nodeEls.values()) g.classList.remove("lit", "dim");
    for (const g of edgeEls) g.classList.remove("lit", "dim");
  }

  function applyHighlight(nodeId: string): void {
    const entry = b.highlights[nodeId];
    const litNodes = new Set(entry.node_ids);
    const litEdges = new Set(entry.edge_indices);
    for (const [id, g] of nodeEls) {
      g.classList.toggle("lit", litNodes.has(id));
      g.classList.toggle("dim", !litNodes.has(id));
    }
    edgeEls.forEach((g) => {
      const idx = Number(g.dataset.edgeIndex);
      g.classList.toggle("lit", litEdges.has(idx));
      g.classList.toggle("dim", !litEdges.has(idx));
    });
  }

  function openResources(node: BundleNode): void {
    panel.replaceChildren();
    panel.hidden = false;
    panel.appendChild(html("h2", "", node.title));
    if (node.resources.length === 0) {
      panel.appendChild(html("p", "sg-no-resources", "no resources"));
    } else {
      for (const kind of ["video", "text", "audio"] as const) {
        const group = node.resources.filter((r) => r.kind === kind);
        if (group.length === 0) continue;
        panel.appendChild(html("h3", "sg-group", kind));
        const list = html("ul", `sg-resources sg-${kind}`);
        for (const r of group) {
          const item = document.createElement("li");
          const link = document.createElement("a");
          link.href = r.url;
          link.target = "_blank";
          link.rel = "noopener";
          link.textContent = r.label;
          item.appendChild(link);
          list.appendChild(item);
        }
        panel.appendChild(list);
      }
    }
    if (node.symbols.length > 0) {
      panel.appendChild(html("h3", "sg-group", "notation"));
      const list = html("ul", "sg-symbols");
      for (const key of node.symbols) {
        const meaning = glossary.get(key);
        list.appendChild(
          html("li", "", meaning !== undefined ? `${key} — ${meaning}` : key),
        );
      }
      panel.appendChild(list);
    }
  }

  // Single pending hover timer; pointer exit cancels it.
  let timer: ReturnType<typeof setTimeout> | null = null;
  for (const node of b.graph.nodes) {
    const g = nodeEls.get(node.id)!;
    g.addEventListener("pointerenter", () => {
      if (timer !== null) clearTimeout(timer);
      timer = setTimeout(() => {
        timer = null;
        applyHighlight(node.id);
      }, cfg.hover_delay_ms);
    });
    g.addEventListener("pointerleave", () => {
      if (timer !== null) {
        clearTimeout(timer);
        timer = null;
      }
      clearHighlight();
    });
    g.addEventListener("click", () => openResources(node));
  }

  return {
    destroy(): void {
      if (timer !== null) clearTimeout(timer);
      root.remove();
    },
  };
}
