import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { render } from "../src/viewer.js";
import type { Bundle } from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));
const corpus: Bundle = JSON.parse(
  readFileSync(join(here, "fixtures", "bundle.json"), "utf-8"),
);

const HOVER_MS = 5000; // paper-faithful default

let mount: HTMLElement;

beforeEach(() => {
  mount = document.createElement("div");
  document.body.appendChild(mount);
});

afterEach(() => {
  document.body.replaceChildren();
  vi.useRealTimers();
});

function nodeEl(id: string): SVGGElement {
  const el = mount.querySelector<SVGGElement>(`g.node[data-node-id="${id}"]`);
  if (!el) throw new Error(`no element for node ${id}`);
  return el;
}

function litSets(): { nodes: string[]; edges: number[] } {
  const nodes = [...mount.querySelectorAll<SVGGElement>("g.node.lit")]
    .map((g) => g.dataset.nodeId!)
    .sort();
  const edges = [...mount.querySelectorAll<SVGGElement>("g.edge.lit")]
    .map((g) => Number(g.dataset.edgeIndex))
    .sort((a, b) => a - b);
  return { nodes, edges };
}

function makeMinimal(): Bundle {
  return {
    schema_version: 1,
    generated_note: "test",
    graph: {
      title: "One",
      sink_id: "solo",
      meta: {},
      nodes: [
        {
          id: "solo",
          title: "Solo",
          side: "Other",
          pos: [0, 0],
          chapters: [],
          symbols: [],
          resources: [],
          note: null,
        },
      ],
      edges: [],
      glossary: [],
    },
    highlights: { solo: { origin: "solo", node_ids: ["solo"], edge_indices: [] } },
    stats: {},
  };
}

describe("render", () => {
  it("draws every corpus node, every edge, and a legend", () => {
    render(corpus, mount);
    expect(mount.querySelectorAll("g.node").length).toBe(27);
    expect(mount.querySelectorAll("g.edge").length).toBe(corpus.graph.edges.length);
    expect(mount.querySelectorAll(".sg-legend .legend-kind").length).toBe(3);
    expect(mount.querySelectorAll(".sg-legend .legend-side").length).toBe(3);
  });

  it("renders a minimal bundle as one box and no arrows", () => {
    render(makeMinimal(), mount);
    expect(mount.querySelectorAll("g.node").length).toBe(1);
    expect(mount.querySelectorAll("g.edge").length).toBe(0);
  });

  it("shows an error panel and renders nothing for a corrupted bundle", () => {
    const broken = JSON.parse(JSON.stringify(corpus));
    delete broken.highlights;
    const viewer = render(broken, mount);
    expect(viewer).toBeNull();
    expect(mount.querySelector(".sg-error-panel")).not.toBeNull();
    expect(mount.querySelectorAll("g.node").length).toBe(0);
  });

  it("rejects a wrong schema version", () => {
    const wrong = { ...makeMinimal(), schema_version: 2 };
    expect(render(wrong, mount)).toBeNull();
    expect(mount.querySelector(".sg-error-panel")!.textContent).toContain(
      "schema_version",
    );
  });
});

describe("hover highlighting", () => {
  beforeEach(() => {
    vi.useFakeTimers();
    render(corpus, mount);
  });

  const sample = ["leisure_work", "is_lm", corpus.graph.sink_id];

  it.each(sample)(
    "after a %s hover of 5 s, lit sets equal the bundle's precomputed entry",
    (id) => {
      nodeEl(id).dispatchEvent(new Event("pointerenter"));
      vi.advanceTimersByTime(HOVER_MS);
      const lit = litSets();
      const expected = corpus.highlights[id];
      expect(JSON.stringify(lit.nodes)).toBe(JSON.stringify(expected.node_ids));
      expect(JSON.stringify(lit.edges)).toBe(JSON.stringify(expected.edge_indices));
      const dimmed = mount.querySelectorAll("g.node.dim").length;
      expect(dimmed).toBe(27 - expected.node_ids.length);
    },
  );

  it("hovering the sink lights only the sink", () => {
    nodeEl(corpus.graph.sink_id).dispatchEvent(new Event("pointerenter"));
    vi.advanceTimersByTime(HOVER_MS);
    expect(litSets()).toEqual({ nodes: [corpus.graph.sink_id], edges: [] });
  });

  it("leaving before the delay elapses changes nothing", () => {
    const g = nodeEl("leisure_work");
    g.dispatchEvent(new Event("pointerenter"));
    vi.advanceTimersByTime(HOVER_MS - 1);
    g.dispatchEvent(new Event("pointerleave"));
    vi.advanceTimersByTime(HOVER_MS * 2);
    expect(litSets()).toEqual({ nodes: [], edges: [] });
    expect(mount.querySelectorAll(".dim").length).toBe(0);
  });

  it("leaving after a highlight restores the neutral state", () => {
    const g = nodeEl("mpl");
    g.dispatchEvent(new Event("pointerenter"));
    vi.advanceTimersByTime(HOVER_MS);
    expect(litSets().nodes.length).toBeGreaterThan(0);
    g.dispatchEvent(new Event("pointerleave"));
    expect(litSets()).toEqual({ nodes: [], edges: [] });
  });

  it("the delay is configurable", () => {
    document.body.replaceChildren();
    mount = document.createElement("div");
    document.body.appendChild(mount);
    render(corpus, mount, { hover_delay_ms: 100 });
    nodeEl("mpl").dispatchEvent(new Event("pointerenter"));
    vi.advanceTimersByTime(100);
    expect(litSets().nodes).toContain("mpl");
  });
});

describe("resource panel", () => {
  it("lists exactly the node's resources grouped by kind", () => {
    render(corpus, mount);
    nodeEl("mpl").dispatchEvent(new Event("click"));
    const panel = mount.querySelector<HTMLElement>(".sg-panel")!;
    expect(panel.hidden).toBe(false);
    const mplNode = corpus.graph.nodes.find((n) => n.id === "mpl")!;
    const links = [...panel.querySelectorAll<HTMLAnchorElement>("a")];
    expect(links.map((a) => a.href)).toEqual(mplNode.resources.map((r) => r.url));
    expect(links.map((a) => a.textContent)).toEqual(
      mplNode.resources.map((r) => r.label),
    );
    expect(panel.querySelectorAll(".sg-video a").length).toBe(4);
    expect(panel.querySelectorAll(".sg-text a").length).toBe(1);
    for (const a of links) expect(a.target).toBe("_blank");
  });

  it("shows glossary meanings for the node's symbols", () => {
    render(corpus, mount);
    nodeEl("mpl").dispatchEvent(new Event("click"));
    const items = [
      ...mount.querySelectorAll(".sg-panel .sg-symbols li"),
    ].map((li) => li.textContent);
    expect(items).toContain("MPL — Marginal product of labor");
    expect(items).toContain("MCL — Marginal cost of labor");
  });

  it("says 'no resources' for a bare node", () => {
    render(makeMinimal(), mount);
    nodeEl("solo").dispatchEvent(new Event("click"));
    expect(mount.querySelector(".sg-no-resources")!.textContent).toBe(
      "no resources",
    );
  });
});
