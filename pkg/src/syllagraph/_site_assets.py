"""Viewer assets embedded into the site emitter.

Kept as module-level strings so emit_site needs no files at run time and the
emitted site stays byte-deterministic.
"""

INDEX_HTML_TEMPLATE = """<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8"/>
<meta name="viewport" content="width=device-width, initial-scale=1"/>
<title>{title}</title>
<link rel="stylesheet" href="viewer.css"/>
</head>
<body>
<div id="app"></div>
<script id="bundle-data" type="application/json">
{bundle_json}
</script>
<script>
window.SYLLAGRAPH_CONFIG = {{
  "hover_delay_ms": 5000,
  "show_edge_notes": true
}};
</script>
<script src="viewer.js"></script>
</body>
</html>
"""

VIEWER_CSS = """:root {
  --lit-stroke: #111;
  --dim-opacity: 0.18;
}
body {
  margin: 0;
  font-family: system-ui, sans-serif;
  background: #fafafa;
  color: #222;
}
.sg-layout { display: flex; align-items: flex-start; }
.sg-canvas { flex: 1 1 auto; overflow: auto; padding: 12px; }
.sg-panel {
  flex: 0 0 320px;
  border-left: 1px solid #ddd;
  background: #fff;
  padding: 12px 16px;
  min-height: 90vh;
  font-size: 14px;
}
.sg-panel h2 { font-size: 16px; margin: 4px 0 8px; }
.sg-panel h3 { font-size: 13px; text-transform: uppercase; color: #666; margin: 14px 0 4px; }
.sg-panel ul { margin: 0; padding-left: 18px; }
.sg-panel .sg-empty { color: #888; font-style: italic; }
.sg-legend {
  display: flex; flex-wrap: wrap; gap: 12px;
  padding: 8px 14px; border-bottom: 1px solid #ddd; background: #fff;
  font-size: 13px;
}
.sg-legend .swatch {
  display: inline-block; width: 14px; height: 14px;
  margin-right: 4px; vertical-align: -2px; border: 1px solid #888;
}
.sg-legend .stroke-swatch {
  display: inline-block; width: 20px; height: 0;
  margin-right: 4px; vertical-align: 3px; border-top: 3px solid;
}
.sg-node { cursor: pointer; }
.sg-node rect { transition: opacity 0.15s; }
.sg-node.dim, .sg-edge.dim { opacity: var(--dim-opacity); }
.sg-node.lit rect { stroke: var(--lit-stroke); stroke-width: 3; }
.sg-edge.lit path { stroke-width: 3.5; }
.sg-error-panel {
  margin: 40px auto; max-width: 560px; padding: 18px 22px;
  border: 2px solid #c0392b; background: #fdf0ee; color: #7b241c;
  font-size: 15px;
}
"""

VIEWER_JS = r"""(function () {
  "use strict";

  var KIND_STROKES = {
    derivative: "#c0392b",
    common_part: "#2c5faa",
    perspective: "#1e8c45"
  };
  var SIDE_FILLS = { AS: "#fdeccd", AD: "#d6e8f7", Other: "#e8e8e8" };
  var CELL_W = 180, CELL_H = 90, GUTTER = 40, MARGIN = 40;

  function el(tag, attrs, text) {
    var e = document.createElement(tag);
    for (var k in attrs) e.setAttribute(k, attrs[k]);
    if (text) e.textContent = text;
    return e;
  }
  function svgel(tag, attrs) {
    var e = document.createElementNS("http://www.w3.org/2000/svg", tag);
    for (var k in attrs) e.setAttribute(k, attrs[k]);
    return e;
  }

  function showError(mount, message) {
    mount.innerHTML = "";
    var panel = el("div", { "class": "sg-error-panel" });
    panel.textContent = "Cannot display this syllabus: " + message;
    mount.appendChild(panel);
  }

  function checkBundle(bundle) {
    if (!bundle || typeof bundle !== "object") return "bundle is not an object";
    if (bundle.schema_version !== 1) return "unsupported schema_version";
    if (!bundle.graph || !Array.isArray(bundle.graph.nodes)) return "missing graph";
    if (!bundle.highlights) return "missing highlights";
    return null;
  }

  function center(node) {
    return {
      x: MARGIN + node.pos[0] * (CELL_W + GUTTER) + CELL_W / 2,
      y: MARGIN + node.pos[1] * (CELL_H + GUTTER) + CELL_H / 2
    };
  }

  function borderPoint(c, t, w, h) {
    var dx = t.x - c.x, dy = t.y - c.y;
    if (dx === 0 && dy === 0) return c;
    var tm = 1;
    if (dx !== 0) tm = Math.min(tm, (w / 2) / Math.abs(dx));
    if (dy !== 0) tm = Math.min(tm, (h / 2) / Math.abs(dy));
    return { x: c.x + dx * tm, y: c.y + dy * tm };
  }

  function wrapTitle(title, limit) {
    var words = title.split(/\s+/), lines = [], cur = "";
    words.forEach(function (w) {
      var cand = cur ? cur + " " + w : w;
      if (cur && cand.length > limit) { lines.push(cur); cur = w; }
      else cur = cand;
    });
    if (cur) lines.push(cur);
    return lines.length ? lines : [title];
  }

  function render(bundle, mount, config) {
    var problem = checkBundle(bundle);
    if (problem) { showError(mount, problem); return; }
    config = config || {};
    var hoverDelay = typeof config.hover_delay_ms === "number" ? config.hover_delay_ms : 5000;
    var showNotes = config.show_edge_notes !== false;

    var graph = bundle.graph;
    mount.innerHTML = "";

    var legend = el("div", { "class": "sg-legend" });
    [["derivative", "derivative"], ["common_part", "common part"], ["perspective", "perspective"]]
      .forEach(function (pair) {
        var item = el("span", {});
        var sw = el("span", { "class": "stroke-swatch" });
        sw.style.borderTopColor = KIND_STROKES[pair[0]];
        item.appendChild(sw);
        item.appendChild(document.createTextNode(pair[1]));
        legend.appendChild(item);
      });
    [["AS", "AS derivation"], ["AD", "AD derivation"], ["Other", "other"]]
      .forEach(function (pair) {
        var item = el("span", {});
        var sw = el("span", { "class": "swatch" });
        sw.style.background = SIDE_FILLS[pair[0]];
        item.appendChild(sw);
        item.appendChild(document.createTextNode(pair[1]));
        legend.appendChild(item);
      });
    mount.appendChild(legend);

    var layout = el("div", { "class": "sg-layout" });
    var canvas = el("div", { "class": "sg-canvas" });
    var panel = el("div", { "class": "sg-panel" });
    panel.appendChild(el("p", { "class": "sg-empty" }, "Click a diagram to see its resources."));
    layout.appendChild(canvas);
    layout.appendChild(panel);
    mount.appendChild(layout);

    var maxCol = 0, maxRow = 0;
    graph.nodes.forEach(function (n) {
      maxCol = Math.max(maxCol, n.pos[0]);
      maxRow = Math.max(maxRow, n.pos[1]);
    });
    var width = 2 * MARGIN + (maxCol + 1) * CELL_W + maxCol * GUTTER;
    var height = 2 * MARGIN + (maxRow + 1) * CELL_H + maxRow * GUTTER;
    var svg = svgel("svg", {
      width: width, height: height,
      viewBox: "0 0 " + width + " " + height
    });
    canvas.appendChild(svg);

    var defs = svgel("defs", {});
    Object.keys(KIND_STROKES).sort().forEach(function (kind) {
      var m = svgel("marker", {
        id: "arrow-" + kind, viewBox: "0 0 10 10", refX: 9, refY: 5,
        markerWidth: 7, markerHeight: 7, orient: "auto-start-reverse"
      });
      var p = svgel("path", { d: "M 0 0 L 10 5 L 0 10 z", fill: KIND_STROKES[kind] });
      m.appendChild(p);
      defs.appendChild(m);
    });
    svg.appendChild(defs);

    var byId = {};
    graph.nodes.forEach(function (n) { byId[n.id] = n; });

    var edgeGroups = [];
    graph.edges.forEach(function (e, i) {
      var a = center(byId[e.from]), b = center(byId[e.to]);
      var s = borderPoint(a, b, CELL_W, CELL_H);
      var t = borderPoint(b, a, CELL_W, CELL_H);
      var g = svgel("g", { "class": "sg-edge", "data-edge-index": i });
      var path = svgel("path", {
        d: "M " + s.x + " " + s.y + " L " + t.x + " " + t.y,
        stroke: KIND_STROKES[e.kind], "stroke-width": 2, fill: "none",
        "marker-end": "url(#arrow-" + e.kind + ")"
      });
      g.appendChild(path);
      if (showNotes && e.note) {
        var label = svgel("text", {
          x: (s.x + t.x) / 2, y: (s.y + t.y) / 2 - 4,
          "text-anchor": "middle", "font-size": 9, fill: KIND_STROKES[e.kind]
        });
        label.textContent = e.note;
        g.appendChild(label);
      }
      svg.appendChild(g);
      edgeGroups.push(g);
    });

    var nodeGroups = {};
    var hoverTimer = null;

    function clearHighlight() {
      Object.keys(nodeGroups).forEach(function (id) {
        nodeGroups[id].classList.remove("lit", "dim");
      });
      edgeGroups.forEach(function (g) { g.classList.remove("lit", "dim"); });
    }

    function applyHighlight(id) {
      var hs = bundle.highlights[id];
      if (!hs) return;
      var litNodes = {};
      hs.node_ids.forEach(function (n) { litNodes[n] = true; });
      var litEdges = {};
      hs.edge_indices.forEach(function (i) { litEdges[i] = true; });
      Object.keys(nodeGroups).forEach(function (nid) {
        nodeGroups[nid].classList.toggle("lit", !!litNodes[nid]);
        nodeGroups[nid].classList.toggle("dim", !litNodes[nid]);
      });
      edgeGroups.forEach(function (g, i) {
        g.classList.toggle("lit", !!litEdges[i]);
        g.classList.toggle("dim", !litEdges[i]);
      });
    }

    function showResources(node) {
      panel.innerHTML = "";
      panel.appendChild(el("h2", {}, node.title));
      var groups = { video: [], text: [], audio: [] };
      node.resources.forEach(function (r) { groups[r.kind].push(r); });
      var any = false;
      ["video", "text", "audio"].forEach(function (kind) {
        if (!groups[kind].length) return;
        any = true;
        panel.appendChild(el("h3", {}, kind));
        var ul = el("ul", {});
        groups[kind].forEach(function (r) {
          var li = el("li", {});
          var a = el("a", { href: r.url, target: "_blank", rel: "noopener" }, r.label);
          li.appendChild(a);
          ul.appendChild(li);
        });
        panel.appendChild(ul);
      });
      if (!any) panel.appendChild(el("p", { "class": "sg-empty" }, "no resources"));
      if (node.symbols.length) {
        panel.appendChild(el("h3", {}, "symbols"));
        var meanings = {};
        graph.glossary.forEach(function (s) { meanings[s.key] = s.meaning; });
        var ul2 = el("ul", { "class": "sg-symbols" });
        node.symbols.forEach(function (key) {
          ul2.appendChild(el("li", {}, key + " — " + (meanings[key] || "(not in glossary)")));
        });
        panel.appendChild(ul2);
      }
    }

    graph.nodes.forEach(function (n) {
      var x = MARGIN + n.pos[0] * (CELL_W + GUTTER);
      var y = MARGIN + n.pos[1] * (CELL_H + GUTTER);
      var g = svgel("g", { "class": "sg-node", "data-node-id": n.id });
      g.appendChild(svgel("rect", {
        x: x, y: y, width: CELL_W, height: CELL_H, rx: 8,
        fill: SIDE_FILLS[n.side], stroke: "#555", "stroke-width": 1.5
      }));
      var lines = wrapTitle(n.title, 26);
      var ty0 = y + CELL_H / 2 - (lines.length - 1) * 7 + 4;
      lines.forEach(function (line, i) {
        var t = svgel("text", {
          x: x + CELL_W / 2, y: ty0 + i * 14,
          "text-anchor": "middle", "font-size": 11, fill: "#222"
        });
        t.textContent = line;
        g.appendChild(t);
      });
      if (n.chapters.length) {
        var ch = svgel("text", {
          x: x + CELL_W - 6, y: y + 14, "text-anchor": "end",
          "font-size": 11, "font-weight": "bold", fill: "#c00000"
        });
        ch.textContent = n.chapters.join(", ");
        g.appendChild(ch);
      }
      g.addEventListener("pointerenter", function () {
        if (hoverTimer !== null) clearTimeout(hoverTimer);
        hoverTimer = setTimeout(function () {
          hoverTimer = null;
          applyHighlight(n.id);
        }, hoverDelay);
      });
      g.addEventListener("pointerleave", function () {
        if (hoverTimer !== null) { clearTimeout(hoverTimer); hoverTimer = null; }
        clearHighlight();
      });
      g.addEventListener("click", function () { showResources(n); });
      svg.appendChild(g);
      nodeGroups[n.id] = g;
    });
  }

  function boot() {
    var mount = document.getElementById("app");
    if (!mount) return;
    var dataEl = document.getElementById("bundle-data");
    var bundle = null;
    try {
      bundle = JSON.parse(dataEl.textContent);
    } catch (e) {
      showError(mount, "bundle data is not valid JSON");
      return;
    }
    render(bundle, mount, window.SYLLAGRAPH_CONFIG);
  }

  if (typeof document !== "undefined") {
    if (document.readyState === "loading") {
      document.addEventListener("DOMContentLoaded", boot);
    } else {
      boot();
    }
  }
})();
"""
