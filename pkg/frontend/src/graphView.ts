/** SVG rendering of a counterexample graph.
 *
 * Circles for elements, the marked root drawn bold and dark, at most k
 * labels per node (a prefix of the server-ordered label list), role-labeled
 * arrows, draggable nodes, wheel zoom and background panning.
 */

import type { Point } from "./layout.js";
import type { GraphDoc, GraphNode } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface ViewTransform {
  scale: number;
  tx: number;
  ty: number;
}

export interface GraphCallbacks {
  onSelectNode(id: string): void;
  onDragNode(id: string, x: number, y: number): void;
  onPanZoom(transform: ViewTransform): void;
}

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {}
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, value);
  return el;
}

function nodeLabelLines(node: GraphNode, k: number): string[] {
  const lines = node.labels.slice(0, k);
  return lines.length > 0 ? lines : [node.id];
}

export function renderGraph(
  doc: GraphDoc,
  positions: Map<string, Point>,
  k: number,
  selected: string | null,
  transform: ViewTransform,
  callbacks: GraphCallbacks
): SVGSVGElement {
  const svg = svgEl("svg", {
    class: "graph-canvas",
    viewBox: "0 0 640 420",
    width: "640",
    height: "420",
  });
  const defs = svgEl("defs");
  const marker = svgEl("marker", {
    id: "arrow",
    viewBox: "0 0 10 10",
    refX: "28",
    refY: "5",
    markerWidth: "7",
    markerHeight: "7",
    orient: "auto-start-reverse",
  });
  marker.appendChild(svgEl("path", { d: "M 0 0 L 10 5 L 0 10 z", fill: "#555" }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  const world = svgEl("g", {
    class: "world",
    transform: `translate(${transform.tx} ${transform.ty}) scale(${transform.scale})`,
  });
  svg.appendChild(world);

  for (const edge of doc.edges) {
    const group = svgEl("g", { class: "edge", "data-role": edge.role });
    const a = positions.get(edge.source);
    const b = positions.get(edge.target);
    if (!a || !b) continue;
    if (edge.source === edge.target) {
      group.appendChild(
        svgEl("path", {
          d: `M ${a.x + 18} ${a.y - 18} a 22 22 0 1 1 2 30`,
          fill: "none",
          stroke: "#555",
          "marker-end": "url(#arrow)",
        })
      );
      const text = svgEl("text", { x: String(a.x + 52), y: String(a.y - 24), class: "edge-label" });
      text.textContent = edge.role;
      group.appendChild(text);
    } else {
      group.appendChild(
        svgEl("line", {
          x1: String(a.x),
          y1: String(a.y),
          x2: String(b.x),
          y2: String(b.y),
          stroke: "#555",
          "marker-end": "url(#arrow)",
        })
      );
      const text = svgEl("text", {
        x: String((a.x + b.x) / 2),
        y: String((a.y + b.y) / 2 - 6),
        class: "edge-label",
      });
      text.textContent = edge.role;
      group.appendChild(text);
    }
    world.appendChild(group);
  }

  for (const node of doc.nodes) {
    const p = positions.get(node.id);
    if (!p) continue;
    const classes = ["node"];
    if (node.marked) classes.push("marked");
    if (node.id === selected) classes.push("selected");
    const group = svgEl("g", {
      class: classes.join(" "),
      "data-id": node.id,
      transform: `translate(${p.x} ${p.y})`,
    });
    group.appendChild(
      svgEl("circle", {
        r: "26",
        fill: node.marked ? "#222" : "#f4f4f4",
        stroke: node.id === selected ? "#0b6" : "#333",
        "stroke-width": node.marked ? "4" : node.id === selected ? "3" : "1.5",
      })
    );
    const lines = nodeLabelLines(node, k);
    const text = svgEl("text", {
      class: "node-label",
      "text-anchor": "middle",
      y: String(-(lines.length - 1) * 7),
      fill: node.marked ? "#fff" : "#111",
    });
    lines.forEach((line, i) => {
      const tspan = svgEl("tspan", { x: "0", dy: i === 0 ? "4" : "14" });
      tspan.textContent = line;
      text.appendChild(tspan);
    });
    group.appendChild(text);
    group.addEventListener("click", (event) => {
      event.stopPropagation();
      callbacks.onSelectNode(node.id);
    });
    attachDrag(group, node.id, p, transform, callbacks);
    world.appendChild(group);
  }

  attachPanZoom(svg, transform, callbacks);
  return svg;
}

function attachDrag(
  group: SVGGElement,
  id: string,
  p: Point,
  transform: ViewTransform,
  callbacks: GraphCallbacks
): void {
  let dragging = false;
  let last: { x: number; y: number } | null = null;
  group.addEventListener("pointerdown", (event) => {
    dragging = true;
    last = { x: event.clientX, y: event.clientY };
    (event.target as Element).setPointerCapture?.(event.pointerId);
    event.stopPropagation();
  });
  group.addEventListener("pointermove", (event) => {
    if (!dragging || !last) return;
    const dx = (event.clientX - last.x) / transform.scale;
    const dy = (event.clientY - last.y) / transform.scale;
    last = { x: event.clientX, y: event.clientY };
    callbacks.onDragNode(id, p.x + dx, p.y + dy);
  });
  group.addEventListener("pointerup", () => {
    dragging = false;
    last = null;
  });
}

function attachPanZoom(
  svg: SVGSVGElement,
  transform: ViewTransform,
  callbacks: GraphCallbacks
): void {
  svg.addEventListener("wheel", (event) => {
    event.preventDefault();
    const factor = event.deltaY < 0 ? 1.1 : 1 / 1.1;
    const scale = Math.max(0.2, Math.min(4, transform.scale * factor));
    callbacks.onPanZoom({ ...transform, scale });
  });
  let panning = false;
  let last: { x: number; y: number } | null = null;
  svg.addEventListener("pointerdown", (event) => {
    if ((event.target as Element).closest(".node")) return;
    panning = true;
    last = { x: event.clientX, y: event.clientY };
  });
  svg.addEventListener("pointermove", (event) => {
    if (!panning || !last) return;
    const dx = event.clientX - last.x;
    const dy = event.clientY - last.y;
    last = { x: event.clientX, y: event.clientY };
    callbacks.onPanZoom({
      ...transform,
      tx: transform.tx + dx,
      ty: transform.ty + dy,
    });
  });
  svg.addEventListener("pointerup", () => {
    panning = false;
    last = null;
  });
}
