/** Deterministic force-directed layout.
 *
 * Initial positions are seeded from a hash of the node id, then a fixed
 * number of spring iterations runs; no randomness, so identical documents
 * always produce identical coordinates (snapshot tests rely on this).
 * User drags overwrite positions afterwards (pinning).
 */

import type { GraphDoc } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

function hash(text: string): number {
  let h = 2166136261;
  for (let i = 0; i < text.length; i++) {
    h ^= text.charCodeAt(i);
    h = Math.imul(h, 16777619);
  }
  return (h >>> 0) / 4294967296;
}

export function layout(doc: GraphDoc, width = 640, height = 420): Map<string, Point> {
  const positions = new Map<string, Point>();
  const n = doc.nodes.length;
  doc.nodes.forEach((node, i) => {
    const angle = 2 * Math.PI * (i / Math.max(n, 1)) + hash(node.id) * 0.5;
    const radius = n > 1 ? Math.min(width, height) * 0.32 : 0;
    positions.set(node.id, {
      x: width / 2 + radius * Math.cos(angle),
      y: height / 2 + radius * Math.sin(angle),
    });
  });

  const ideal = 150;
  for (let iter = 0; iter < 60; iter++) {
    const force = new Map<string, Point>();
    for (const node of doc.nodes) force.set(node.id, { x: 0, y: 0 });
    // pairwise repulsion
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        const a = doc.nodes[i].id;
        const b = doc.nodes[j].id;
        const pa = positions.get(a)!;
        const pb = positions.get(b)!;
        let dx = pa.x - pb.x;
        let dy = pa.y - pb.y;
        const dist = Math.max(Math.hypot(dx, dy), 1);
        const push = (ideal * ideal) / dist / dist;
        dx /= dist;
        dy /= dist;
        force.get(a)!.x += dx * push * 8;
        force.get(a)!.y += dy * push * 8;
        force.get(b)!.x -= dx * push * 8;
        force.get(b)!.y -= dy * push * 8;
      }
    }
    // spring attraction along edges
    for (const edge of doc.edges) {
      if (edge.source === edge.target) continue;
      const pa = positions.get(edge.source);
      const pb = positions.get(edge.target);
      if (!pa || !pb) continue;
      let dx = pb.x - pa.x;
      let dy = pb.y - pa.y;
      const dist = Math.max(Math.hypot(dx, dy), 1);
      const pull = (dist - ideal) * 0.05;
      dx /= dist;
      dy /= dist;
      force.get(edge.source)!.x += dx * pull;
      force.get(edge.source)!.y += dy * pull;
      force.get(edge.target)!.x -= dx * pull;
      force.get(edge.target)!.y -= dy * pull;
    }
    const cooling = 1 - iter / 60;
    for (const node of doc.nodes) {
      const p = positions.get(node.id)!;
      const f = force.get(node.id)!;
      p.x += Math.max(-12, Math.min(12, f.x)) * cooling;
      p.y += Math.max(-12, Math.min(12, f.y)) * cooling;
      p.x = Math.max(40, Math.min(width - 40, p.x));
      p.y = Math.max(40, Math.min(height - 40, p.y));
    }
  }
  for (const p of positions.values()) {
    p.x = Math.round(p.x * 10) / 10;
    p.y = Math.round(p.y * 10) / 10;
  }
  return positions;
}
