// Auto-layout for the read-only DAG preview: nodes are placed in
// columns by topological depth, ordered within a column by id.

import { isEdge, type WorkflowJson } from "./types.js";

export interface LayoutOptions {
  nodeWidth: number;
  nodeHeight: number;
  gapX: number;
  gapY: number;
}

export const DEFAULT_LAYOUT: LayoutOptions = {
  nodeWidth: 190,
  nodeHeight: 64,
  gapX: 70,
  gapY: 26,
};

export interface PlacedNode {
  id: string;
  classType: string;
  layer: number;
  x: number;
  y: number;
}

export interface PlacedEdge {
  from: string;
  slot: number;
  to: string;
  input: string;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

export interface Layout {
  nodes: PlacedNode[];
  edges: PlacedEdge[];
  width: number;
  height: number;
}

function idOrder(a: string, b: string): number {
  const na = /^\d+$/.test(a) ? parseInt(a, 10) : NaN;
  const nb = /^\d+$/.test(b) ? parseInt(b, 10) : NaN;
  if (!isNaN(na) && !isNaN(nb)) return na - nb;
  if (!isNaN(na)) return -1;
  if (!isNaN(nb)) return 1;
  return a < b ? -1 : a > b ? 1 : 0;
}

/** Longest-path depth of every node; edges always point to deeper layers. */
export function layerOf(graph: WorkflowJson): Map<string, number> {
  const depth = new Map<string, number>();
  const visiting = new Set<string>();

  const compute = (id: string): number => {
    const known = depth.get(id);
    if (known !== undefined) return known;
    if (visiting.has(id)) return 0; // defensive: cycles render at layer 0
    visiting.add(id);
    let d = 0;
    const node = graph[id];
    if (node) {
      for (const value of Object.values(node.inputs)) {
        if (isEdge(value) && graph[value[0]] !== undefined) {
          d = Math.max(d, compute(value[0]) + 1);
        }
      }
    }
    visiting.delete(id);
    depth.set(id, d);
    return d;
  };

  for (const id of Object.keys(graph)) compute(id);
  return depth;
}

export function layeredLayout(
  graph: WorkflowJson,
  opts: LayoutOptions = DEFAULT_LAYOUT,
): Layout {
  const depth = layerOf(graph);
  const layers = new Map<number, string[]>();
  for (const id of Object.keys(graph).sort(idOrder)) {
    const layer = depth.get(id) ?? 0;
    const bucket = layers.get(layer) ?? [];
    bucket.push(id);
    layers.set(layer, bucket);
  }

  const placed = new Map<string, PlacedNode>();
  let width = 0;
  let height = 0;
  for (const [layer, ids] of [...layers.entries()].sort((a, b) => a[0] - b[0])) {
    ids.forEach((id, row) => {
      const node: PlacedNode = {
        id,
        classType: graph[id].class_type,
        layer,
        x: layer * (opts.nodeWidth + opts.gapX),
        y: row * (opts.nodeHeight + opts.gapY),
      };
      placed.set(id, node);
      width = Math.max(width, node.x + opts.nodeWidth);
      height = Math.max(height, node.y + opts.nodeHeight);
    });
  }

  const edges: PlacedEdge[] = [];
  for (const [id, node] of Object.entries(graph)) {
    for (const [input, value] of Object.entries(node.inputs)) {
      if (!isEdge(value)) continue;
      const from = placed.get(value[0]);
      const to = placed.get(id);
      if (!from || !to) continue;
      edges.push({
        from: value[0],
        slot: value[1],
        to: id,
        input,
        x1: from.x + opts.nodeWidth,
        y1: from.y + opts.nodeHeight / 2,
        x2: to.x,
        y2: to.y + opts.nodeHeight / 2,
      });
    }
  }

  return { nodes: [...placed.values()], edges, width, height };
}
