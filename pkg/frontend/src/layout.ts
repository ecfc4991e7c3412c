/**
 * Layered DAG layout for the what-if view.
 *
 * When every variable carries a group tag the four groups become the
 * layers, in pipeline order (environment, degradation, observation,
 * interest). Otherwise layers are longest-path depth from the roots.
 * Within a layer, nodes sit in sorted-id order.
 */

import type { ModelVariable } from './types.js';

export interface LayoutNode {
  id: string;
  layer: number;
  index: number;
  x: number;
  y: number;
}

const GROUP_ORDER = ['environment', 'degradation', 'observation', 'interest'];

export function layerOf(
  variable: ModelVariable,
  depths: Map<string, number>,
  useGroups: boolean,
): number {
  if (useGroups && variable.group) {
    const i = GROUP_ORDER.indexOf(variable.group);
    if (i >= 0) return i;
  }
  return depths.get(variable.id) ?? 0;
}

export function longestPathDepths(
  variables: ModelVariable[],
  edges: [string, string][],
): Map<string, number> {
  const parents = new Map<string, string[]>(variables.map((v) => [v.id, []]));
  for (const [src, dst] of edges) {
    parents.get(dst)?.push(src);
  }
  const depths = new Map<string, number>();
  const visit = (id: string): number => {
    const known = depths.get(id);
    if (known !== undefined) return known;
    const ps = parents.get(id) ?? [];
    const depth = ps.length === 0 ? 0 : 1 + Math.max(...ps.map(visit));
    depths.set(id, depth);
    return depth;
  };
  for (const v of variables) visit(v.id);
  return depths;
}

export function layeredLayout(
  variables: ModelVariable[],
  edges: [string, string][],
  options: { columnWidth?: number; rowHeight?: number } = {},
): LayoutNode[] {
  const columnWidth = options.columnWidth ?? 160;
  const rowHeight = options.rowHeight ?? 56;
  const useGroups = variables.every(
    (v) => v.group != null && GROUP_ORDER.includes(v.group),
  );
  const depths = longestPathDepths(variables, edges);
  const byLayer = new Map<number, ModelVariable[]>();
  for (const v of variables) {
    const layer = layerOf(v, depths, useGroups);
    const bucket = byLayer.get(layer) ?? [];
    bucket.push(v);
    byLayer.set(layer, bucket);
  }
  const nodes: LayoutNode[] = [];
  for (const [layer, bucket] of [...byLayer.entries()].sort((a, b) => a[0] - b[0])) {
    bucket.sort((a, b) => (a.id < b.id ? -1 : 1));
    bucket.forEach((v, index) => {
      nodes.push({
        id: v.id,
        layer,
        index,
        x: layer * columnWidth + 40,
        y: index * rowHeight + 32,
      });
    });
  }
  return nodes;
}
