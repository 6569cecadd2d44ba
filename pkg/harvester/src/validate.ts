/**
 * Local geometry validation mirroring the consumer's rules, so the
 * harvester can self-check every bundle before it lands on disk.
 */

import type { GeometryFile } from "./types.js";

export function validateGeometry(geometry: GeometryFile): string[] {
  const violations: string[] = [];
  if (geometry.page.width <= 0) violations.push("page width must be positive");
  if (geometry.page.height <= 0) violations.push("page height must be positive");

  const byId = new Map<number, GeometryFile["nodes"][number]>();
  for (const node of geometry.nodes) {
    if (byId.has(node.id)) violations.push(`duplicate id: node ${node.id}`);
    byId.set(node.id, node);
  }

  const roots = geometry.nodes.filter((n) => n.parent === null);
  if (roots.length === 0) violations.push("no root");
  if (roots.length > 1) violations.push("multiple roots");

  const children = new Map<number, number[]>();
  for (const node of geometry.nodes) {
    if (node.parent !== null && !byId.has(node.parent)) {
      violations.push(`dangling parent: node ${node.id}`);
    }
    if (node.box[2] < 0 || node.box[3] < 0) {
      violations.push(`negative size: node ${node.id}`);
    }
    if (node.parent !== null) {
      const siblings = children.get(node.parent) ?? [];
      siblings.push(node.id);
      children.set(node.parent, siblings);
    }
  }

  for (const node of geometry.nodes) {
    let current = node;
    const seen = new Set<number>([node.id]);
    let hops = 0;
    while (current.parent !== null && byId.has(current.parent)) {
      current = byId.get(current.parent)!;
      hops += 1;
      if (seen.has(current.id) || hops > geometry.nodes.length) {
        violations.push(`cycle involving node ${node.id}`);
        break;
      }
      seen.add(current.id);
    }
    if (node.tag === "#text" && (children.get(node.id)?.length ?? 0) > 0) {
      violations.push(`#text node with children: node ${node.id}`);
    }
  }
  return violations;
}
