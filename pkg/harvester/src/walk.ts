/**
 * The in-page DOM walk. collectGeometry is fully self-contained (no outer
 * captures) so a browser driver can serialize it with Function.toString()
 * and evaluate it inside the page; tests run the same function against a
 * fake document.
 */

import type { GeometryFile, RenderNodeJson } from "./types.js";

/** The slice of the DOM the walk relies on (structural, so fakes qualify). */
export interface WalkRect {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface WalkNode {
  nodeType: number;
  nodeName: string;
  textContent: string | null;
  childNodes: ArrayLike<WalkNode>;
}

export interface WalkElement extends WalkNode {
  getBoundingClientRect(): WalkRect;
  getAttribute(name: string): string | null;
}

export interface WalkStyle {
  getPropertyValue(name: string): string;
}

export interface WalkDocument {
  documentElement: WalkElement;
  createRange(): {
    selectNodeContents(node: WalkNode): void;
    getBoundingClientRect(): WalkRect;
  };
}

export interface WalkWindow {
  scrollX: number;
  scrollY: number;
  getComputedStyle(element: WalkElement): WalkStyle;
}

export interface WalkResult {
  width: number;
  height: number;
  nodes: RenderNodeJson[];
}

export function collectGeometry(doc: WalkDocument, win: WalkWindow): WalkResult {
  const ELEMENT_NODE = 1;
  const TEXT_NODE = 3;
  const styleKeys = ["font-size", "background-color", "color", "display"];
  const attrKeys = ["src", "href", "type", "alt"];

  const nodes: RenderNodeJson[] = [];
  let nextId = 0;

  function pageBox(rect: { x: number; y: number; width: number; height: number }):
      [number, number, number, number] {
    return [
      rect.x + win.scrollX,
      rect.y + win.scrollY,
      Math.max(0, rect.width),
      Math.max(0, rect.height),
    ];
  }

  function visitElement(element: WalkElement, parent: number | null): void {
    const id = nextId++;
    const style = win.getComputedStyle(element);
    const styles: Record<string, string> = {};
    for (const key of styleKeys) {
      const value = style.getPropertyValue(key);
      if (value) styles[key] = value;
    }
    const attrs: Record<string, string> = {};
    for (const key of attrKeys) {
      const value = element.getAttribute(key);
      if (value !== null) attrs[key] = value;
    }
    const display = style.getPropertyValue("display");
    const visibility = style.getPropertyValue("visibility");
    const opacityRaw = style.getPropertyValue("opacity");
    const opacity = opacityRaw === "" ? 1 : parseFloat(opacityRaw);
    const visible = display !== "none" && visibility !== "hidden" && opacity > 0;

    nodes.push({
      id,
      parent,
      tag: element.nodeName.toLowerCase(),
      box: pageBox(element.getBoundingClientRect()),
      visible,
      styles,
      attrs,
    });

    const children = element.childNodes;
    for (let i = 0; i < children.length; i++) {
      const child = children[i];
      if (child.nodeType === ELEMENT_NODE) {
        visitElement(child as WalkElement, id);
      } else if (child.nodeType === TEXT_NODE) {
        const text = (child.textContent ?? "").replace(/\s+/g, " ").trim();
        if (!text) continue;
        const range = doc.createRange();
        range.selectNodeContents(child);
        nodes.push({
          id: nextId++,
          parent: id,
          tag: "#text",
          box: pageBox(range.getBoundingClientRect()),
          visible,
          styles: {},
          text,
          attrs: {},
        });
      }
    }
  }

  visitElement(doc.documentElement, null);

  let width = 0;
  let height = 0;
  for (const node of nodes) {
    width = Math.max(width, node.box[0] + node.box[2]);
    height = Math.max(height, node.box[1] + node.box[3]);
  }
  return { width: Math.ceil(width), height: Math.ceil(height), nodes };
}

export function toGeometryFile(result: WalkResult, pageWidth: number, pageHeight: number): GeometryFile {
  return {
    page: { width: Math.round(pageWidth), height: Math.round(pageHeight) },
    nodes: result.nodes,
  };
}
