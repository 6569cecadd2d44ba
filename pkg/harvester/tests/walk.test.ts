import { describe, expect, it } from "vitest";

import { collectGeometry, toGeometryFile } from "../src/walk.js";
import { validateGeometry } from "../src/validate.js";
import { buildFakePage, type FakeSpec } from "./fake-dom.js";

const PAGE: FakeSpec = {
  tag: "html",
  box: { x: 0, y: 0, width: 1280, height: 900 },
  children: [
    {
      tag: "body",
      box: { x: 0, y: 0, width: 1280, height: 900 },
      styles: { "background-color": "rgb(255, 255, 255)" },
      children: [
        {
          tag: "header",
          box: { x: 0, y: 0, width: 1280, height: 100 },
          children: [
            {
              tag: "h1",
              box: { x: 20, y: 10, width: 400, height: 60 },
              styles: { "font-size": "32px", color: "rgb(0, 0, 0)" },
              text: "Title text",
            },
          ],
        },
        {
          tag: "img",
          box: { x: 20, y: 140, width: 300, height: 200 },
          attrs: { src: "photo.png", alt: "photo" },
        },
        {
          tag: "div",
          box: { x: 0, y: 0, width: 0, height: 0 },
          styles: { display: "none" },
          text: "hidden helper",
        },
      ],
    },
  ],
};

describe("collectGeometry", () => {
  it("assigns ids in document order with correct parents", () => {
    const { doc, win } = buildFakePage(PAGE);
    const result = collectGeometry(doc, win);
    const tags = result.nodes.map((n) => `${n.id}:${n.tag}`);
    expect(tags).toEqual([
      "0:html",
      "1:body",
      "2:header",
      "3:h1",
      "4:#text",
      "5:img",
      "6:div",
      "7:#text",
    ]);
    const byId = new Map(result.nodes.map((n) => [n.id, n]));
    expect(byId.get(0)!.parent).toBeNull();
    expect(byId.get(3)!.parent).toBe(2);
    expect(byId.get(4)!.parent).toBe(3);
  });

  it("records the required style and attribute subset", () => {
    const { doc, win } = buildFakePage(PAGE);
    const result = collectGeometry(doc, win);
    const h1 = result.nodes.find((n) => n.tag === "h1")!;
    expect(h1.styles["font-size"]).toBe("32px");
    const img = result.nodes.find((n) => n.tag === "img")!;
    expect(img.attrs).toEqual({ src: "photo.png", alt: "photo" });
  });

  it("computes visibility from display/visibility/opacity", () => {
    const { doc, win } = buildFakePage(PAGE);
    const result = collectGeometry(doc, win);
    const hidden = result.nodes.find((n) => n.tag === "div")!;
    expect(hidden.visible).toBe(false);
    const header = result.nodes.find((n) => n.tag === "header")!;
    expect(header.visible).toBe(true);
  });

  it("collapses whitespace in text nodes and drops empty ones", () => {
    const { doc, win } = buildFakePage({
      tag: "html",
      box: { x: 0, y: 0, width: 100, height: 100 },
      children: [
        {
          tag: "p",
          box: { x: 0, y: 0, width: 100, height: 20 },
          text: "  spaced   out  ",
        },
        { tag: "p", box: { x: 0, y: 30, width: 100, height: 20 }, text: "   " },
      ],
    });
    const result = collectGeometry(doc, win);
    const texts = result.nodes.filter((n) => n.tag === "#text");
    expect(texts).toHaveLength(1);
    expect(texts[0].text).toBe("spaced out");
  });

  it("produces geometry that passes validation", () => {
    const { doc, win } = buildFakePage(PAGE);
    const result = collectGeometry(doc, win);
    const geometry = toGeometryFile(result, 1280, 900);
    expect(validateGeometry(geometry)).toEqual([]);
  });

  it("is deterministic for a fixed page", () => {
    const { doc, win } = buildFakePage(PAGE);
    const a = JSON.stringify(collectGeometry(doc, win));
    const b = JSON.stringify(collectGeometry(doc, win));
    expect(a).toBe(b);
  });

  it("offsets boxes by the scroll position", () => {
    const { doc, win } = buildFakePage(PAGE);
    const scrolled = { ...win, scrollX: 0, scrollY: 50 };
    const result = collectGeometry(doc, scrolled);
    const header = result.nodes.find((n) => n.tag === "header")!;
    expect(header.box[1]).toBe(50);
  });
});

describe("validateGeometry", () => {
  it("flags schema violations by rule", () => {
    const geometry = {
      page: { width: 100, height: 100 },
      nodes: [
        { id: 0, parent: null, tag: "html", box: [0, 0, 10, 10] as [number, number, number, number], visible: true, styles: {}, attrs: {} },
        { id: 1, parent: 7, tag: "div", box: [0, 0, 10, 10] as [number, number, number, number], visible: true, styles: {}, attrs: {} },
      ],
    };
    expect(validateGeometry(geometry)).toContain("dangling parent: node 1");
  });

  it("flags multiple roots", () => {
    const geometry = {
      page: { width: 100, height: 100 },
      nodes: [
        { id: 0, parent: null, tag: "html", box: [0, 0, 10, 10] as [number, number, number, number], visible: true, styles: {}, attrs: {} },
        { id: 1, parent: null, tag: "body", box: [0, 0, 10, 10] as [number, number, number, number], visible: true, styles: {}, attrs: {} },
      ],
    };
    expect(validateGeometry(geometry)).toContain("multiple roots");
  });
});
