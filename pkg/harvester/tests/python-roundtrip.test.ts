/**
 * Cross-component round trip: bundles captured through the driver seam
 * must load in the Python extraction toolkit with zero geometry violations
 * and flow through its page extractor to a full 156-column feature row.
 * Skipped when the Python package is not importable on this machine.
 */

import { execFileSync } from "node:child_process";
import { mkdtemp } from "node:fs/promises";
import { tmpdir } from "node:os";
import * as path from "node:path";

import { describe, expect, it } from "vitest";

import { capturePage, normalizeJob } from "../src/capture.js";
import { FakeDriver, FIXTURE_PAGE } from "./fake-driver.js";
import type { FakeSpec } from "./fake-dom.js";

function pythonAvailable(): boolean {
  try {
    execFileSync("python3", ["-c", "import viscom"], { stdio: "pipe" });
    return true;
  } catch {
    return false;
  }
}

const TWO_COLUMN: FakeSpec = {
  tag: "html",
  box: { x: 0, y: 0, width: 800, height: 600 },
  children: [
    {
      tag: "body",
      box: { x: 0, y: 0, width: 800, height: 600 },
      children: [
        {
          tag: "div",
          box: { x: 0, y: 0, width: 380, height: 600 },
          text: "Left column prose describing the storm in detail.",
        },
        {
          tag: "div",
          box: { x: 420, y: 0, width: 380, height: 600 },
          children: [
            { tag: "img", box: { x: 420, y: 0, width: 380, height: 600 }, attrs: { src: "m.png" } },
          ],
        },
      ],
    },
  ],
};

const FORM_PAGE: FakeSpec = {
  tag: "html",
  box: { x: 0, y: 0, width: 800, height: 400 },
  children: [
    {
      tag: "body",
      box: { x: 0, y: 0, width: 800, height: 400 },
      children: [
        {
          tag: "form",
          box: { x: 10, y: 10, width: 780, height: 200 },
          children: [
            { tag: "input", box: { x: 20, y: 20, width: 300, height: 40 }, attrs: { type: "text" } },
            { tag: "button", box: { x: 340, y: 20, width: 120, height: 40 }, text: "Send" },
          ],
        },
      ],
    },
  ],
};

describe.skipIf(!pythonAvailable())("python round trip", () => {
  it("three captured fixtures validate and extract to 156 columns each", async () => {
    const out = await mkdtemp(path.join(tmpdir(), "harvest-rt-"));
    const fixtures: [string, FakeSpec, [number, number]][] = [
      ["page_a", FIXTURE_PAGE, [640, 480]],
      ["page_b", TWO_COLUMN, [800, 600]],
      ["page_c", FORM_PAGE, [800, 400]],
    ];
    for (const [name, spec, size] of fixtures) {
      const job = normalizeJob({ source: `https://example.org/${name}`, outDir: out, name });
      await capturePage(job, new FakeDriver(spec, size));
    }

    const script = `
import json, sys
from pathlib import Path
import numpy as np
from viscom.snapshot import load_snapshot, validate_geometry
from viscom.extract import extract_corpus

root = Path(sys.argv[1])
for bundle in sorted(root.iterdir()):
    snapshot = load_snapshot(bundle)
    assert validate_geometry(snapshot.geometry) == [], bundle
    assert snapshot.screenshot.width == snapshot.geometry.page_width
    assert snapshot.screenshot.height == snapshot.geometry.page_height
ids, matrix, errors = extract_corpus(root)
assert errors == {}, errors
finite_or_missing = np.isfinite(matrix) | np.isnan(matrix)
print(json.dumps({
    "pages": len(ids),
    "columns": matrix.shape[1],
    "all_finite_or_missing": bool(finite_or_missing.all()),
}))
`;
    const stdout = execFileSync("python3", ["-c", script, out], { encoding: "utf-8" });
    const summary = JSON.parse(stdout.trim().split("\n").pop()!);
    expect(summary).toEqual({ pages: 3, columns: 156, all_finite_or_missing: true });
  }, 60_000);
});
