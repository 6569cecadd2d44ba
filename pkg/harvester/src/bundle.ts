/**
 * Atomic bundle writing: everything is staged in a temp directory next to
 * the target and renamed into place, so a failed capture never leaves a
 * partial bundle behind.
 */

import { mkdir, rename, rm, writeFile } from "node:fs/promises";
import * as path from "node:path";

import type { GeometryFile, MetaFile } from "./types.js";

export interface BundleParts {
  html: string | Buffer;
  screenshotPng: Buffer;
  geometry: GeometryFile;
  meta: MetaFile;
}

export function pngDimensions(png: Buffer): { width: number; height: number } {
  // PNG signature (8 bytes) + IHDR length/type (8) puts width at offset 16.
  if (png.length < 24 || png.readUInt32BE(12) !== 0x49484452) {
    throw new Error("not a PNG buffer");
  }
  return { width: png.readUInt32BE(16), height: png.readUInt32BE(20) };
}

export async function writeBundle(targetDir: string, parts: BundleParts): Promise<string> {
  const parent = path.dirname(targetDir);
  const staging = path.join(
    parent,
    `.${path.basename(targetDir)}.tmp-${process.pid}-${Date.now()}`,
  );
  await mkdir(staging, { recursive: true });
  try {
    await writeFile(path.join(staging, "page.html"), parts.html);
    await writeFile(path.join(staging, "screenshot.png"), parts.screenshotPng);
    await writeFile(
      path.join(staging, "geometry.json"),
      JSON.stringify(parts.geometry, null, 1) + "\n",
    );
    await writeFile(path.join(staging, "meta.json"), JSON.stringify(parts.meta, null, 1) + "\n");
    await rm(targetDir, { recursive: true, force: true });
    await rename(staging, targetDir);
    return targetDir;
  } catch (error) {
    await rm(staging, { recursive: true, force: true });
    throw error;
  }
}

export function bundleNameFor(source: string, index: number): string {
  const base = source.replace(/^[a-z]+:\/\//i, "").replace(/[^a-zA-Z0-9]+/g, "_");
  const trimmed = base.replace(/^_+|_+$/g, "").slice(0, 60) || "page";
  return `${String(index + 1).padStart(3, "0")}_${trimmed}`;
}
