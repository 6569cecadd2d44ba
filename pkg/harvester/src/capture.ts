/**
 * Capture orchestration: navigate, settle, walk the DOM, screenshot, and
 * write one validated bundle atomically.
 */

import * as path from "node:path";

import { bundleNameFor, pngDimensions, writeBundle } from "./bundle.js";
import type { DriverFactory, PageDriver } from "./driver.js";
import { CaptureJob, DEFAULT_JOB, NavigationFailure } from "./types.js";
import { validateGeometry } from "./validate.js";
import { toGeometryFile } from "./walk.js";

export interface CaptureResult {
  bundleDir: string;
  finalUrl: string;
  pageWidth: number;
  pageHeight: number;
  nodeCount: number;
}

export function normalizeJob(partial: Partial<CaptureJob> & { source: string; outDir: string }): CaptureJob {
  return {
    viewportWidth: DEFAULT_JOB.viewportWidth,
    waitMs: DEFAULT_JOB.waitMs,
    timeoutMs: DEFAULT_JOB.timeoutMs,
    ...partial,
  };
}

export async function capturePage(
  job: CaptureJob,
  driver: PageDriver,
  index = 0,
): Promise<CaptureResult> {
  if (job.viewportWidth <= 0) throw new Error("viewportWidth must be positive");
  const finalUrl = await driver.navigate(job.source, job.timeoutMs, job.waitMs);
  const html = await driver.content();
  const walkResult = await driver.walk();
  const screenshotPng = await driver.screenshot();

  // The screenshot is the ground truth for page size; geometry must agree
  // with it exactly for downstream area metrics.
  const { width, height } = pngDimensions(screenshotPng);
  const geometry = toGeometryFile(walkResult, width, height);
  const violations = validateGeometry(geometry);
  if (violations.length > 0) {
    throw new NavigationFailure(`walk produced invalid geometry: ${violations.join("; ")}`);
  }

  const name = job.name ?? bundleNameFor(job.source, index);
  const bundleDir = await writeBundle(path.join(job.outDir, name), {
    html,
    screenshotPng,
    geometry,
    meta: { url: finalUrl, captured_at: new Date().toISOString() },
  });
  return {
    bundleDir,
    finalUrl,
    pageWidth: width,
    pageHeight: height,
    nodeCount: geometry.nodes.length,
  };
}

export async function captureAll(
  sources: string[],
  options: { outDir: string; viewportWidth: number; waitMs: number; timeoutMs: number; parallelTabs: number },
  factory: DriverFactory,
): Promise<CaptureResult[]> {
  const results: (CaptureResult | Error)[] = new Array(sources.length);
  let cursor = 0;
  const tabCount = Math.max(1, options.parallelTabs);

  async function worker(): Promise<void> {
    const driver = await factory.open(options.viewportWidth);
    try {
      while (true) {
        const index = cursor++;
        if (index >= sources.length) return;
        const job = normalizeJob({
          source: sources[index],
          outDir: options.outDir,
          viewportWidth: options.viewportWidth,
          waitMs: options.waitMs,
          timeoutMs: options.timeoutMs,
        });
        try {
          results[index] = await capturePage(job, driver, index);
        } catch (error) {
          results[index] = error instanceof Error ? error : new Error(String(error));
        }
      }
    } finally {
      await driver.close();
    }
  }

  await Promise.all(Array.from({ length: Math.min(tabCount, sources.length) }, worker));
  const failures = results.filter((r): r is Error => r instanceof Error);
  if (failures.length > 0 && failures.length === sources.length) {
    throw failures[0];
  }
  for (const failure of failures) {
    console.error(`capture failed: ${failure.message}`);
  }
  return results.filter((r): r is CaptureResult => !(r instanceof Error));
}
