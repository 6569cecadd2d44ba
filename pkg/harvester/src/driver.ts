/**
 * The page-driver seam: capture logic talks to this interface only, so the
 * Playwright-backed driver and the in-process test fake are interchangeable.
 */

import type { WalkResult } from "./walk.js";

export interface PageDriver {
  /** Navigate and settle; resolves to the final URL. */
  navigate(source: string, timeoutMs: number, waitMs: number): Promise<string>;
  /** Serialized page HTML after settle. */
  content(): Promise<string>;
  /** Run the geometry walk inside the page. */
  walk(): Promise<WalkResult>;
  /** Full-page PNG screenshot at device pixel ratio 1. */
  screenshot(): Promise<Buffer>;
  close(): Promise<void>;
}

export interface DriverFactory {
  open(viewportWidth: number): Promise<PageDriver>;
}
