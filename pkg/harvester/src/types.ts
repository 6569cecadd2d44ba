/** Bundle schema shared with the extraction toolkit (geometry.json / meta.json). */

export interface RenderNodeJson {
  id: number;
  parent: number | null;
  tag: string;
  box: [number, number, number, number];
  visible: boolean;
  styles: Record<string, string>;
  text?: string;
  attrs: Record<string, string>;
}

export interface GeometryFile {
  page: { width: number; height: number };
  nodes: RenderNodeJson[];
}

export interface MetaFile {
  url: string;
  captured_at: string;
  page_type_hint?: string;
}

export interface CaptureJob {
  /** URL or local file path. */
  source: string;
  viewportWidth: number;
  /** Extra settle delay after network idle, in milliseconds. */
  waitMs: number;
  /** Navigation timeout in milliseconds. */
  timeoutMs: number;
  outDir: string;
  /** Bundle directory name; derived from the source when omitted. */
  name?: string;
}

export const DEFAULT_JOB = {
  viewportWidth: 1280,
  waitMs: 500,
  timeoutMs: 30_000,
} as const;

export class NavigationFailure extends Error {
  constructor(message: string) {
    super(message);
    this.name = "NavigationFailure";
  }
}

export class CaptureTimeout extends Error {
  constructor(message: string) {
    super(message);
    this.name = "CaptureTimeout";
  }
}
