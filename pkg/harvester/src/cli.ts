#!/usr/bin/env node
/**
 * harvest <source>... --out <dir> [--viewport 1280] [--wait-ms 500]
 *         [--timeout-ms 30000] [--tabs 2] [--chromium /path/to/chromium]
 *
 * Captures each URL or local HTML file into a snapshot bundle directory
 * (page.html, screenshot.png, geometry.json, meta.json).
 */

import { captureAll } from "./capture.js";
import { PlaywrightFactory } from "./playwright-driver.js";
import { DEFAULT_JOB } from "./types.js";

interface CliArgs {
  sources: string[];
  out: string;
  viewport: number;
  waitMs: number;
  timeoutMs: number;
  tabs: number;
  chromium?: string;
}

export function parseArgs(argv: string[]): CliArgs {
  const args: CliArgs = {
    sources: [],
    out: "",
    viewport: DEFAULT_JOB.viewportWidth,
    waitMs: DEFAULT_JOB.waitMs,
    timeoutMs: DEFAULT_JOB.timeoutMs,
    tabs: 2,
  };
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    const next = () => {
      i += 1;
      if (i >= argv.length) throw new Error(`missing value for ${arg}`);
      return argv[i];
    };
    switch (arg) {
      case "--out":
        args.out = next();
        break;
      case "--viewport":
        args.viewport = Number(next());
        break;
      case "--wait-ms":
        args.waitMs = Number(next());
        break;
      case "--timeout-ms":
        args.timeoutMs = Number(next());
        break;
      case "--tabs":
        args.tabs = Number(next());
        break;
      case "--chromium":
        args.chromium = next();
        break;
      default:
        if (arg.startsWith("--")) throw new Error(`unknown flag ${arg}`);
        args.sources.push(arg);
    }
  }
  if (args.sources.length === 0) throw new Error("no sources given");
  if (!args.out) throw new Error("--out is required");
  if (!(args.viewport > 0)) throw new Error("--viewport must be positive");
  return args;
}

async function main(): Promise<void> {
  let args: CliArgs;
  try {
    args = parseArgs(process.argv.slice(2));
  } catch (error) {
    console.error(`usage error: ${error instanceof Error ? error.message : error}`);
    console.error(
      "usage: harvest <source>... --out <dir> [--viewport 1280] [--wait-ms 500]",
    );
    process.exit(2);
    return;
  }

  const factory = new PlaywrightFactory(args.chromium);
  try {
    const results = await captureAll(
      args.sources,
      {
        outDir: args.out,
        viewportWidth: args.viewport,
        waitMs: args.waitMs,
        timeoutMs: args.timeoutMs,
        parallelTabs: args.tabs,
      },
      factory,
    );
    for (const result of results) {
      console.log(
        `${result.bundleDir}  ${result.pageWidth}x${result.pageHeight}  ` +
          `${result.nodeCount} nodes  ${result.finalUrl}`,
      );
    }
    process.exit(results.length > 0 ? 0 : 1);
  } catch (error) {
    console.error(`capture failed: ${error instanceof Error ? error.message : error}`);
    process.exit(1);
  } finally {
    await factory.dispose();
  }
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  void main();
}
