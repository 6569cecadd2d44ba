/**
 * Playwright-backed driver. Animations are disabled and local file
 * captures get a fixed font stack injected, so fixture bundles are stable
 * across machines. Chromium is resolved from PLAYWRIGHT_CHROMIUM_PATH or
 * the playwright-core default installation.
 */

import * as path from "node:path";
import { pathToFileURL } from "node:url";

import type { Browser, BrowserContext, Page } from "playwright-core";

import type { DriverFactory, PageDriver } from "./driver.js";
import { CaptureTimeout, NavigationFailure } from "./types.js";
import { collectGeometry, type WalkResult } from "./walk.js";

const STABILIZE_CSS = `
*, *::before, *::after {
  animation: none !important;
  transition: none !important;
  caret-color: transparent !important;
}
html { font-family: "DejaVu Sans", Arial, sans-serif !important; }
`;

function toUrl(source: string): string {
  if (/^[a-z][a-z0-9+.-]*:\/\//i.test(source)) return source;
  return pathToFileURL(path.resolve(source)).href;
}

class PlaywrightPageDriver implements PageDriver {
  constructor(private readonly page: Page, private readonly context: BrowserContext) {}

  async navigate(source: string, timeoutMs: number, waitMs: number): Promise<string> {
    const url = toUrl(source);
    try {
      await this.page.goto(url, { waitUntil: "networkidle", timeout: timeoutMs });
    } catch (error) {
      const message = error instanceof Error ? error.message : String(error);
      if (/timeout/i.test(message)) throw new CaptureTimeout(`navigation timed out: ${url}`);
      throw new NavigationFailure(`navigation failed: ${url}: ${message}`);
    }
    await this.page.addStyleTag({ content: STABILIZE_CSS });
    if (waitMs > 0) await this.page.waitForTimeout(waitMs);
    await this.page.evaluate(() => window.scrollTo(0, 0));
    return this.page.url();
  }

  async content(): Promise<string> {
    return this.page.content();
  }

  async walk(): Promise<WalkResult> {
    return (await this.page.evaluate(
      `(${collectGeometry.toString()})(document, window)`,
    )) as WalkResult;
  }

  async screenshot(): Promise<Buffer> {
    return this.page.screenshot({ fullPage: true, animations: "disabled", type: "png" });
  }

  async close(): Promise<void> {
    await this.page.close();
  }
}

export class PlaywrightFactory implements DriverFactory {
  private browser: Browser | null = null;

  constructor(private readonly executablePath?: string) {}

  private async launch(): Promise<Browser> {
    if (this.browser) return this.browser;
    const { chromium } = await import("playwright-core");
    this.browser = await chromium.launch({
      headless: true,
      executablePath: this.executablePath ?? process.env.PLAYWRIGHT_CHROMIUM_PATH,
    });
    return this.browser;
  }

  async open(viewportWidth: number): Promise<PageDriver> {
    const browser = await this.launch();
    const context = await browser.newContext({
      viewport: { width: viewportWidth, height: 720 },
      deviceScaleFactor: 1,
    });
    const page = await context.newPage();
    return new PlaywrightPageDriver(page, context);
  }

  async dispose(): Promise<void> {
    if (this.browser) {
      await this.browser.close();
      this.browser = null;
    }
  }
}
