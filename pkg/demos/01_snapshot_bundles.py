"""Build a snapshot bundle on disk, load it back, and classify page URLs.

A bundle directory holds page.html, screenshot.png, geometry.json and
meta.json; everything downstream consumes this one format.
"""

import tempfile
from pathlib import Path

import numpy as np

from viscom.snapshot import (
    PageMeta,
    PageSnapshot,
    RenderGeometry,
    RenderNode,
    Screenshot,
    classify_page_type,
    load_snapshot,
    validate_geometry,
    write_snapshot,
)

geometry = RenderGeometry(
    page_width=640,
    page_height=400,
    nodes=(
        RenderNode(id=0, parent_id=None, tag="html", box=(0, 0, 640, 400), visible=True),
        RenderNode(id=1, parent_id=0, tag="body", box=(0, 0, 640, 400), visible=True),
        RenderNode(id=2, parent_id=1, tag="p", box=(20, 20, 600, 80), visible=True),
        RenderNode(id=3, parent_id=2, tag="#text", box=(20, 20, 600, 80),
                   visible=True, text="A small demo page."),
    ),
)
print("geometry violations:", validate_geometry(geometry))

snapshot = PageSnapshot(
    id="demo-page",
    html=b"<html><body><p>A small demo page.</p></body></html>",
    screenshot=Screenshot(pixels=np.full((400, 640, 3), 240, dtype=np.uint8),
                          width=640, height=400),
    geometry=geometry,
    meta=PageMeta(url="https://example.org/demo", captured_at="2024-06-01T09:00:00+00:00"),
)

with tempfile.TemporaryDirectory() as tmp:
    bundle = write_snapshot(snapshot, Path(tmp) / "demo-page")
    print("bundle files:", sorted(p.name for p in bundle.iterdir()))
    loaded = load_snapshot(bundle)
    print("round-trip equal:", loaded == snapshot)

for url in (
    "https://www.google.com/search?q=lightning",
    "https://www.youtube.com/watch?v=x",
    "https://en.wikipedia.org/wiki/Lightning",
):
    print(f"{url!r:55} -> {classify_page_type(url)}")
