"""Snapshot bundle and session-log data model.

A snapshot bundle is a directory holding exactly four files:

    page.html       raw HTML bytes
    screenshot.png  full-page screenshot, RGB, CSS pixels
    geometry.json   render geometry (page size + per-node boxes/styles)
    meta.json       capture metadata

Sessions are stored as ``sessions.jsonl``, one session record per line.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from urllib.parse import urlsplit

import numpy as np
from PIL import Image

from .errors import DimensionMismatch, MissingFile, SchemaViolation

PAGE_TYPES = ("serp", "video", "content")

# Editable rule table for SERP / video-host classification, shipped as
# data/page_types.json; pass a table of the same shape to override.
DEFAULT_PAGE_TYPE_RULES = json.loads(
    resources.files("viscom.data").joinpath("page_types.json").read_text("utf-8")
)


@dataclass(frozen=True)
class RenderNode:
    id: int
    parent_id: int | None
    tag: str
    box: tuple[float, float, float, float]
    visible: bool
    styles: dict[str, str] = field(default_factory=dict)
    text: str = ""
    attrs: dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class RenderGeometry:
    page_width: int
    page_height: int
    nodes: tuple[RenderNode, ...]

    def node_by_id(self) -> dict[int, RenderNode]:
        return {n.id: n for n in self.nodes}

    def children_map(self) -> dict[int | None, list[RenderNode]]:
        kids: dict[int | None, list[RenderNode]] = {}
        for n in self.nodes:
            kids.setdefault(n.parent_id, []).append(n)
        return kids

    def root(self) -> RenderNode:
        roots = [n for n in self.nodes if n.parent_id is None]
        if len(roots) != 1:
            raise SchemaViolation(f"geometry.nodes: expected one root, found {len(roots)}")
        return roots[0]


@dataclass(frozen=True)
class PageMeta:
    url: str
    captured_at: str
    page_type_hint: str | None = None


@dataclass(frozen=True)
class Screenshot:
    """RGB raster, row-major, dimensions in CSS pixels."""

    pixels: np.ndarray  # uint8, shape (height, width, 3)
    width: int
    height: int

    def __post_init__(self):
        if self.pixels.shape != (self.height, self.width, 3):
            raise SchemaViolation(
                f"screenshot.pixels: shape {self.pixels.shape} does not match "
                f"{self.height}x{self.width}x3"
            )

    def __eq__(self, other):
        if not isinstance(other, Screenshot):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and np.array_equal(self.pixels, other.pixels)
        )


@dataclass(frozen=True, eq=False)
class PageSnapshot:
    id: str
    html: bytes
    screenshot: Screenshot
    geometry: RenderGeometry
    meta: PageMeta

    def __eq__(self, other):
        if not isinstance(other, PageSnapshot):
            return NotImplemented
        return (
            self.id == other.id
            and self.html == other.html
            and self.screenshot == other.screenshot
            and self.geometry == other.geometry
            and self.meta == other.meta
        )


@dataclass(frozen=True)
class NavigationEvent:
    timestamp: float
    url: str
    page_type: str
    snapshot_id: str | None = None
    query: str | None = None


@dataclass(frozen=True)
class KnowledgeTest:
    pre_correct: int
    post_correct: int
    n_items: int


@dataclass(frozen=True)
class SessionRecord:
    user_id: str
    events: tuple[NavigationEvent, ...]
    test: KnowledgeTest


def validate_geometry(g: RenderGeometry) -> list[str]:
    """Check all geometry invariants; returns [] when the geometry is valid.

    Violations are returned (never raised) and name the offending node and
    rule, e.g. "dangling parent: node 7".
    """
    violations: list[str] = []
    if g.page_width <= 0:
        violations.append("page width must be positive")
    if g.page_height <= 0:
        violations.append("page height must be positive")

    ids = [n.id for n in g.nodes]
    seen: set[int] = set()
    for i in ids:
        if i in seen:
            violations.append(f"duplicate id: node {i}")
        seen.add(i)

    roots = [n for n in g.nodes if n.parent_id is None]
    if len(roots) == 0:
        violations.append("no root")
    elif len(roots) > 1:
        violations.append("multiple roots")

    by_id = {n.id: n for n in g.nodes}
    for n in g.nodes:
        if n.parent_id is not None and n.parent_id not in by_id:
            violations.append(f"dangling parent: node {n.id}")
        if n.box[2] < 0 or n.box[3] < 0:
            violations.append(f"negative size: node {n.id}")

    # Cycle check: follow parent links; a valid tree reaches the root from
    # every node without revisiting.
    for n in g.nodes:
        slow = n
        hops = 0
        visited = {n.id}
        while slow.parent_id is not None and slow.parent_id in by_id:
            slow = by_id[slow.parent_id]
            hops += 1
            if slow.id in visited or hops > len(g.nodes):
                violations.append(f"cycle involving node {n.id}")
                break
            visited.add(slow.id)

    children = g.children_map()
    for n in g.nodes:
        if n.tag == "#text" and children.get(n.id):
            violations.append(f"#text node with children: node {n.id}")
    return violations


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise SchemaViolation(f"{where}.{key}: required")
    return obj[key]


def _parse_geometry(payload: dict) -> RenderGeometry:
    page = _require(payload, "page", "geometry")
    width = _require(page, "width", "geometry.page")
    height = _require(page, "height", "geometry.page")
    if not isinstance(width, int) or not isinstance(height, int):
        raise SchemaViolation("geometry.page.width/height: must be integers")
    raw_nodes = _require(payload, "nodes", "geometry")
    nodes = []
    for raw in raw_nodes:
        box = _require(raw, "box", "geometry.node")
        if not (isinstance(box, list) and len(box) == 4):
            raise SchemaViolation(f"geometry.node {raw.get('id')}.box: must be [x, y, w, h]")
        nodes.append(
            RenderNode(
                id=int(_require(raw, "id", "geometry.node")),
                parent_id=raw.get("parent"),
                tag=str(_require(raw, "tag", "geometry.node")).lower(),
                box=tuple(float(v) for v in box),
                visible=bool(_require(raw, "visible", "geometry.node")),
                styles={str(k): str(v) for k, v in raw.get("styles", {}).items()},
                text=str(raw.get("text", "")),
                attrs={str(k): str(v) for k, v in raw.get("attrs", {}).items()},
            )
        )
    return RenderGeometry(page_width=width, page_height=height, nodes=tuple(nodes))


def _parse_meta(payload: dict) -> PageMeta:
    url = _require(payload, "url", "meta")
    if not isinstance(url, str) or not url:
        raise SchemaViolation("meta.url: non-empty string required")
    hint = payload.get("page_type_hint")
    if hint is not None and hint not in PAGE_TYPES:
        raise SchemaViolation(f"meta.page_type_hint: must be one of {PAGE_TYPES}")
    return PageMeta(url=url, captured_at=str(_require(payload, "captured_at", "meta")), page_type_hint=hint)


def load_snapshot(bundle_dir: str | Path) -> PageSnapshot:
    """Load and fully validate one snapshot bundle directory."""
    bundle = Path(bundle_dir)
    for name in ("page.html", "screenshot.png", "geometry.json", "meta.json"):
        if not (bundle / name).is_file():
            raise MissingFile(name)

    html = (bundle / "page.html").read_bytes()
    if not html:
        raise SchemaViolation("page.html: html must be non-empty")

    try:
        geometry = _parse_geometry(json.loads((bundle / "geometry.json").read_text("utf-8")))
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"geometry.json: invalid JSON ({exc})") from exc
    violations = validate_geometry(geometry)
    if violations:
        raise SchemaViolation("geometry.json: " + "; ".join(violations))

    try:
        meta = _parse_meta(json.loads((bundle / "meta.json").read_text("utf-8")))
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"meta.json: invalid JSON ({exc})") from exc

    with Image.open(bundle / "screenshot.png") as img:
        rgb = img.convert("RGB")
        pixels = np.asarray(rgb, dtype=np.uint8)
    height, width = pixels.shape[0], pixels.shape[1]
    if width != geometry.page_width or height != geometry.page_height:
        raise DimensionMismatch(
            f"screenshot is {width}x{height} but geometry says "
            f"{geometry.page_width}x{geometry.page_height}"
        )

    return PageSnapshot(
        id=bundle.name,
        html=html,
        screenshot=Screenshot(pixels=pixels, width=width, height=height),
        geometry=geometry,
        meta=meta,
    )


def write_snapshot(snapshot: PageSnapshot, bundle_dir: str | Path) -> Path:
    """Write a snapshot back to the bundle layout; inverse of load_snapshot."""
    bundle = Path(bundle_dir)
    bundle.mkdir(parents=True, exist_ok=True)
    (bundle / "page.html").write_bytes(snapshot.html)

    img = Image.fromarray(snapshot.screenshot.pixels, mode="RGB")
    buf = io.BytesIO()
    img.save(buf, format="PNG", optimize=False, compress_level=6)
    (bundle / "screenshot.png").write_bytes(buf.getvalue())

    nodes = []
    for n in snapshot.geometry.nodes:
        raw: dict = {
            "id": n.id,
            "parent": n.parent_id,
            "tag": n.tag,
            "box": list(n.box),
            "visible": n.visible,
            "styles": n.styles,
            "attrs": n.attrs,
        }
        if n.text:
            raw["text"] = n.text
        nodes.append(raw)
    geometry = {
        "page": {"width": snapshot.geometry.page_width, "height": snapshot.geometry.page_height},
        "nodes": nodes,
    }
    (bundle / "geometry.json").write_text(json.dumps(geometry, indent=1), "utf-8")

    meta: dict = {"url": snapshot.meta.url, "captured_at": snapshot.meta.captured_at}
    if snapshot.meta.page_type_hint is not None:
        meta["page_type_hint"] = snapshot.meta.page_type_hint
    (bundle / "meta.json").write_text(json.dumps(meta, indent=1), "utf-8")
    return bundle


def _host_matches(host: str, pattern: str) -> bool:
    return host == pattern or host.endswith("." + pattern)


def classify_page_type(url: str, hint: str | None = None, rules: dict | None = None) -> str:
    """Classify a visited URL as serp, video, or content.

    An explicit hint always wins; otherwise the shipped host/path rule table
    applies and anything unmatched is a content page.
    """
    if hint is not None:
        if hint not in PAGE_TYPES:
            raise SchemaViolation(f"page_type_hint: must be one of {PAGE_TYPES}")
        return hint
    table = rules if rules is not None else DEFAULT_PAGE_TYPE_RULES
    parts = urlsplit(url)
    host = (parts.hostname or "").lower()
    path = parts.path or "/"
    for rule in table.get("serp", []):
        if _host_matches(host, rule["host"]) and path.startswith(rule.get("path_prefix", "/")):
            return "serp"
    for pattern in table.get("video_hosts", []):
        if _host_matches(host, pattern):
            return "video"
    return "content"


def load_page_type_rules(path: str | Path) -> dict:
    return json.loads(Path(path).read_text("utf-8"))


def _parse_session(payload: dict) -> SessionRecord:
    user_id = str(_require(payload, "user_id", "session"))
    raw_test = _require(payload, "test", "session")
    test = KnowledgeTest(
        pre_correct=int(_require(raw_test, "pre_correct", "session.test")),
        post_correct=int(_require(raw_test, "post_correct", "session.test")),
        n_items=int(_require(raw_test, "n_items", "session.test")),
    )
    if test.n_items <= 0:
        raise SchemaViolation("session.test.n_items: must be positive")
    for name, value in (("pre_correct", test.pre_correct), ("post_correct", test.post_correct)):
        if not 0 <= value <= test.n_items:
            raise SchemaViolation(f"session.test.{name}: must be within [0, n_items]")

    events = []
    last_ts = -1.0
    for raw in _require(payload, "events", "session"):
        ev = NavigationEvent(
            timestamp=float(_require(raw, "timestamp", "session.event")),
            url=str(_require(raw, "url", "session.event")),
            page_type=str(_require(raw, "page_type", "session.event")),
            snapshot_id=raw.get("snapshot_id"),
            query=raw.get("query"),
        )
        if ev.page_type not in PAGE_TYPES:
            raise SchemaViolation(f"session.event.page_type: must be one of {PAGE_TYPES}")
        if ev.timestamp < 0:
            raise SchemaViolation("session.event.timestamp: must be >= 0")
        if ev.timestamp < last_ts:
            raise SchemaViolation("session.events: timestamps must be non-decreasing")
        if ev.query is not None and ev.page_type != "serp":
            raise SchemaViolation("session.event.query: queries may only occur on serp events")
        last_ts = ev.timestamp
        events.append(ev)
    return SessionRecord(user_id=user_id, events=tuple(events), test=test)


def load_sessions(path: str | Path) -> list[SessionRecord]:
    """Read sessions.jsonl (one session record per line)."""
    sessions = []
    for i, line in enumerate(Path(path).read_text("utf-8").splitlines()):
        if not line.strip():
            continue
        try:
            sessions.append(_parse_session(json.loads(line)))
        except json.JSONDecodeError as exc:
            raise SchemaViolation(f"sessions line {i + 1}: invalid JSON ({exc})") from exc
    return sessions


def write_sessions(sessions: list[SessionRecord], path: str | Path) -> Path:
    out = Path(path)
    lines = []
    for s in sessions:
        events = []
        for ev in s.events:
            raw: dict = {"timestamp": ev.timestamp, "url": ev.url, "page_type": ev.page_type}
            if ev.snapshot_id is not None:
                raw["snapshot_id"] = ev.snapshot_id
            if ev.query is not None:
                raw["query"] = ev.query
            events.append(raw)
        lines.append(
            json.dumps(
                {
                    "user_id": s.user_id,
                    "events": events,
                    "test": {
                        "pre_correct": s.test.pre_correct,
                        "post_correct": s.test.post_correct,
                        "n_items": s.test.n_items,
                    },
                }
            )
        )
    out.write_text("\n".join(lines) + ("\n" if lines else ""), "utf-8")
    return out
