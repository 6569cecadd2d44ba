from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from viscom.snapshot import (
    KnowledgeTest,
    NavigationEvent,
    PageMeta,
    PageSnapshot,
    RenderGeometry,
    RenderNode,
    Screenshot,
    SessionRecord,
)

FIXTURES = Path(__file__).parent / "fixtures"


def make_node(i, parent, tag, box, visible=True, styles=None, text="", attrs=None):
    return RenderNode(
        id=i,
        parent_id=parent,
        tag=tag,
        box=tuple(float(v) for v in box),
        visible=visible,
        styles=styles or {},
        text=text,
        attrs=attrs or {},
    )


def make_geometry(nodes, width=1280, height=800):
    return RenderGeometry(page_width=width, page_height=height, nodes=tuple(nodes))


def solid_screenshot(width, height, rgb=(255, 255, 255)):
    pixels = np.zeros((height, width, 3), dtype=np.uint8)
    pixels[:, :] = np.asarray(rgb, dtype=np.uint8)
    return Screenshot(pixels=pixels, width=width, height=height)


@pytest.fixture
def single_div_snapshot():
    geometry = make_geometry(
        [
            make_node(0, None, "html", (0, 0, 1280, 800)),
            make_node(1, 0, "body", (0, 0, 1280, 800)),
            make_node(2, 1, "div", (0, 0, 1280, 800)),
        ]
    )
    return PageSnapshot(
        id="single-div",
        html=b"<html><body><div></div></body></html>",
        screenshot=solid_screenshot(1280, 800),
        geometry=geometry,
        meta=PageMeta(url="https://example.org/single", captured_at="2024-05-01T12:00:00+00:00"),
    )


def make_session(user_id="u1", events=(), pre=5, post=8, n_items=10):
    return SessionRecord(
        user_id=user_id,
        events=tuple(events),
        test=KnowledgeTest(pre_correct=pre, post_correct=post, n_items=n_items),
    )


def make_event(ts, url="https://example.org/", page_type="content", snapshot_id=None, query=None):
    return NavigationEvent(
        timestamp=float(ts), url=url, page_type=page_type, snapshot_id=snapshot_id, query=query
    )
