"""Axis-aligned rectangle geometry used by the layout and aesthetics metrics.

Rectangles are (x, y, w, h) tuples in CSS pixels.
"""

from __future__ import annotations

Rect = tuple[float, float, float, float]


def rect_area(r: Rect) -> float:
    return max(0.0, r[2]) * max(0.0, r[3])


def clip_rect(r: Rect, frame: Rect) -> Rect | None:
    """Intersect ``r`` with ``frame``; None when the overlap is empty."""
    x0 = max(r[0], frame[0])
    y0 = max(r[1], frame[1])
    x1 = min(r[0] + r[2], frame[0] + frame[2])
    y1 = min(r[1] + r[3], frame[1] + frame[3])
    if x1 <= x0 or y1 <= y0:
        return None
    return (x0, y0, x1 - x0, y1 - y0)


def bounding_box(rects: list[Rect]) -> Rect | None:
    if not rects:
        return None
    x0 = min(r[0] for r in rects)
    y0 = min(r[1] for r in rects)
    x1 = max(r[0] + r[2] for r in rects)
    y1 = max(r[1] + r[3] for r in rects)
    return (x0, y0, x1 - x0, y1 - y0)


def union_area(rects: list[Rect]) -> float:
    """Area of the geometric union of rectangles (overlap counted once).

    Coordinate-compression sweep along x; each vertical strip contributes
    strip width times the union length of the y-intervals active in it.
    """
    boxes = [r for r in rects if r[2] > 0 and r[3] > 0]
    if not boxes:
        return 0.0
    xs = sorted({r[0] for r in boxes} | {r[0] + r[2] for r in boxes})
    total = 0.0
    for x0, x1 in zip(xs, xs[1:]):
        width = x1 - x0
        if width <= 0:
            continue
        spans = sorted(
            (r[1], r[1] + r[3]) for r in boxes if r[0] <= x0 and r[0] + r[2] >= x1
        )
        if not spans:
            continue
        covered = 0.0
        cur_lo, cur_hi = spans[0]
        for lo, hi in spans[1:]:
            if lo > cur_hi:
                covered += cur_hi - cur_lo
                cur_lo, cur_hi = lo, hi
            else:
                cur_hi = max(cur_hi, hi)
        covered += cur_hi - cur_lo
        total += width * covered
    return total


def intersection_of_unions(a: list[Rect], b: list[Rect]) -> float:
    """Area of (union of a) intersected with (union of b).

    The intersection of two rectangle unions is the union of all pairwise
    intersections, so one union_area call suffices.
    """
    pieces: list[Rect] = []
    for ra in a:
        for rb in b:
            piece = clip_rect(ra, rb)
            if piece is not None:
                pieces.append(piece)
    return union_area(pieces)
