"""Gestalt layout aesthetics: 14 measures over 5 object classes (70 features).

Objects are the positive-area leaves of a VIPS tree. Every measure maps an
object set to [0, 1] and is invariant under uniform scaling of boxes and
page. Alignment and spacing quantization therefore uses a page-relative
quantum (page_width / 320, i.e. 4 px on a 1280 px page) rather than an
absolute pixel count.

Degenerate contracts: an empty object set scores 0 on every measure; for a
single object the pair-based quantities (spacing regularity, rhythm)
default to 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import UnknownMeasure, WrongArity
from .rects import Rect, bounding_box, intersection_of_unions, union_area
from .snapshot import RenderGeometry
from .vips import VipsTree

MEASURE_NAMES = (
    "balance",
    "equilibrium",
    "symmetry",
    "sequence",
    "cohesion",
    "unity",
    "proportion",
    "simplicity",
    "density",
    "regularity",
    "economy",
    "homogeneity",
    "rhythm",
)

OBJECT_CLASSES = ("all", "text", "image", "form", "other")

AESTHETICS_FEATURE_NAMES: tuple[str, ...] = tuple(
    f"{cls}.{name}"
    for cls in OBJECT_CLASSES
    for name in MEASURE_NAMES + ("order_and_complexity",)
)

assert len(AESTHETICS_FEATURE_NAMES) == 70

# Preferred aspect proportions: square, 1/sqrt(2), golden, 1/sqrt(3), double.
PREFERRED_RATIOS = (1.0, 1 / 1.414, 1 / 1.618, 1 / 1.732, 0.5)


@dataclass(frozen=True)
class LayoutObject:
    box: Rect
    kind: str

    @property
    def area(self) -> float:
        return self.box[2] * self.box[3]

    @property
    def center(self) -> tuple[float, float]:
        return (self.box[0] + self.box[2] / 2.0, self.box[1] + self.box[3] / 2.0)


@dataclass(frozen=True)
class ObjectSet:
    objects: tuple[LayoutObject, ...]
    page_width: float
    page_height: float

    def filtered(self, kind: str) -> "ObjectSet":
        return ObjectSet(
            objects=tuple(o for o in self.objects if o.kind == kind),
            page_width=self.page_width,
            page_height=self.page_height,
        )


def derive_objects(t: VipsTree, g: RenderGeometry) -> ObjectSet:
    """One layout object per positive-area VIPS leaf, class from leaf kind."""
    objs = tuple(
        LayoutObject(box=leaf.box, kind=leaf.kind)
        for leaf in t.root.leaves()
        if leaf.box[2] > 0 and leaf.box[3] > 0
    )
    return ObjectSet(objects=objs, page_width=float(g.page_width), page_height=float(g.page_height))


def _quantum(o: ObjectSet) -> float:
    return o.page_width / 320.0


def _qindex(value: float, quantum: float) -> int:
    return math.floor(value / quantum + 1e-9)


def _quadrant(o: ObjectSet, obj: LayoutObject) -> int:
    """0=UL, 1=UR, 2=LL, 3=LR; centers on a midline go right/down."""
    cx, cy = obj.center
    col = 0 if cx < o.page_width / 2.0 else 1
    row = 0 if cy < o.page_height / 2.0 else 1
    return row * 2 + col


def _balance(o: ObjectSet) -> float:
    w, h = o.page_width, o.page_height
    left = right = top = bottom = 0.0
    for ob in o.objects:
        cx, cy = ob.center
        dx = abs(cx - w / 2.0)
        dy = abs(cy - h / 2.0)
        if cx < w / 2.0:
            left += ob.area * dx
        else:
            right += ob.area * dx
        if cy < h / 2.0:
            top += ob.area * dy
        else:
            bottom += ob.area * dy
    bm_lr = 0.0 if max(left, right) == 0 else (left - right) / max(left, right)
    bm_tb = 0.0 if max(top, bottom) == 0 else (top - bottom) / max(top, bottom)
    return 1.0 - (abs(bm_lr) + abs(bm_tb)) / 2.0


def _equilibrium(o: ObjectSet) -> float:
    w, h = o.page_width, o.page_height
    total = sum(ob.area for ob in o.objects)
    if total == 0:
        return 0.0
    mx = sum(ob.area * (ob.center[0] - w / 2.0) for ob in o.objects)
    my = sum(ob.area * (ob.center[1] - h / 2.0) for ob in o.objects)
    ex = abs(mx) / (total * w / 2.0)
    ey = abs(my) / (total * h / 2.0)
    return max(0.0, 1.0 - (ex + ey) / 2.0)


def _symmetry(o: ObjectSet) -> float:
    w, h = o.page_width, o.page_height
    orig = [ob.box for ob in o.objects]
    base = union_area(orig)
    if base <= 0:
        return 0.0
    vertical = [(w - x - bw, y, bw, bh) for (x, y, bw, bh) in orig]
    horizontal = [(x, h - y - bh, bw, bh) for (x, y, bw, bh) in orig]
    diagonal = [(w - x - bw, h - y - bh, bw, bh) for (x, y, bw, bh) in orig]
    scores = [intersection_of_unions(orig, refl) / base for refl in (vertical, horizontal, diagonal)]
    return float(np.mean(scores))


def _sequence(o: ObjectSet) -> float:
    weights = [0.0, 0.0, 0.0, 0.0]
    for ob in o.objects:
        weights[_quadrant(o, ob)] += ob.area
    # Heaviest quadrant ranks first; ties keep reading order (UL<UR<LL<LR).
    order = sorted(range(4), key=lambda q: (-weights[q], q))
    rank = [0] * 4
    for pos, q in enumerate(order):
        rank[q] = pos + 1
    deviation = sum(abs(rank[q] - (q + 1)) for q in range(4))
    return 1.0 - deviation / 8.0


def _cohesion(o: ObjectSet) -> float:
    page_ar = o.page_height / o.page_width
    ratios = []
    for ob in o.objects:
        ar = ob.box[3] / ob.box[2]
        ratios.append(min(ar, page_ar) / max(ar, page_ar))
    return float(np.mean(ratios))


def _size_buckets(o: ObjectSet) -> int:
    amax = max(ob.area for ob in o.objects)
    buckets = {math.floor(10.0 * ob.area / amax - 1e-9) if ob.area < amax else 9 for ob in o.objects}
    return len(buckets)


def _unity(o: ObjectSet) -> float:
    n = len(o.objects)
    k = _size_buckets(o)
    u_form = 1.0 - (k - 1) / n
    bbox = bounding_box([ob.box for ob in o.objects])
    bbox_area = bbox[2] * bbox[3]
    u_space = min(1.0, sum(ob.area for ob in o.objects) / bbox_area) if bbox_area > 0 else 1.0
    return (u_form + u_space) / 2.0


def _proportion(o: ObjectSet) -> float:
    scores = []
    for ob in o.objects:
        ar = ob.box[3] / ob.box[2]
        norm = ar if ar <= 1.0 else 1.0 / ar
        best = min(abs(norm - p) for p in PREFERRED_RATIOS)
        scores.append(min(1.0, max(0.0, 1.0 - best / 0.5)))
    return float(np.mean(scores))


def _alignment_counts(o: ObjectSet) -> tuple[int, int]:
    q = _quantum(o)
    n_vap = len({_qindex(ob.box[0], q) for ob in o.objects})
    n_hap = len({_qindex(ob.box[1], q) for ob in o.objects})
    return n_vap, n_hap


def _simplicity(o: ObjectSet) -> float:
    n_vap, n_hap = _alignment_counts(o)
    return min(1.0, 3.0 / (n_vap + n_hap + len(o.objects)))


def _density(o: ObjectSet) -> float:
    page = (0.0, 0.0, o.page_width, o.page_height)
    covered = intersection_of_unions([ob.box for ob in o.objects], [page])
    a = covered / (o.page_width * o.page_height)
    return 1.0 - abs(2.0 * a - 1.0)


def _regularity(o: ObjectSet) -> float:
    n = len(o.objects)
    n_vap, n_hap = _alignment_counts(o)
    r_align = 1.0 - (n_vap + n_hap) / (2.0 * n)
    if n <= 1:
        r_space = 1.0
    else:
        q = _quantum(o)
        gaps = set()
        for axis in (0, 1):
            edges = sorted(ob.box[axis] for ob in o.objects)
            for a, b in zip(edges, edges[1:]):
                gaps.add(_qindex(b - a, q))
        r_space = 1.0 - (len(gaps) - 1) / (n - 1)
    return min(1.0, max(0.0, (r_align + r_space) / 2.0))


def _economy(o: ObjectSet) -> float:
    return 1.0 / _size_buckets(o)


def _homogeneity(o: ObjectSet) -> float:
    counts = [0, 0, 0, 0]
    for ob in o.objects:
        counts[_quadrant(o, ob)] += 1
    n = sum(counts)
    entropy = -sum((c / n) * math.log(c / n) for c in counts if c > 0)
    return entropy / math.log(4.0)


def _rhythm(o: ObjectSet) -> float:
    if len(o.objects) <= 1:
        return 1.0
    w, h = o.page_width, o.page_height
    areas = [0.0, 0.0, 0.0, 0.0]
    dists: list[list[float]] = [[], [], [], []]
    for ob in o.objects:
        q = _quadrant(o, ob)
        areas[q] += ob.area
        cx, cy = ob.center
        dists[q].append(math.hypot(cx - w / 2.0, cy - h / 2.0))
    mean_dists = [float(np.mean(d)) if d else 0.0 for d in dists]

    def cv(series: list[float]) -> float:
        arr = np.asarray(series, dtype=float)
        m = arr.mean()
        return float(arr.std() / m) if m > 0 else 0.0

    return 1.0 - min(1.0, (cv(areas) + cv(mean_dists)) / 2.0)


_MEASURES = {
    1: _balance,
    2: _equilibrium,
    3: _symmetry,
    4: _sequence,
    5: _cohesion,
    6: _unity,
    7: _proportion,
    8: _simplicity,
    9: _density,
    10: _regularity,
    11: _economy,
    12: _homogeneity,
    13: _rhythm,
}


def aesthetic_measure(m: int, o: ObjectSet) -> float:
    """Evaluate measure m (1..13) on an object set; always within [0, 1]."""
    if m not in _MEASURES:
        raise UnknownMeasure(f"measure id must be 1..13, got {m}")
    if not o.objects:
        return 0.0
    return float(_MEASURES[m](o))


def order_and_complexity(values) -> float:
    """Arithmetic mean of the 13 measure values (measure 14)."""
    vals = list(values)
    if len(vals) != 13:
        raise WrongArity(f"expected 13 measure values, got {len(vals)}")
    return float(np.mean(vals))


def measure_vector(o: ObjectSet) -> np.ndarray:
    """All 14 measures for one object set (13 measures + their mean)."""
    if not o.objects:
        return np.zeros(14, dtype=float)
    vals = [aesthetic_measure(m, o) for m in range(1, 14)]
    return np.asarray(vals + [order_and_complexity(vals)], dtype=float)


def aesthetics_features(t: VipsTree, g: RenderGeometry) -> np.ndarray:
    """The 70 aesthetics features: 14 measures for each of the 5 classes."""
    base = derive_objects(t, g)
    parts = [measure_vector(base)]
    for kind in OBJECT_CLASSES[1:]:
        parts.append(measure_vector(base.filtered(kind)))
    out = np.concatenate(parts)
    assert out.shape == (70,)
    return out
