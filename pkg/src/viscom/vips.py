"""Vision-based page segmentation over render geometry, plus layout features.

The segmenter walks the rendered node tree and recursively extracts visual
blocks. Every block carries a degree of coherence (doc, 1..10): blocks
whose doc reaches the permitted degree of coherence (pdoc) are not divided
further. When a composite block is divided, the rule that separated its
children determines the doc the children inherit:

    sectioning tag or <hr> separator   -> 4
    default block composition          -> 5
    background-color change            -> 6
    whitespace gap >= gap threshold    -> 7
    indivisible content                -> 10 (always a leaf)

The page root starts at doc 1 so segmentation always attempts at least one
division. Thresholds and the rule table are fixed, documented values; the
original separator-weighting heuristics are approximated, not reproduced.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .rects import Rect, bounding_box, clip_rect, union_area
from .snapshot import RenderGeometry, RenderNode

DEFAULT_PDOC = 6
GAP_THRESHOLD = 10.0

DOC_SECTIONING = 4
DOC_DEFAULT = 5
DOC_BACKGROUND = 6
DOC_GAP = 7
DOC_LEAF = 10
ROOT_DOC = 1

SECTIONING_TAGS = {"header", "nav", "main", "article", "section", "aside", "footer"}
IMAGE_TAGS = {"img", "svg", "canvas", "picture"}
MEDIA_LEAF_TAGS = IMAGE_TAGS | {"video"}
FORM_CONTROL_TAGS = {"input", "button", "select", "textarea"}
INLINE_TAGS = {
    "#text", "a", "abbr", "b", "bdi", "bdo", "br", "cite", "code", "data",
    "dfn", "em", "i", "kbd", "label", "mark", "q", "rp", "rt", "ruby", "s",
    "samp", "small", "span", "strong", "sub", "sup", "time", "u", "var", "wbr",
}

_TRANSPARENT = {"", "transparent", "none", "inherit", "initial", "rgba(0,0,0,0)", "rgba(0, 0, 0, 0)"}

LEAF_KINDS = ("text", "image", "form", "other")


@dataclass
class VipsBlock:
    box: Rect
    doc: int
    kind: str
    children: list["VipsBlock"] = field(default_factory=list)
    source_nodes: frozenset[int] = frozenset()

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def iter_blocks(self):
        yield self
        for child in self.children:
            yield from child.iter_blocks()

    def leaves(self) -> list["VipsBlock"]:
        return [b for b in self.iter_blocks() if b.is_leaf]

    def depth(self) -> int:
        if not self.children:
            return 1
        return 1 + max(c.depth() for c in self.children)


@dataclass(frozen=True)
class VipsTree:
    root: VipsBlock
    pdoc: int


class _Segmenter:
    def __init__(self, g: RenderGeometry, pdoc: int, gap_threshold: float):
        self.pdoc = pdoc
        self.gap = gap_threshold
        self.page: Rect = (0.0, 0.0, float(g.page_width), float(g.page_height))
        self.children = g.children_map()

    def kids_of(self, node: RenderNode) -> list[RenderNode]:
        return self.children.get(node.id, [])

    def clipped(self, node: RenderNode) -> Rect | None:
        if not node.visible or node.box[2] <= 0 or node.box[3] <= 0:
            return None
        return clip_rect(node.box, self.page)

    def subtree_ids(self, node: RenderNode) -> frozenset[int]:
        ids = {node.id}
        for child in self.kids_of(node):
            if self.clipped(child) is not None:
                ids |= self.subtree_ids(child)
        return frozenset(ids)

    def content_kind(self, node: RenderNode) -> str:
        """Leaf kind by subtree content; text beats image beats form."""
        has_image = has_form = False
        stack = [node]
        while stack:
            cur = stack.pop()
            if self.clipped(cur) is None:
                continue
            if cur.tag == "#text" and cur.text.strip():
                return "text"
            if cur.tag in IMAGE_TAGS:
                has_image = True
            elif cur.tag in FORM_CONTROL_TAGS:
                has_form = True
            stack.extend(self.kids_of(cur))
        if has_image:
            return "image"
        if has_form:
            return "form"
        return "other"

    def build(self, node: RenderNode, split_doc: int) -> VipsBlock | None:
        box = self.clipped(node)
        if box is None:
            return None

        def leaf(doc: int, kind: str) -> VipsBlock:
            return VipsBlock(box=box, doc=doc, kind=kind, source_nodes=self.subtree_ids(node))

        if node.tag == "#text":
            return leaf(DOC_LEAF, "text")
        if node.tag in MEDIA_LEAF_TAGS:
            return leaf(DOC_LEAF, "image" if node.tag in IMAGE_TAGS else "other")
        if node.tag in FORM_CONTROL_TAGS:
            return leaf(DOC_LEAF, "form")
        if split_doc >= self.pdoc:
            return leaf(split_doc, self.content_kind(node))

        kids = [k for k in self.kids_of(node) if self.clipped(k) is not None]
        separators = [k for k in kids if k.tag == "hr"]
        kids = [k for k in kids if k.tag != "hr"]
        if not kids:
            return leaf(DOC_LEAF, self.content_kind(node))
        if all(k.tag in INLINE_TAGS for k in kids):
            return leaf(DOC_LEAF, self.content_kind(node))

        if separators or any(k.tag in SECTIONING_TAGS for k in kids):
            child_doc = DOC_SECTIONING
        elif self._background_change(kids):
            child_doc = DOC_BACKGROUND
        elif self._gap_split(kids):
            child_doc = DOC_GAP
        else:
            child_doc = DOC_DEFAULT

        blocks = []
        for kid in kids:
            block = self.build(kid, child_doc)
            if block is not None:
                blocks.append(block)
        if not blocks:
            return leaf(DOC_LEAF, self.content_kind(node))
        if len(blocks) == 1:
            return blocks[0]

        enclosing = bounding_box([box] + [b.box for b in blocks])
        sources = frozenset({node.id}).union(*(b.source_nodes for b in blocks))
        return VipsBlock(box=enclosing, doc=split_doc, kind="composite",
                         children=blocks, source_nodes=sources)

    def _background_change(self, kids: list[RenderNode]) -> bool:
        colors = set()
        for kid in kids:
            raw = kid.styles.get("background-color", "").strip().lower()
            colors.add(None if raw in _TRANSPARENT else raw)
        return len(colors) >= 2

    def _gap_split(self, kids: list[RenderNode]) -> bool:
        boxes = [self.clipped(k) for k in kids]
        for axis in (0, 1):
            spans = sorted((b[axis], b[axis] + b[axis + 2]) for b in boxes)
            cur_hi = spans[0][1]
            for lo, hi in spans[1:]:
                if lo - cur_hi >= self.gap:
                    return True
                cur_hi = max(cur_hi, hi)
        return False


def segment_vips(g: RenderGeometry, pdoc: int = DEFAULT_PDOC,
                 gap_threshold: float = GAP_THRESHOLD) -> VipsTree:
    """Segment a rendered page into a tree of visual blocks.

    A page with no visible nodes yields the degenerate tree: a single leaf
    covering the page box with kind "other".
    """
    if not 1 <= pdoc <= 10:
        raise ValueError(f"pdoc must be within 1..10, got {pdoc}")
    seg = _Segmenter(g, pdoc, gap_threshold)
    root_block = seg.build(g.root(), ROOT_DOC)
    if root_block is None:
        root_block = VipsBlock(box=seg.page, doc=DOC_LEAF, kind="other")
    return VipsTree(root=root_block, pdoc=pdoc)


LAYOUT_FEATURE_NAMES = (
    "n_vips_non_leaf_nodes",
    "n_vips_leaf_nodes",
    "text_area_to_whole_page",
    "n_texts_to_whole_page",
    "n_vips_layers",
)


def layout_features(t: VipsTree, g: RenderGeometry) -> np.ndarray:
    """Five layout features of a segmented page.

    Text area uses the geometric union of text-leaf boxes so overlaps never
    push the ratio above 1; text-leaf density is counted per 10^6 px^2 of
    page area to stay comparable across page heights.
    """
    blocks = list(t.root.iter_blocks())
    leaves = [b for b in blocks if b.is_leaf]
    n_leaf = len(leaves)
    n_nonleaf = len(blocks) - n_leaf
    page_area = float(g.page_width) * float(g.page_height)
    text_boxes = [b.box for b in leaves if b.kind == "text"]
    text_area = union_area(text_boxes) / page_area if page_area > 0 else 0.0
    n_texts = len(text_boxes) / (page_area / 1e6) if page_area > 0 else 0.0
    return np.asarray(
        [float(n_nonleaf), float(n_leaf), text_area, n_texts, float(t.root.depth())],
        dtype=float,
    )


def dump_tree(t: VipsTree) -> dict:
    """JSON-friendly dump of a VIPS tree for fixture diffing."""

    def node(b: VipsBlock) -> dict:
        out = {"box": list(b.box), "doc": b.doc, "kind": b.kind}
        if b.children:
            out["children"] = [node(c) for c in b.children]
        return out

    return {"pdoc": t.pdoc, "root": node(t.root)}
