"""Segment a rendered page into visual blocks and read off the layout
features.

The page here is a classic three-band layout with a two-column middle; the
segmenter splits on sectioning tags first, then on the whitespace gap
between the columns.
"""

from viscom.snapshot import RenderGeometry, RenderNode
from viscom.vips import LAYOUT_FEATURE_NAMES, dump_tree, layout_features, segment_vips


def node(i, parent, tag, box, text=""):
    return RenderNode(id=i, parent_id=parent, tag=tag,
                      box=tuple(float(v) for v in box), visible=True, text=text)


geometry = RenderGeometry(
    page_width=1200,
    page_height=1000,
    nodes=(
        node(0, None, "html", (0, 0, 1200, 1000)),
        node(1, 0, "body", (0, 0, 1200, 1000)),
        node(2, 1, "header", (0, 0, 1200, 100)),
        node(3, 2, "#text", (0, 0, 1200, 100), text="site header"),
        node(4, 1, "main", (0, 100, 1200, 800)),
        node(5, 4, "div", (0, 100, 560, 800)),
        node(6, 5, "#text", (0, 100, 560, 800), text="article text"),
        node(7, 4, "div", (640, 100, 560, 800)),
        node(8, 7, "img", (640, 100, 560, 800)),
        node(9, 1, "footer", (0, 900, 1200, 100)),
        node(10, 9, "#text", (0, 900, 1200, 100), text="footer"),
    ),
)

for pdoc in (4, 6, 10):
    tree = segment_vips(geometry, pdoc=pdoc)
    leaves = tree.root.leaves()
    print(f"pdoc={pdoc}: {len(leaves)} leaves, depth {tree.root.depth()}, "
          f"kinds {sorted(l.kind for l in leaves)}")

tree = segment_vips(geometry, pdoc=6)
print("\nblock tree (pdoc=6):")
import json

print(json.dumps(dump_tree(tree), indent=1))

print("\nlayout features:")
for name, value in zip(LAYOUT_FEATURE_NAMES, layout_features(tree, geometry)):
    print(f"{name:28} {value:.4f}")
