"""Error-tolerant HTML parsing and the 31 HTML statistical features.

The parser is a reduced HTML5 tree builder on top of the stdlib tokenizer:
tag names are case-folded, void elements never nest, p/li/tr/td/th/dt/dd
auto-close per the HTML5 rules, and unknown tags are kept as generic
elements. Full tree-construction conformance is out of scope.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from html.parser import HTMLParser

import numpy as np

from .errors import EmptyDocument

VOID_TAGS = {
    "area", "base", "br", "col", "embed", "hr", "img", "input", "link",
    "meta", "param", "source", "track", "wbr",
}

# Start tags that implicitly close an open <p>.
P_CLOSERS = {
    "address", "article", "aside", "blockquote", "details", "div", "dl",
    "fieldset", "figcaption", "figure", "footer", "form", "h1", "h2", "h3",
    "h4", "h5", "h6", "header", "hr", "main", "nav", "ol", "p", "pre",
    "section", "table", "ul",
}

# tag being opened -> open tags it implicitly closes
SIBLING_CLOSERS = {
    "li": {"li"},
    "tr": {"tr", "td", "th"},
    "td": {"td", "th"},
    "th": {"td", "th"},
    "dt": {"dt", "dd"},
    "dd": {"dt", "dd"},
    "option": {"option"},
}

RAW_TEXT_TAGS = {"script", "style"}

_WS = re.compile(r"\s+")


@dataclass
class DomNode:
    tag: str
    children: list["DomNode"] = field(default_factory=list)
    text: str = ""
    attrs: dict[str, str] = field(default_factory=dict)

    def is_text(self) -> bool:
        return self.tag == "#text"

    def iter_subtree(self):
        yield self
        for child in self.children:
            yield from child.iter_subtree()

    def find(self, tag: str) -> "DomNode | None":
        for node in self.iter_subtree():
            if node.tag == tag:
                return node
        return None


class _TreeBuilder(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.root = DomNode("html")
        self.head = DomNode("head")
        self.body = DomNode("body")
        self.root.children = [self.head, self.body]
        self.stack: list[DomNode] = [self.body]
        self._saw_explicit_head = False

    def _open_tags(self):
        return [n.tag for n in self.stack]

    def handle_starttag(self, tag, attrs):
        tag = tag.lower()
        if tag == "html":
            self.root.attrs.update({k: v or "" for k, v in attrs})
            return
        if tag == "head":
            self._saw_explicit_head = True
            self.stack = [self.head]
            return
        if tag == "body":
            self.body.attrs.update({k: v or "" for k, v in attrs})
            self.stack = [self.body]
            return

        if tag in P_CLOSERS:
            self._close_up_to("p")
        for closee in SIBLING_CLOSERS.get(tag, ()):
            self._close_up_to(closee)

        node = DomNode(tag, attrs={k: v or "" for k, v in attrs})
        self.stack[-1].children.append(node)
        if tag not in VOID_TAGS:
            self.stack.append(node)

    def handle_startendtag(self, tag, attrs):
        tag = tag.lower()
        if tag in ("html", "head", "body"):
            return
        node = DomNode(tag, attrs={k: v or "" for k, v in attrs})
        self.stack[-1].children.append(node)

    def _close_up_to(self, tag: str):
        # Close an open `tag` if present in the current stack (above the
        # head/body anchor), popping everything inside it.
        for i in range(len(self.stack) - 1, 0, -1):
            if self.stack[i].tag == tag:
                del self.stack[i:]
                return

    def handle_endtag(self, tag):
        tag = tag.lower()
        if tag == "head":
            self.stack = [self.body]
            return
        if tag in ("html", "body"):
            self.stack = [self.body]
            return
        self._close_up_to(tag)

    def handle_data(self, data):
        parent = self.stack[-1]
        if parent.tag in RAW_TEXT_TAGS:
            return
        text = _WS.sub(" ", data).strip()
        if not text:
            return
        if parent.children and parent.children[-1].is_text():
            parent.children[-1].text += " " + text
        else:
            parent.children.append(DomNode("#text", text=text))


def parse_dom(html: bytes | str) -> DomNode:
    """Parse HTML bytes into a DomNode tree rooted at <html>.

    Whitespace-only text is dropped and runs of whitespace collapse to a
    single space, so the tree is stable under reformatting of the source.
    """
    if isinstance(html, bytes):
        if len(html) == 0:
            raise EmptyDocument("zero-length HTML input")
        text = html.decode("utf-8", errors="replace")
    else:
        if len(html) == 0:
            raise EmptyDocument("zero-length HTML input")
        text = html
    builder = _TreeBuilder()
    builder.feed(text)
    builder.close()
    return builder.root


@dataclass(frozen=True)
class TagGroupSpec:
    group_name: str
    member_tags: frozenset[str]
    stats: tuple[str, ...]


DEFAULT_TAG_GROUPS = (
    TagGroupSpec("headings", frozenset({"h1", "h2", "h3", "h4", "h5", "h6"}),
                 ("count", "min", "max", "avg", "std")),
    TagGroupSpec("paragraphs", frozenset({"p"}), ("count",)),
    TagGroupSpec("lists", frozenset({"ul", "ol", "li"}),
                 ("count", "min", "max", "avg", "std")),
    TagGroupSpec("tables", frozenset({"table", "tr", "td", "th"}),
                 ("count", "min", "max", "avg", "std")),
    TagGroupSpec("images", frozenset({"img", "picture", "svg"}), ("count",)),
    TagGroupSpec("media", frozenset({"video", "audio", "iframe", "embed"}), ("count",)),
    TagGroupSpec("links", frozenset({"a"}), ("count", "min", "max", "avg", "std")),
    TagGroupSpec("forms", frozenset({"form", "input", "button", "select", "textarea"}),
                 ("count",)),
    TagGroupSpec("styling", frozenset({"b", "i", "em", "strong", "span"}), ("count",)),
)

_SECTION_STAT_GROUPS = ("headings", "lists", "tables", "links")

HTML_FEATURE_NAMES: tuple[str, ...] = tuple(
    [f"{g.group_name}_count" for g in DEFAULT_TAG_GROUPS]
    + [
        f"{name}_per_section_{stat}"
        for name in _SECTION_STAT_GROUPS
        for stat in ("min", "max", "avg", "std")
    ]
    + [
        "total_tag_count",
        "max_dom_depth",
        "distinct_tag_count",
        "text_node_count",
        "total_text_length",
        "script_style_count",
    ]
)

assert len(HTML_FEATURE_NAMES) == 31


def _subtree_group_count(node: DomNode, members: frozenset[str]) -> int:
    return sum(1 for n in node.iter_subtree() if n.tag in members)


def html_features(dom: DomNode, registry: tuple[TagGroupSpec, ...] = DEFAULT_TAG_GROUPS) -> np.ndarray:
    """Compute the 31 HTML statistical features over the document body.

    All counts are scoped to the body subtree (excluding the body element
    itself), so duplicating the body content doubles every count feature
    exactly. Per-section statistics are taken over the element children of
    body; absent groups yield 0 for every statistic.
    """
    body = dom.find("body") or dom
    inside = [n for n in body.iter_subtree() if n is not body]
    elements = [n for n in inside if not n.is_text()]
    text_nodes = [n for n in inside if n.is_text()]
    sections = [c for c in body.children if not c.is_text()]

    values: list[float] = []
    for group in registry:
        values.append(float(sum(1 for n in elements if n.tag in group.member_tags)))

    by_name = {g.group_name: g for g in registry}
    for name in _SECTION_STAT_GROUPS:
        group = by_name[name]
        per_section = [_subtree_group_count(s, group.member_tags) for s in sections]
        if not per_section or sum(per_section) == 0:
            values.extend([0.0, 0.0, 0.0, 0.0])
            continue
        arr = np.asarray(per_section, dtype=float)
        values.extend([float(arr.min()), float(arr.max()), float(arr.mean()), float(arr.std())])

    def depth(node: DomNode) -> int:
        if not node.children:
            return 0
        return 1 + max(depth(c) for c in node.children)

    values.append(float(len(elements)))
    values.append(float(depth(body)))
    values.append(float(len({n.tag for n in elements})))
    values.append(float(len(text_nodes)))
    values.append(float(sum(len(n.text) for n in text_nodes)))
    values.append(float(sum(1 for n in elements if n.tag in ("script", "style"))))

    out = np.asarray(values, dtype=float)
    assert out.shape == (len(HTML_FEATURE_NAMES),)
    return out
