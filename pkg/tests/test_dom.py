import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from viscom.dom import HTML_FEATURE_NAMES, html_features, parse_dom
from viscom.errors import EmptyDocument

from .conftest import FIXTURES

IDX = {name: i for i, name in enumerate(HTML_FEATURE_NAMES)}


def body_of(html):
    return parse_dom(html).find("body")


def test_two_paragraphs():
    body = body_of(b"<p>a</p><p>b</p>")
    assert [c.tag for c in body.children] == ["p", "p"]


def test_unclosed_p_auto_closes():
    # HTML5 tree construction: a second <p> start tag closes the first.
    body = body_of(b"<p>a<p>b")
    assert [c.tag for c in body.children] == ["p", "p"]
    assert [c.children[0].text for c in body.children] == ["a", "b"]


def test_empty_document_raises():
    with pytest.raises(EmptyDocument):
        parse_dom(b"")


def test_li_auto_close_and_void_elements():
    body = body_of(b"<ul><li>one<li>two</ul><img src=x><br>")
    ul = body.children[0]
    assert [c.tag for c in ul.children] == ["li", "li"]
    assert [c.tag for c in body.children] == ["ul", "img", "br"]


def test_unknown_tags_kept():
    body = body_of(b"<widget-card><p>hello</p></widget-card>")
    assert body.children[0].tag == "widget-card"
    assert body.children[0].children[0].tag == "p"


def test_case_folding():
    body = body_of(b"<DIV><P>x</P></DIV>")
    assert body.children[0].tag == "div"


def test_empty_body_features_all_zero():
    vec = html_features(parse_dom(b"<html><body></body></html>"))
    assert np.all(vec == 0.0)


def test_paragraph_and_image_counts():
    vec = html_features(parse_dom(b"<p>a</p><p>b</p><img src=x>"))
    assert vec[IDX["paragraphs_count"]] == 2
    assert vec[IDX["images_count"]] == 1


def test_article_page_matches_hand_tally():
    html = (FIXTURES / "article_page.html").read_bytes()
    sheet = json.loads((FIXTURES / "article_page_counts.json").read_text())
    vec = html_features(parse_dom(html))

    for name in (
        "headings_count", "paragraphs_count", "lists_count", "tables_count",
        "images_count", "media_count", "links_count", "forms_count",
        "styling_count", "total_tag_count", "max_dom_depth",
        "distinct_tag_count", "text_node_count", "total_text_length",
        "script_style_count",
    ):
        assert vec[IDX[name]] == sheet[name], name

    for group in ("headings", "lists", "tables", "links"):
        occurrences = np.asarray(sheet[f"{group}_per_section"], dtype=float)
        assert vec[IDX[f"{group}_per_section_min"]] == occurrences.min()
        assert vec[IDX[f"{group}_per_section_max"]] == occurrences.max()
        assert vec[IDX[f"{group}_per_section_avg"]] == pytest.approx(occurrences.mean())
        assert vec[IDX[f"{group}_per_section_std"]] == pytest.approx(occurrences.std())


def test_whitespace_invariance():
    compact = b"<div><p>Some text here.</p><ul><li>a</li><li>b</li></ul></div>"
    spaced = b"""
    <div>
        <p>Some   text
           here.</p>
        <ul>
            <li>a</li>
            <li>b</li>
        </ul>
    </div>
    """
    np.testing.assert_array_equal(
        html_features(parse_dom(compact)), html_features(parse_dom(spaced))
    )


COUNT_FEATURES = (
    "headings_count", "paragraphs_count", "lists_count", "tables_count",
    "images_count", "media_count", "links_count", "forms_count",
    "styling_count", "total_tag_count", "text_node_count",
    "total_text_length", "script_style_count",
)


def test_duplicating_body_doubles_counts():
    content = b"<h1>t</h1><p>one <b>two</b></p><ul><li>x</li></ul><a href=y>l</a>"
    single = html_features(parse_dom(b"<body>" + content + b"</body>"))
    double = html_features(parse_dom(b"<body>" + content + content + b"</body>"))
    for name in COUNT_FEATURES:
        assert double[IDX[name]] == 2 * single[IDX[name]], name


@given(st.integers(1, 5), st.integers(0, 4))
def test_counts_are_exact(n_p, n_img):
    html = b"".join([b"<p>x</p>"] * n_p + [b"<img src=a>"] * n_img)
    vec = html_features(parse_dom(b"<body>" + html + b"</body>"))
    assert vec[IDX["paragraphs_count"]] == n_p
    assert vec[IDX["images_count"]] == n_img


def test_registry_is_stable():
    assert len(HTML_FEATURE_NAMES) == 31
    assert len(set(HTML_FEATURE_NAMES)) == 31
    # byte-exact ordering across runs
    joined = "|".join(HTML_FEATURE_NAMES)
    assert joined.startswith("headings_count|paragraphs_count")
    assert joined.endswith("total_text_length|script_style_count")
