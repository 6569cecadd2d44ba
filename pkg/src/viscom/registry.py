"""The governed feature registry: names, order, and JSON export.

Column names are fully qualified with their family prefix so experiment
configs can address feature sets by prefix (viscom.html, viscom.visual,
viscom.layout, viscom.aesthetics, texcom, webrel, query).
"""

from __future__ import annotations

import json
from pathlib import Path

from .aesthetics import AESTHETICS_FEATURE_NAMES
from .dom import HTML_FEATURE_NAMES
from .queries import QUERY_FEATURE_NAMES
from .relevance import webrel_feature_names
from .textfeat import TEXCOM_FEATURE_NAMES
from .vips import LAYOUT_FEATURE_NAMES
from .visual import VISUAL_FEATURE_NAMES

HTML_COLUMNS = tuple(f"viscom.html.{n}" for n in HTML_FEATURE_NAMES)
VISUAL_COLUMNS = tuple(f"viscom.visual.{n}" for n in VISUAL_FEATURE_NAMES)
LAYOUT_COLUMNS = tuple(f"viscom.layout.{n}" for n in LAYOUT_FEATURE_NAMES)
AESTHETICS_COLUMNS = tuple(f"viscom.aesthetics.{n}" for n in AESTHETICS_FEATURE_NAMES)
TEXCOM_COLUMNS = tuple(f"texcom.{n}" for n in TEXCOM_FEATURE_NAMES)
QUERY_COLUMNS = tuple(f"query.{n}" for n in QUERY_FEATURE_NAMES)

VISCOM_COLUMNS = HTML_COLUMNS + VISUAL_COLUMNS + LAYOUT_COLUMNS + AESTHETICS_COLUMNS

FAMILY_SIZES = {
    "viscom.html": 31,
    "viscom.visual": 8,
    "viscom.layout": 5,
    "viscom.aesthetics": 70,
    "viscom": 114,
    "texcom": 32,
    "webrel": 10,
    "query": 11,
}


def webrel_columns(n_facts: int = 10) -> tuple[str, ...]:
    return tuple(f"webrel.{n}" for n in webrel_feature_names(n_facts))


def page_columns(n_facts: int = 10) -> tuple[str, ...]:
    """Column order for one extracted page: 114 VisCom + 32 TexCom + WebRel."""
    return VISCOM_COLUMNS + TEXCOM_COLUMNS + webrel_columns(n_facts)


def session_columns(n_facts: int = 10) -> tuple[str, ...]:
    """Column order for one aggregated session (page columns + 11 query)."""
    return page_columns(n_facts) + QUERY_COLUMNS


def export_registries(out_dir: str | Path) -> list[Path]:
    """Write the ordered per-family registries as JSON files."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = {
        "features_html.json": HTML_COLUMNS,
        "features_visual.json": VISUAL_COLUMNS,
        "features_layout.json": LAYOUT_COLUMNS,
        "features_aesthetics.json": AESTHETICS_COLUMNS,
        "features_texcom.json": TEXCOM_COLUMNS,
        "features_query.json": QUERY_COLUMNS,
    }
    written = []
    for name, columns in files.items():
        path = out / name
        path.write_text(json.dumps(list(columns), indent=1) + "\n", "utf-8")
        written.append(path)
    return written
