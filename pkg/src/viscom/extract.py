"""Per-page feature extraction: one snapshot bundle in, 156 features out."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .aesthetics import aesthetics_features
from .dom import html_features, parse_dom
from .registry import page_columns
from .relevance import DEFAULT_FACTS, FactSet, HashedBagEmbedding, relevance_features
from .snapshot import PageSnapshot, load_snapshot
from .textfeat import extract_main_text, textcom_features
from .vips import layout_features, segment_vips
from .visual import visual_features

log = logging.getLogger(__name__)


def make_provider(provider_url: str | None = None):
    if provider_url:
        from .relevance import RemoteEmbedding

        return RemoteEmbedding(provider_url)
    return HashedBagEmbedding()


def page_features(snapshot: PageSnapshot, facts: FactSet, provider=None) -> np.ndarray:
    """All per-page features in registry order (VisCom + TexCom + WebRel)."""
    if provider is None:
        provider = HashedBagEmbedding()
    dom = parse_dom(snapshot.html)
    tree = segment_vips(snapshot.geometry)
    text = extract_main_text(dom, snapshot.geometry)
    parts = [
        html_features(dom),
        visual_features(snapshot.screenshot),
        layout_features(tree, snapshot.geometry),
        aesthetics_features(tree, snapshot.geometry),
        textcom_features(text),
        relevance_features(text, facts, provider),
    ]
    out = np.concatenate(parts)
    expected = len(page_columns(len(facts.facts)))
    assert out.shape == (expected,)
    return out


def discover_bundles(snapshot_root: str | Path) -> list[Path]:
    root = Path(snapshot_root)
    return sorted(p for p in root.iterdir() if p.is_dir())


def _extract_one(args) -> tuple[str, list[float] | None, str | None]:
    bundle_dir, facts_tuple, provider_url = args
    facts = FactSet(facts=facts_tuple)
    try:
        snapshot = load_snapshot(bundle_dir)
        values = page_features(snapshot, facts, make_provider(provider_url))
        return Path(bundle_dir).name, [float(v) for v in values], None
    except Exception as exc:  # failed pages become all-missing rows
        return Path(bundle_dir).name, None, f"{type(exc).__name__}: {exc}"


def extract_corpus(
    snapshot_root: str | Path,
    facts: FactSet | None = None,
    provider_url: str | None = None,
    workers: int = 1,
) -> tuple[list[str], np.ndarray, dict[str, str]]:
    """Extract every bundle under a root directory, in sorted bundle order.

    Returns (page ids, feature matrix with NaN rows for failures, errors by
    page id). Output order is canonical, so worker count never changes it.
    """
    if facts is None:
        facts = FactSet(facts=DEFAULT_FACTS)
    bundles = discover_bundles(snapshot_root)
    jobs = [(str(b), facts.facts, provider_url) for b in bundles]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_extract_one, jobs))
    else:
        results = [_extract_one(job) for job in jobs]

    n_cols = len(page_columns(len(facts.facts)))
    ids, rows, errors = [], [], {}
    for page_id, values, error in results:
        ids.append(page_id)
        if values is None:
            rows.append([float("nan")] * n_cols)
            errors[page_id] = error or "unknown failure"
            log.warning("extraction failed for %s: %s", page_id, error)
        else:
            rows.append(values)
    matrix = np.asarray(rows, dtype=float) if rows else np.zeros((0, n_cols))
    return ids, matrix, errors
