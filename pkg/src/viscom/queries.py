"""Session-level query behavior features (11 values)."""

from __future__ import annotations

import numpy as np

from .snapshot import SessionRecord

QUERY_FEATURE_NAMES = (
    "n_queries",
    "avg_query_len_tokens",
    "max_query_len_tokens",
    "min_query_len_tokens",
    "avg_query_len_chars",
    "n_unique_query_terms",
    "mean_jaccard_consecutive_queries",
    "n_serp_visits",
    "n_content_pages",
    "session_duration_minutes",
    "queries_per_minute",
)


def _terms(query: str) -> set[str]:
    return {t for t in query.lower().split() if t}


def query_features(s: SessionRecord) -> np.ndarray:
    """Eleven query-behavior features; sessions without queries zero out the
    length and overlap statistics."""
    queries = [ev.query for ev in s.events if ev.query is not None]
    n_serp = sum(1 for ev in s.events if ev.page_type == "serp")
    n_content = sum(1 for ev in s.events if ev.page_type == "content")
    duration_min = max((ev.timestamp for ev in s.events), default=0.0) / 60.0

    if not queries:
        values = [0.0] * 7 + [float(n_serp), float(n_content), duration_min, 0.0]
        return np.asarray(values, dtype=float)

    token_lens = [len(q.split()) for q in queries]
    char_lens = [len(q) for q in queries]
    term_sets = [_terms(q) for q in queries]
    all_terms = set().union(*term_sets)

    if len(queries) >= 2:
        jaccards = []
        for a, b in zip(term_sets, term_sets[1:]):
            union = a | b
            jaccards.append(len(a & b) / len(union) if union else 0.0)
        mean_jaccard = float(np.mean(jaccards))
    else:
        mean_jaccard = 0.0

    qpm = len(queries) / duration_min if duration_min > 0 else 0.0
    values = [
        float(len(queries)),
        float(np.mean(token_lens)),
        float(max(token_lens)),
        float(min(token_lens)),
        float(np.mean(char_lens)),
        float(len(all_terms)),
        mean_jaccard,
        float(n_serp),
        float(n_content),
        duration_min,
        qpm,
    ]
    return np.asarray(values, dtype=float)
