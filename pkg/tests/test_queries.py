import numpy as np
import pytest

from viscom.queries import QUERY_FEATURE_NAMES, query_features

from .conftest import make_event, make_session

IDX = {name: i for i, name in enumerate(QUERY_FEATURE_NAMES)}


def test_registry_has_11_names():
    assert len(QUERY_FEATURE_NAMES) == 11


def test_two_query_session():
    session = make_session(
        events=[
            make_event(0.0, "https://g/search", "serp", query="lightning"),
            make_event(30.0, "https://x", "content"),
            make_event(60.0, "https://g/search", "serp", query="how lightning forms"),
        ]
    )
    vec = query_features(session)
    assert vec[IDX["n_queries"]] == 2
    assert vec[IDX["avg_query_len_tokens"]] == 2.0
    assert vec[IDX["max_query_len_tokens"]] == 3
    assert vec[IDX["min_query_len_tokens"]] == 1
    # jaccard({lightning}, {how, lightning, forms}) = 1/3
    assert vec[IDX["mean_jaccard_consecutive_queries"]] == pytest.approx(1 / 3)
    assert vec[IDX["n_serp_visits"]] == 2
    assert vec[IDX["n_content_pages"]] == 1
    assert vec[IDX["session_duration_minutes"]] == 1.0
    assert vec[IDX["queries_per_minute"]] == 2.0


def test_no_queries_zeroes_query_stats():
    session = make_session(
        events=[
            make_event(0.0, "https://g/search", "serp"),
            make_event(120.0, "https://x", "content"),
        ]
    )
    vec = query_features(session)
    for name in ("n_queries", "avg_query_len_tokens", "max_query_len_tokens",
                 "min_query_len_tokens", "avg_query_len_chars",
                 "n_unique_query_terms", "mean_jaccard_consecutive_queries",
                 "queries_per_minute"):
        assert vec[IDX[name]] == 0.0, name
    assert vec[IDX["n_serp_visits"]] == 1
    assert vec[IDX["n_content_pages"]] == 1
    assert vec[IDX["session_duration_minutes"]] == 2.0


def test_fixture_session_hand_tally():
    # hand-computed sheet for a three-query session
    session = make_session(
        events=[
            make_event(0.0, "https://g/search", "serp", query="storm clouds"),
            make_event(60.0, "https://a", "content"),
            make_event(120.0, "https://g/search", "serp", query="storm clouds form"),
            make_event(200.0, "https://b", "content"),
            make_event(250.0, "https://y/watch", "video"),
            make_event(300.0, "https://g/search", "serp", query="thunder"),
        ]
    )
    vec = query_features(session)
    expected = {
        "n_queries": 3.0,
        "avg_query_len_tokens": (2 + 3 + 1) / 3,
        "max_query_len_tokens": 3.0,
        "min_query_len_tokens": 1.0,
        "avg_query_len_chars": (12 + 17 + 7) / 3,
        "n_unique_query_terms": 4.0,  # storm, clouds, form, thunder
        "mean_jaccard_consecutive_queries": (2 / 3 + 0.0) / 2,
        "n_serp_visits": 3.0,
        "n_content_pages": 2.0,
        "session_duration_minutes": 5.0,
        "queries_per_minute": 3 / 5,
    }
    for name, value in expected.items():
        assert vec[IDX[name]] == pytest.approx(value), name


def test_invariant_under_reordering_nonquery_events():
    base = [
        make_event(0.0, "https://g/search", "serp", query="a b"),
        make_event(10.0, "https://x", "content"),
        make_event(20.0, "https://y", "video"),
        make_event(30.0, "https://g/search", "serp", query="b c"),
    ]
    # same events with the video and content visits swapped in time
    swapped = [
        base[0],
        make_event(10.0, "https://y", "video"),
        make_event(20.0, "https://x", "content"),
        base[3],
    ]
    a = query_features(make_session(events=base))
    b = query_features(make_session(events=swapped))
    np.testing.assert_allclose(a, b)
