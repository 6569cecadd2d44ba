"""Content-page filtering, per-session feature aggregation, and KG labels.

Missing feature values are carried as NaN (never 0) and survive
aggregation untouched; imputation happens only inside the ML harness on
training splits, so extraction can never leak label information.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDistribution
from .snapshot import KnowledgeTest, NavigationEvent, SessionRecord

MISSING = float("nan")

KG_CLASSES = ("low", "moderate", "high")
Z_THRESHOLD = 0.5


@dataclass(frozen=True)
class FeatureVector:
    names: tuple[str, ...]
    values: np.ndarray
    scope: str  # "page" or "session"

    def __post_init__(self):
        if len(self.names) != len(self.values):
            raise ValueError("names and values must have equal length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("feature names must be unique")

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.names, self.values.tolist()))


@dataclass(frozen=True)
class KgLabel:
    kg: float
    z: float
    mu: float
    sigma: float
    cls: str


def filter_content_pages(s: SessionRecord) -> list[NavigationEvent]:
    """Events classified as content pages, in visit order."""
    return [ev for ev in s.events if ev.page_type == "content"]


def aggregate_session(
    pages: list[FeatureVector],
    query_f: FeatureVector,
    page_names: tuple[str, ...] | None = None,
) -> FeatureVector:
    """Average page features across visited content pages, ignoring missing
    values per feature, and append the query features unchanged.

    A session with zero content pages yields all-missing page features (the
    registry must then be supplied via page_names).
    """
    if pages:
        names = pages[0].names
        for p in pages[1:]:
            if p.names != names:
                raise ValueError("all page vectors must share one registry")
        matrix = np.vstack([p.values for p in pages])
        present = ~np.isnan(matrix)
        counts = present.sum(axis=0)
        sums = np.where(present, matrix, 0.0).sum(axis=0)
        means = np.where(counts > 0,
                         np.divide(sums, np.maximum(counts, 1)), MISSING)
    else:
        if page_names is None:
            raise ValueError("page_names is required when the session has no pages")
        names = tuple(page_names)
        means = np.full(len(names), MISSING)
    out_names = tuple(names) + tuple(query_f.names)
    values = np.concatenate([means, query_f.values])
    return FeatureVector(names=out_names, values=values, scope="session")


def compute_kg(t: KnowledgeTest) -> float:
    """Knowledge gain: (post - pre) / number of test items, in [-1, 1]."""
    return (t.post_correct - t.pre_correct) / t.n_items


def classify_z(z: float) -> str:
    """The class decision: strict thresholds, so exact boundary values
    (z = +-0.5) fall to moderate."""
    if z < -Z_THRESHOLD:
        return "low"
    if z > Z_THRESHOLD:
        return "high"
    return "moderate"


def label_classes(kgs: list[float]) -> list[KgLabel]:
    """Z-score the KG values (population sigma) and split into three classes."""
    if len(kgs) < 2:
        raise ValueError("at least two KG values are required")
    arr = np.asarray(kgs, dtype=float)
    if np.all(arr == arr[0]):
        raise DegenerateDistribution("KG values have zero spread")
    mu = float(arr.mean())
    sigma = float(arr.std())  # population (denominator n)
    # spreads at floating-point noise level are degenerate too
    if sigma <= abs(mu) * 1e-12 or not math.isfinite(sigma):
        raise DegenerateDistribution("KG values have zero spread")
    return [
        KgLabel(kg=float(kg), z=(float(kg) - mu) / sigma, mu=mu, sigma=sigma,
                cls=classify_z((float(kg) - mu) / sigma))
        for kg in arr
    ]
