"""Random and majority baselines bounding the classification task."""

from __future__ import annotations

import numpy as np

from ..rng import derive_rng

BASELINE_KINDS = ("most_frequent", "stratified", "uniform")


def baseline_predict(kind: str, train_y, n_test: int, seed: int = 0) -> list:
    """Seeded baseline predictions.

    most_frequent predicts the majority training label (ties go to the
    smallest class index); stratified draws i.i.d. from the training
    distribution; uniform draws i.i.d. over the classes.
    """
    train_y = list(train_y)
    if not train_y:
        raise ValueError("train_y must be non-empty")
    classes = sorted(set(train_y))
    counts = np.asarray([sum(1 for label in train_y if label == c) for c in classes], dtype=float)
    if kind == "most_frequent":
        majority = classes[int(np.argmax(counts))]
        return [majority] * n_test
    rng = derive_rng(seed, "baseline", kind)
    if kind == "stratified":
        probs = counts / counts.sum()
        idx = rng.choice(len(classes), size=n_test, p=probs)
    elif kind == "uniform":
        idx = rng.integers(0, len(classes), size=n_test)
    else:
        raise ValueError(f"unknown baseline kind {kind!r}")
    return [classes[i] for i in idx]
