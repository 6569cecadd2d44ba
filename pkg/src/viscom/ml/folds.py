"""Stratified k-fold splitting with deterministic seeding."""

from __future__ import annotations

import numpy as np

from ..errors import BadK
from ..rng import derive_rng


def canonical_classes(y) -> list:
    return sorted(set(y))


def stratified_kfold(y, k: int, seed: int) -> list[np.ndarray]:
    """Partition indices 0..n-1 into k stratified test folds.

    Each class's indices are shuffled and dealt to folds starting at a
    rotating offset, so per-class fold counts differ by at most one and the
    fold sizes stay balanced. Deterministic for a fixed seed.
    """
    y = list(y)
    n = len(y)
    if k < 2 or k > n:
        raise BadK(f"k must be within [2, {n}], got {k}")
    folds: list[list[int]] = [[] for _ in range(k)]
    offset = 0
    for ci, cls in enumerate(canonical_classes(y)):
        members = np.asarray([i for i, label in enumerate(y) if label == cls])
        rng = derive_rng(seed, "stratified-fold", ci)
        members = members[rng.permutation(len(members))]
        for j, idx in enumerate(members):
            folds[(j + offset) % k].append(int(idx))
        offset = (offset + len(members)) % k
    return [np.asarray(sorted(f), dtype=int) for f in folds]


def train_indices(n: int, test_idx: np.ndarray) -> np.ndarray:
    mask = np.ones(n, dtype=bool)
    mask[test_idx] = False
    return np.nonzero(mask)[0]
