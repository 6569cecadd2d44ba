"""Permutation feature importance on a held-out split."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..rng import derive_rng

DEFAULT_REPEATS = 100


@dataclass
class PfiResult:
    feature_name: str
    accuracy_ori: float
    mean_delta: float
    std_delta: float
    repeats: int
    selection_count: int = 1


def permutation_importance(
    predict_fn,
    x_test: np.ndarray,
    y_test,
    feature_names,
    repeats: int = DEFAULT_REPEATS,
    seed: int = 0,
) -> list[PfiResult]:
    """Accuracy drop per feature when that column is randomly permuted.

    ``predict_fn`` maps a feature matrix to predicted labels; permutations
    are seeded per (feature, repeat) so results do not depend on evaluation
    order.
    """
    x_test = np.asarray(x_test, dtype=float)
    y_test = list(y_test)
    n = len(y_test)
    base_pred = predict_fn(x_test)
    acc_ori = sum(1 for t, p in zip(y_test, base_pred) if t == p) / n

    results = []
    for j, name in enumerate(feature_names):
        deltas = np.empty(repeats)
        for r in range(repeats):
            rng = derive_rng(seed, "pfi", j, r)
            permuted = x_test.copy()
            permuted[:, j] = permuted[rng.permutation(n), j]
            pred = predict_fn(permuted)
            acc = sum(1 for t, p in zip(y_test, pred) if t == p) / n
            deltas[r] = acc_ori - acc
        results.append(
            PfiResult(
                feature_name=name,
                accuracy_ori=acc_ori,
                mean_delta=float(deltas.mean()),
                std_delta=float(deltas.std()),
                repeats=repeats,
            )
        )
    return results
