"""Leakage-safe preprocessing, Pearson feature selection, and grid search.

Every statistic (imputation means, standardization parameters, selection
correlations) is computed strictly on the training rows it is given and
then applied unchanged to validation or test rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..rng import derive_seed
from .classifiers import DEFAULT_GRIDS, NEEDS_SCALING, make_classifier
from .folds import stratified_kfold, train_indices
from .metrics import ConfusionMatrix, macro_f1
from .stats import pearson

GAMMA_GRID = (1, 5, 10, 15, 20)


@dataclass(frozen=True)
class Preprocessor:
    impute_means: np.ndarray
    scale_mean: np.ndarray
    scale_std: np.ndarray
    scaled: bool

    @staticmethod
    def fit(x_train: np.ndarray, scaled: bool) -> "Preprocessor":
        present = ~np.isnan(x_train)
        counts = present.sum(axis=0)
        sums = np.where(present, x_train, 0.0).sum(axis=0)
        means = np.divide(sums, counts, out=np.zeros(x_train.shape[1]),
                          where=counts > 0)  # all-missing column -> 0
        filled = np.where(np.isnan(x_train), means, x_train)
        mu = filled.mean(axis=0)
        std = filled.std(axis=0)
        std = np.where(std > 0, std, 1.0)
        return Preprocessor(impute_means=means, scale_mean=mu, scale_std=std, scaled=scaled)

    def transform(self, x: np.ndarray) -> np.ndarray:
        filled = np.where(np.isnan(x), self.impute_means, x)
        if not self.scaled:
            return filled
        return (filled - self.scale_mean) / self.scale_std


def select_features(x_train: np.ndarray, kg_numeric: np.ndarray, gamma: int) -> list[int]:
    """Indices of the gamma features most correlated (|r|) with numeric KG.

    Correlations come from the training rows only; ties keep registry
    order.
    """
    d = x_train.shape[1]
    gamma = min(gamma, d)
    scores = np.asarray([abs(pearson(x_train[:, j], kg_numeric)) for j in range(d)])
    order = np.argsort(-scores, kind="stable")
    return sorted(int(j) for j in order[:gamma])


@dataclass
class FittedPipeline:
    pre: Preprocessor
    selected: list[int] | None
    clf: object
    classes: tuple

    def predict(self, x: np.ndarray):
        z = self.pre.transform(np.asarray(x, dtype=float))
        if self.selected is not None:
            z = z[:, self.selected]
        idx = self.clf.predict(z)
        return [self.classes[i] for i in idx]


@dataclass(frozen=True)
class SelectionPolicy:
    """How the per-fit feature selection chooses its columns.

    mode "none" keeps every column; "grid" tunes gamma alongside the
    hyperparameters; "fixed" always selects `gamma` columns; "per_group"
    selects `gamma` columns within each named column group separately (the
    combination experiment uses this with gamma=10).
    """

    mode: str = "none"
    gamma: int | None = None
    groups: tuple[tuple[int, ...], ...] = ()

    def gamma_choices(self, d: int) -> list[int | None]:
        if self.mode == "grid":
            choices = [g for g in GAMMA_GRID if g <= d] or [d]
            return list(choices)
        if self.mode == "fixed":
            return [min(self.gamma or d, d)]
        return [None]

    def apply(self, x_train: np.ndarray, kg_train: np.ndarray, gamma: int | None) -> list[int] | None:
        if self.mode == "none":
            return None
        if self.mode == "per_group":
            chosen: list[int] = []
            for group in self.groups:
                cols = list(group)
                sub = select_features(x_train[:, cols], kg_train, min(self.gamma or len(cols), len(cols)))
                chosen.extend(cols[j] for j in sub)
            return sorted(chosen)
        assert gamma is not None
        return select_features(x_train, kg_train, gamma)


def fit_pipeline(
    name: str,
    params: dict,
    x_train: np.ndarray,
    y_train,
    kg_train: np.ndarray,
    classes,
    policy: SelectionPolicy,
    gamma: int | None,
    seed: int,
) -> FittedPipeline:
    """Impute, standardize (when the model wants it), select, then fit."""
    pre = Preprocessor.fit(x_train, scaled=NEEDS_SCALING[name])
    z = pre.transform(x_train)
    selected = policy.apply(z, kg_train, gamma)
    if selected is not None:
        z = z[:, selected]
    index = {c: i for i, c in enumerate(classes)}
    y_idx = np.asarray([index[label] for label in y_train], dtype=int)
    clf = make_classifier(name, params)
    clf.fit(z, y_idx, n_classes=len(classes), seed=seed)
    return FittedPipeline(pre=pre, selected=selected, clf=clf, classes=tuple(classes))


def grid_search(
    name: str,
    x: np.ndarray,
    y,
    kg: np.ndarray,
    classes,
    policy: SelectionPolicy,
    k_inner: int,
    seed: int,
    grid: list[dict] | None = None,
) -> tuple[dict, int | None]:
    """Pick hyperparameters (and gamma, when tuned) by inner stratified CV.

    Combinations are scored by mean inner macro F1; the first combination
    in grid order wins ties. A single-entry grid is returned immediately
    without running the inner folds.
    """
    grid = DEFAULT_GRIDS[name] if grid is None else grid
    combos: list[tuple[dict, int | None]] = [
        (params, gamma) for params in grid for gamma in policy.gamma_choices(x.shape[1])
    ]
    if len(combos) == 1:
        return combos[0]

    folds = stratified_kfold(list(y), k_inner, derive_seed(seed, "inner-folds"))
    best_score = -np.inf
    best = combos[0]
    for params, gamma in combos:
        scores = []
        for fi, val_idx in enumerate(folds):
            tr_idx = train_indices(len(y), val_idx)
            pipe = fit_pipeline(
                name,
                params,
                x[tr_idx],
                [y[i] for i in tr_idx],
                kg[tr_idx],
                classes,
                policy,
                gamma,
                seed=derive_seed(seed, "inner-fit", fi),
            )
            pred = pipe.predict(x[val_idx])
            cm = ConfusionMatrix.from_labels([y[i] for i in val_idx], pred, classes)
            scores.append(macro_f1(cm))
        mean_score = float(np.mean(scores))
        if mean_score > best_score + 1e-12:
            best_score = mean_score
            best = (params, gamma)
    return best
