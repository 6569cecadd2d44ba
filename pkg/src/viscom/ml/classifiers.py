"""Five deterministic classifiers implemented from first principles.

All models consume integer class indices 0..K-1 and break every vote or
posterior tie toward the smallest class index. Stochastic models (random
forest bootstraps and feature subsampling) derive their streams from an
explicit seed, so refitting with the same seed reproduces the model bit for
bit. New classifiers can be plugged in by registering a factory in
CLASSIFIER_REGISTRY and a grid in DEFAULT_GRIDS.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateTraining
from ..rng import derive_rng
from .data import Dataset

EPS = 1e-12


# ---------------------------------------------------------------- k-NN ----


class KNearestNeighbors:
    def __init__(self, k: int = 5, metric: str = "euclidean"):
        if metric not in ("euclidean", "manhattan"):
            raise ValueError(f"unknown metric {metric}")
        self.k = k
        self.metric = metric

    def fit(self, x: np.ndarray, y: np.ndarray, n_classes: int, seed: int = 0):
        self.x_ = np.asarray(x, dtype=float)
        self.y_ = np.asarray(y, dtype=int)
        self.n_classes_ = n_classes
        return self

    def predict(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.empty(len(x), dtype=int)
        for i, row in enumerate(x):
            diff = self.x_ - row
            if self.metric == "euclidean":
                dist = np.sqrt((diff * diff).sum(axis=1))
            else:
                dist = np.abs(diff).sum(axis=1)
            order = np.argsort(dist, kind="stable")[: min(self.k, len(dist))]
            votes = np.bincount(self.y_[order], minlength=self.n_classes_)
            out[i] = int(np.argmax(votes))
        return out


# --------------------------------------------------------- Gaussian NB ----


class GaussianNaiveBayes:
    def __init__(self, var_floor: float = 1e-9):
        self.var_floor = var_floor

    def fit(self, x: np.ndarray, y: np.ndarray, n_classes: int, seed: int = 0):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=int)
        n = len(y)
        self.n_classes_ = n_classes
        self.log_prior_ = np.full(n_classes, -np.inf)
        self.mean_ = np.zeros((n_classes, x.shape[1]))
        self.var_ = np.ones((n_classes, x.shape[1]))
        for c in range(n_classes):
            rows = x[y == c]
            if len(rows) == 0:
                continue
            self.log_prior_[c] = math.log(len(rows) / n)
            self.mean_[c] = rows.mean(axis=0)
            self.var_[c] = np.maximum(rows.var(axis=0), self.var_floor)
        return self

    def predict(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        scores = np.empty((len(x), self.n_classes_))
        for c in range(self.n_classes_):
            if not np.isfinite(self.log_prior_[c]):
                scores[:, c] = -np.inf
                continue
            ll = -0.5 * (
                np.log(2.0 * np.pi * self.var_[c]) + (x - self.mean_[c]) ** 2 / self.var_[c]
            ).sum(axis=1)
            scores[:, c] = self.log_prior_[c] + ll
        return np.argmax(scores, axis=1)


# ----------------------------------------------------------------- CART ----


@dataclass
class _TreeNode:
    prediction: int
    feature: int = -1
    threshold: float = 0.0
    left: "_TreeNode | None" = None
    right: "_TreeNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None


def _weighted_gini(class_weights: np.ndarray) -> float:
    total = class_weights.sum()
    if total <= 0:
        return 0.0
    p = class_weights / total
    return float(1.0 - (p * p).sum())


def _best_split_for_feature(col, y, w, n_classes, min_leaf):
    """Best (weighted gini, threshold) along one feature; None if no split.

    Among equal-impurity splits the lowest threshold wins (candidates are
    scanned in ascending value order).
    """
    order = np.argsort(col, kind="stable")
    v = col[order]
    yo = y[order]
    wo = w[order]
    n = len(v)
    if n < 2 * min_leaf or v[0] == v[-1]:
        return None
    onehot = np.zeros((n, n_classes))
    onehot[np.arange(n), yo] = wo
    prefix = np.cumsum(onehot, axis=0)
    total = prefix[-1]
    wt = total.sum()

    pos = np.arange(n - 1)
    valid = (v[:-1] < v[1:]) & (pos + 1 >= min_leaf) & (n - pos - 1 >= min_leaf)
    if not valid.any():
        return None
    left = prefix[:-1]
    right = total[None, :] - left
    wl = left.sum(axis=1)
    wr = right.sum(axis=1)
    gl = 1.0 - (np.divide(left, np.maximum(wl, EPS)[:, None]) ** 2).sum(axis=1)
    gr = 1.0 - (np.divide(right, np.maximum(wr, EPS)[:, None]) ** 2).sum(axis=1)
    score = (wl * gl + wr * gr) / max(wt, EPS)
    score = np.where(valid, score, np.inf)
    best = int(np.argmin(score))
    return float(score[best]), float((v[best] + v[best + 1]) / 2.0)


class DecisionTree:
    """CART with Gini impurity and deterministic tie-breaking: equal splits
    go to the lowest feature index, then the lowest threshold."""

    def __init__(self, max_depth: int | None = None, min_leaf: int = 1):
        self.max_depth = max_depth
        self.min_leaf = min_leaf

    def fit(self, x, y, n_classes: int, seed: int = 0, sample_weight=None,
            feature_rng: np.random.Generator | None = None, n_sub_features: int | None = None):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=int)
        w = np.ones(len(y)) if sample_weight is None else np.asarray(sample_weight, dtype=float)
        self.n_classes_ = n_classes
        self._rng = feature_rng
        self._n_sub = n_sub_features
        self.root_ = self._grow(x, y, w, depth=0)
        return self

    def _grow(self, x, y, w, depth) -> _TreeNode:
        class_w = np.bincount(y, weights=w, minlength=self.n_classes_)
        prediction = int(np.argmax(class_w))
        node_gini = _weighted_gini(class_w)
        if (
            node_gini <= EPS
            or len(y) < 2 * self.min_leaf
            or (self.max_depth is not None and depth >= self.max_depth)
        ):
            return _TreeNode(prediction=prediction)

        d = x.shape[1]
        if self._n_sub is not None and self._rng is not None and self._n_sub < d:
            features = sorted(self._rng.choice(d, size=self._n_sub, replace=False).tolist())
        else:
            features = range(d)

        best = None  # (score, feature, threshold)
        for f in features:
            found = _best_split_for_feature(x[:, f], y, w, self.n_classes_, self.min_leaf)
            if found is None:
                continue
            score, threshold = found
            if best is None or score < best[0] - EPS:
                best = (score, f, threshold)
        if best is None or best[0] >= node_gini - EPS:
            return _TreeNode(prediction=prediction)

        _, f, threshold = best
        mask = x[:, f] <= threshold
        node = _TreeNode(prediction=prediction, feature=f, threshold=threshold)
        node.left = self._grow(x[mask], y[mask], w[mask], depth + 1)
        node.right = self._grow(x[~mask], y[~mask], w[~mask], depth + 1)
        return node

    def predict(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.empty(len(x), dtype=int)
        for i, row in enumerate(x):
            node = self.root_
            while not node.is_leaf:
                node = node.left if row[node.feature] <= node.threshold else node.right
            out[i] = node.prediction
        return out


# -------------------------------------------------------- Random forest ----


class RandomForest:
    """Bagged CART on bootstrap samples with sqrt(d) feature subsampling."""

    def __init__(self, n_trees: int = 100, max_depth: int | None = None, min_leaf: int = 1):
        self.n_trees = n_trees
        self.max_depth = max_depth
        self.min_leaf = min_leaf

    def fit(self, x, y, n_classes: int, seed: int = 0):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=int)
        self.n_classes_ = n_classes
        n, d = x.shape
        n_sub = max(1, round(math.sqrt(d)))
        self.trees_ = []
        for t in range(self.n_trees):
            rng = derive_rng(seed, "rf-tree", t)
            boot = rng.integers(0, n, size=n)
            tree = DecisionTree(max_depth=self.max_depth, min_leaf=self.min_leaf)
            tree.fit(x[boot], y[boot], n_classes, feature_rng=rng, n_sub_features=n_sub)
            self.trees_.append(tree)
        return self

    def predict(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        votes = np.zeros((len(x), self.n_classes_), dtype=int)
        for tree in self.trees_:
            pred = tree.predict(x)
            votes[np.arange(len(x)), pred] += 1
        return np.argmax(votes, axis=1)


# -------------------------------------------------------------- AdaBoost ----


class AdaBoost:
    """SAMME boosting over depth-1 decision stumps."""

    def __init__(self, rounds: int = 50):
        self.rounds = rounds

    def fit(self, x, y, n_classes: int, seed: int = 0):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=int)
        n = len(y)
        self.n_classes_ = n_classes
        w = np.full(n, 1.0 / n)
        self.stumps_: list[DecisionTree] = []
        self.alphas_: list[float] = []
        for _ in range(self.rounds):
            stump = DecisionTree(max_depth=1).fit(x, y, n_classes, sample_weight=w)
            pred = stump.predict(x)
            wrong = pred != y
            err = float(w[wrong].sum())
            if err >= 1.0 - 1.0 / n_classes:
                break
            err = max(err, 1e-10)
            alpha = math.log((1.0 - err) / err) + math.log(n_classes - 1.0)
            self.stumps_.append(stump)
            self.alphas_.append(alpha)
            if err <= 1e-10:
                break
            w = w * np.exp(alpha * wrong)
            w /= w.sum()
        if not self.stumps_:
            # Fall back to the weighted majority stump.
            self.stumps_.append(DecisionTree(max_depth=0).fit(x, y, n_classes, sample_weight=w))
            self.alphas_.append(1.0)
        return self

    def predict(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        scores = np.zeros((len(x), self.n_classes_))
        for stump, alpha in zip(self.stumps_, self.alphas_):
            pred = stump.predict(x)
            scores[np.arange(len(x)), pred] += alpha
        return np.argmax(scores, axis=1)


# ------------------------------------------------------------- registry ----

CLASSIFIER_REGISTRY = {
    "knn": KNearestNeighbors,
    "gnb": GaussianNaiveBayes,
    "cart": DecisionTree,
    "rf": RandomForest,
    "adaboost": AdaBoost,
}

DEFAULT_CLASSIFIERS = ("knn", "gnb", "cart", "rf", "adaboost")

DEFAULT_GRIDS: dict[str, list[dict]] = {
    "knn": [
        {"k": k, "metric": m} for k in (1, 3, 5, 7, 11) for m in ("euclidean", "manhattan")
    ],
    "gnb": [{"var_floor": v} for v in (1e-9, 1e-6, 1e-3)],
    "cart": [
        {"max_depth": d, "min_leaf": leaf} for d in (2, 3, 5, None) for leaf in (1, 3, 5)
    ],
    "rf": [
        {"n_trees": t, "max_depth": d} for t in (50, 200) for d in (3, None)
    ],
    "adaboost": [{"rounds": r} for r in (50, 200)],
}

# Distance-based, Gaussian, and boosted models see standardized features
# (the variance-floor grid presumes unit-scale inputs); trees consume raw
# values.
NEEDS_SCALING = {"knn": True, "gnb": True, "cart": False, "rf": False, "adaboost": True}


def make_classifier(name: str, params: dict):
    if name not in CLASSIFIER_REGISTRY:
        raise ValueError(f"unknown classifier {name!r}")
    return CLASSIFIER_REGISTRY[name](**params)


@dataclass
class Model:
    """A fitted classifier plus the label vocabulary it was trained with."""

    clf: object
    classes: tuple

    def predict_labels(self, rows: np.ndarray):
        idx = self.clf.predict(rows)
        return [self.classes[i] for i in idx]


def train(name: str, params: dict, dataset: Dataset, classes=None, seed: int = 0) -> Model:
    """Fit one classifier on a dataset whose rows are already preprocessed."""
    if classes is None:
        classes = tuple(sorted(set(dataset.y)))
    index = {c: i for i, c in enumerate(classes)}
    missing = [c for c in classes if c not in set(dataset.y)]
    if missing:
        raise DegenerateTraining(f"classes absent from training split: {missing}")
    y_idx = np.asarray([index[label] for label in dataset.y], dtype=int)
    clf = make_classifier(name, params)
    clf.fit(dataset.x, y_idx, n_classes=len(classes), seed=seed)
    return Model(clf=clf, classes=tuple(classes))


def predict(model: Model, rows: np.ndarray):
    return model.predict_labels(np.asarray(rows, dtype=float))
