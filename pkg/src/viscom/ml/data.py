"""Dataset container shared by the harness components."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Dataset:
    x: np.ndarray  # n x d, float, NaN marks missing
    y: tuple  # n class labels
    feature_names: tuple[str, ...]

    def __post_init__(self):
        if self.x.ndim != 2:
            raise ValueError("x must be a 2-d matrix")
        if self.x.shape[0] != len(self.y):
            raise ValueError("row count mismatch between x and y")
        if self.x.shape[1] != len(self.feature_names):
            raise ValueError("column count mismatch between x and feature_names")

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def d(self) -> int:
        return self.x.shape[1]

    def subset_rows(self, idx: np.ndarray) -> "Dataset":
        return Dataset(
            x=self.x[idx], y=tuple(self.y[i] for i in idx), feature_names=self.feature_names
        )

    def subset_columns(self, idx) -> "Dataset":
        idx = list(idx)
        return Dataset(
            x=self.x[:, idx],
            y=self.y,
            feature_names=tuple(self.feature_names[i] for i in idx),
        )
