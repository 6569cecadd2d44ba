"""Synthetic session tables for end-to-end harness validation.

The planted generator emits sessions whose knowledge gain is a noisy
function of exactly one feature; every other column is independent noise.
Feature names are spread over four prefix groups (synth.a .. synth.d) so
both the full and subsets experiment modes can address them.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from ..rng import derive_rng
from ..session import label_classes
from ..tables import write_feature_csv, write_labels_csv

GROUPS = ("synth.a", "synth.b", "synth.c", "synth.d")
PLANTED_NAME = "synth.a.planted"


def synthetic_tables(
    n: int = 112,
    n_noise: int = 19,
    noise_sigma: float = 0.02,
    seed: int = 7,
    pure_noise: bool = False,
) -> tuple[list[str], tuple[str, ...], np.ndarray, list[float]]:
    """Returns (user_ids, feature_names, matrix, kg values)."""
    rng = derive_rng(seed, "synthetic", "kg")
    kgs = np.clip(rng.normal(0.22, 0.18, size=n), -1.0, 1.0)

    names = [PLANTED_NAME]
    for i in range(n_noise):
        names.append(f"{GROUPS[(i + 1) % len(GROUPS)]}.noise_{i:02d}")

    noise_rng = derive_rng(seed, "synthetic", "noise")
    matrix = noise_rng.normal(0.0, 1.0, size=(n, len(names)))
    if pure_noise:
        matrix[:, 0] = noise_rng.normal(0.0, 1.0, size=n)
    else:
        matrix[:, 0] = kgs + derive_rng(seed, "synthetic", "planted").normal(0.0, noise_sigma, size=n)

    user_ids = [f"user_{i:03d}" for i in range(n)]
    return user_ids, tuple(names), matrix, [float(v) for v in kgs]


def write_synthetic_tables(
    out_dir: str | Path,
    n: int = 112,
    n_noise: int = 19,
    noise_sigma: float = 0.02,
    seed: int = 7,
    pure_noise: bool = False,
) -> tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    user_ids, names, matrix, kgs = synthetic_tables(n, n_noise, noise_sigma, seed, pure_noise)
    labels = label_classes(kgs)
    features_path = write_feature_csv(out / "features.csv", "user_id", user_ids, names, matrix)
    labels_path = write_labels_csv(out / "labels.csv", user_ids, labels)
    return features_path, labels_path
