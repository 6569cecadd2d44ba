"""Splittable deterministic random streams.

Every random task derives its own stream from the master seed and a path of
labels (e.g. seed, "fold", 3, "pfi", 17) by hashing the path with SHA-256
and using the first 8 bytes as a numpy Generator seed. Streams are
therefore independent of scheduling and worker count.
"""

from __future__ import annotations

import hashlib

import numpy as np


def derive_seed(master: int, *path) -> int:
    h = hashlib.sha256()
    h.update(str(int(master)).encode("ascii"))
    for part in path:
        h.update(b"/")
        h.update(str(part).encode("utf-8"))
    return int.from_bytes(h.digest()[:8], "big")


def derive_rng(master: int, *path) -> np.random.Generator:
    return np.random.default_rng(derive_seed(master, *path))
