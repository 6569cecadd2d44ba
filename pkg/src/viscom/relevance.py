"""Topic-fact relevance features over a pluggable embedding provider.

The default provider is a deterministic hashed bag of words: tokens are
lowercased, hashed with 32-bit FNV-1a into 1024 buckets, counted, and the
bucket vector is L2-normalized. Empty text maps to the zero vector and
cosine against it is defined as 0. A remote provider speaking the POST
/embed contract can be plugged in instead.
"""

from __future__ import annotations

import json
import threading
import urllib.error
import urllib.request
from dataclasses import dataclass

import numpy as np

from .errors import ProviderFailure
from .textfeat import MainText, tokenize

DEFAULT_EMBED_DIM = 1024

DEFAULT_FACTS = (
    "Lightning forms when ice particles inside a storm cloud collide and separate electric charge.",
    "The upper part of a thunderstorm cloud carries positive charge while the lower part turns negative.",
    "A lightning flash happens when the electric field grows strong enough to ionize a channel of air.",
    "Thunder is the sound of air expanding explosively after being heated by a lightning channel.",
    "A stepped leader descends from the cloud and connects with an upward streamer from the ground.",
    "The return stroke carries the bright visible current from the ground back up to the cloud.",
    "Thunderstorms need moisture, unstable air, and a lifting force to develop.",
    "Warm humid air rising and cooling condenses into towering cumulonimbus clouds.",
    "Most lightning strokes occur within the cloud rather than between cloud and ground.",
    "The air in a lightning channel is heated to roughly thirty thousand kelvin in microseconds.",
)


@dataclass(frozen=True)
class FactSet:
    facts: tuple[str, ...]
    provider_id: str = "hashed-bag"

    def __post_init__(self):
        if not self.facts:
            raise ValueError("fact set must be non-empty")


def load_facts(path) -> FactSet:
    payload = json.loads(open(path, encoding="utf-8").read())
    return FactSet(facts=tuple(str(f) for f in payload["facts"]))


def fnv1a_32(data: str) -> int:
    """32-bit FNV-1a over the UTF-8 bytes of the input."""
    h = 0x811C9DC5
    for byte in data.encode("utf-8"):
        h = ((h ^ byte) * 0x01000193) & 0xFFFFFFFF
    return h


def hash_bucket(token: str, dim: int = DEFAULT_EMBED_DIM) -> int:
    return fnv1a_32(token) % dim


class HashedBagEmbedding:
    """Deterministic hashed bag-of-words provider (the built-in default)."""

    def __init__(self, dim: int = DEFAULT_EMBED_DIM):
        self.dim = dim

    def embed(self, text: str) -> np.ndarray:
        vec = np.zeros(self.dim, dtype=float)
        for token in tokenize(text):
            vec[hash_bucket(token.lower(), self.dim)] += 1.0
        norm = np.linalg.norm(vec)
        if norm > 0:
            vec /= norm
        return vec


def default_embed(text: str) -> np.ndarray:
    return HashedBagEmbedding().embed(text)


class RemoteEmbedding:
    """Provider speaking the POST /embed HTTP contract.

    Request body {"texts": [...]} must yield {"dim": int, "vectors": [...]}
    with unit-norm rows; anything else raises ProviderFailure. At most
    ``max_in_flight`` requests run concurrently.
    """

    def __init__(self, base_url: str, max_in_flight: int = 4, timeout: float = 30.0):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self._gate = threading.Semaphore(max_in_flight)
        self.dim = self._probe_dim()

    def _post(self, texts: list[str]) -> dict:
        body = json.dumps({"texts": texts}).encode("utf-8")
        req = urllib.request.Request(
            self.base_url + "/embed", data=body, headers={"Content-Type": "application/json"}
        )
        with self._gate:
            try:
                with urllib.request.urlopen(req, timeout=self.timeout) as resp:
                    if resp.status != 200:
                        raise ProviderFailure(f"provider returned HTTP {resp.status}")
                    payload = json.loads(resp.read().decode("utf-8"))
            except (urllib.error.URLError, json.JSONDecodeError, OSError) as exc:
                raise ProviderFailure(f"provider request failed: {exc}") from exc
        if "dim" not in payload or "vectors" not in payload:
            raise ProviderFailure("provider response missing dim/vectors")
        return payload

    def _probe_dim(self) -> int:
        return int(self._post([""])["dim"])

    def embed(self, text: str) -> np.ndarray:
        payload = self._post([text])
        vectors = payload["vectors"]
        if int(payload["dim"]) != self.dim or len(vectors) != 1:
            raise ProviderFailure("provider response has inconsistent shape")
        vec = np.asarray(vectors[0], dtype=float)
        return _check_vector(vec, self.dim)


def _check_vector(vec: np.ndarray, dim: int) -> np.ndarray:
    if vec.shape != (dim,):
        raise ProviderFailure(f"expected vector of length {dim}, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)):
        raise ProviderFailure("provider returned non-finite values")
    norm = float(np.linalg.norm(vec))
    if norm > 0 and abs(norm - 1.0) > 1e-6:
        raise ProviderFailure(f"provider vector norm {norm} is not unit")
    return vec


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine of two unit-or-zero vectors; 0 when either side is zero."""
    if not np.any(a) or not np.any(b):
        return 0.0
    return float(np.dot(a, b))


def relevance_features(t: MainText, f: FactSet, provider=None) -> np.ndarray:
    """Per fact: the maximum cosine similarity over the page's paragraphs."""
    if provider is None:
        provider = HashedBagEmbedding()
    n = len(f.facts)
    if not t.paragraphs:
        return np.zeros(n, dtype=float)
    para_vecs = [_check_vector(np.asarray(provider.embed(p), dtype=float), provider.dim)
                 for p in t.paragraphs]
    out = np.zeros(n, dtype=float)
    for j, fact in enumerate(f.facts):
        fact_vec = _check_vector(np.asarray(provider.embed(fact), dtype=float), provider.dim)
        out[j] = max(cosine(pv, fact_vec) for pv in para_vecs)
    return out


def webrel_feature_names(n_facts: int = 10) -> tuple[str, ...]:
    return tuple(f"fact_{i + 1:02d}" for i in range(n_facts))
