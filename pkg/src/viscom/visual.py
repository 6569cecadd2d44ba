"""Screenshot-derived visual features.

Encoded-size features depend on the encoder, so the settings are pinned and
part of the external contract: PNG at zlib compression level 6 without
optimization passes, JPEG at quality 85 with 4:2:0 chroma subsampling.
"""

from __future__ import annotations

import io
import math

import numpy as np
from PIL import Image

from .snapshot import Screenshot

PNG_COMPRESS_LEVEL = 6
JPEG_QUALITY = 85
JPEG_SUBSAMPLING = 2  # Pillow code for 4:2:0

VISUAL_FEATURE_NAMES = (
    "avg_brightness",
    "avg_hue",
    "avg_colorfulness",
    "png_size",
    "jpg_size",
    "page_width",
    "page_height",
    "aspect_ratio",
)


def encode_png(s: Screenshot) -> bytes:
    buf = io.BytesIO()
    Image.fromarray(s.pixels, mode="RGB").save(
        buf, format="PNG", optimize=False, compress_level=PNG_COMPRESS_LEVEL
    )
    return buf.getvalue()


def encode_jpeg(s: Screenshot) -> bytes:
    buf = io.BytesIO()
    Image.fromarray(s.pixels, mode="RGB").save(
        buf, format="JPEG", quality=JPEG_QUALITY, subsampling=JPEG_SUBSAMPLING
    )
    return buf.getvalue()


def _hsv_channels(pixels: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-pixel H (degrees), S, V in [0, 1] from uint8 RGB."""
    rgb = pixels.reshape(-1, 3).astype(np.float64) / 255.0
    v = rgb.max(axis=1)
    mn = rgb.min(axis=1)
    delta = v - mn
    s = np.where(v > 0, delta / np.where(v > 0, v, 1.0), 0.0)

    r, g, b = rgb[:, 0], rgb[:, 1], rgb[:, 2]
    h = np.zeros_like(v)
    safe = np.where(delta > 0, delta, 1.0)
    is_r = (v == r) & (delta > 0)
    is_g = (v == g) & (delta > 0) & ~is_r
    is_b = (delta > 0) & ~is_r & ~is_g
    h[is_r] = 60.0 * (((g - b)[is_r] / safe[is_r]) % 6.0)
    h[is_g] = 60.0 * (((b - r)[is_g] / safe[is_g]) + 2.0)
    h[is_b] = 60.0 * (((r - g)[is_b] / safe[is_b]) + 4.0)
    h = h % 360.0
    return h, s, v


def circular_hue_mean(h_deg: np.ndarray, weights: np.ndarray) -> float:
    """Saturation-weighted circular mean of hue angles, in [0, 360).

    Plain averaging fails at the 0/360 seam, so hues are averaged as unit
    vectors. Pages with no chromatic pixels (all weights zero, or a perfectly
    balanced hue wheel) define the mean as 0.
    """
    rad = np.deg2rad(h_deg)
    x = float(np.sum(weights * np.cos(rad)))
    y = float(np.sum(weights * np.sin(rad)))
    if math.hypot(x, y) < 1e-12:
        return 0.0
    deg = math.degrees(math.atan2(y, x)) % 360.0
    return 0.0 if deg >= 360.0 else deg


def visual_features(s: Screenshot) -> np.ndarray:
    """The eight screenshot features, in registry order."""
    h, sat, v = _hsv_channels(s.pixels)
    n_px = s.width * s.height
    avg_brightness = float(v.mean())
    avg_hue = circular_hue_mean(h, sat)
    avg_colorfulness = float(sat.mean() + sat.std())
    png_size = len(encode_png(s)) / n_px
    jpg_size = len(encode_jpeg(s)) / n_px
    return np.asarray(
        [
            avg_brightness,
            avg_hue,
            avg_colorfulness,
            png_size,
            jpg_size,
            float(s.width),
            float(s.height),
            s.width / s.height,
        ],
        dtype=float,
    )
