"""Correlation and significance testing primitives."""

from __future__ import annotations

import math

import numpy as np
from scipy.special import betainc

from ..errors import DegenerateSample, LengthMismatch


def pearson(x, y) -> float:
    """Pearson correlation; defined as 0 when either series is constant."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise LengthMismatch(f"series lengths differ: {x.shape} vs {y.shape}")
    if x.size < 2:
        raise LengthMismatch("need at least two points")
    xd = x - x.mean()
    yd = y - y.mean()
    sx = float(np.sqrt(np.sum(xd * xd)))
    sy = float(np.sqrt(np.sum(yd * yd)))
    if sx == 0.0 or sy == 0.0:
        return 0.0
    return float(np.sum(xd * yd) / (sx * sy))


def t_cdf(t: float, df: int) -> float:
    """Student-t CDF via the regularized incomplete beta function."""
    if df <= 0:
        raise ValueError("df must be positive")
    x = df / (df + t * t)
    tail = 0.5 * float(betainc(df / 2.0, 0.5, x))
    return 1.0 - tail if t >= 0 else tail


def t_test_one_sided(values, baseline: float) -> float:
    """One-sample t-test p-value for the alternative mean > baseline.

    Uses the sample standard deviation (m - 1 denominator); a zero-variance
    sample is degenerate and raises.
    """
    arr = np.asarray(values, dtype=float)
    m = arr.size
    if m < 2:
        raise DegenerateSample("need at least two values")
    if np.all(arr == arr[0]):
        raise DegenerateSample("sample has zero variance")
    s = float(arr.std(ddof=1))
    if s == 0.0 or not math.isfinite(s):
        raise DegenerateSample("sample has zero variance")
    t = (float(arr.mean()) - baseline) / (s / math.sqrt(m))
    return 1.0 - t_cdf(t, m - 1)


def bonferroni(alpha: float, n_settings: int) -> float:
    return alpha / n_settings
