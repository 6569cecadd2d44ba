import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import gammaln

from viscom.errors import DegenerateSample, LengthMismatch
from viscom.ml.stats import bonferroni, pearson, t_cdf, t_test_one_sided


def test_pearson_perfect_positive():
    assert pearson([1, 2, 3], [2, 4, 6]) == pytest.approx(1.0, abs=1e-12)


def test_pearson_perfect_negative():
    assert pearson([1, 2, 3], [3, 2, 1]) == pytest.approx(-1.0, abs=1e-12)


def test_pearson_constant_series_is_zero():
    assert pearson([5, 5, 5], [1, 2, 3]) == 0.0


def test_pearson_length_mismatch():
    with pytest.raises(LengthMismatch):
        pearson([1, 2], [1, 2, 3])


def test_pearson_affine_invariance():
    rng = np.random.default_rng(0)
    x = rng.normal(size=30)
    assert pearson(x, 3.5 * x + 2.0) == pytest.approx(1.0, abs=1e-9)
    y = rng.normal(size=30)
    assert pearson(x, y) == pytest.approx(pearson(2 * x + 1, 5 * y - 3), abs=1e-9)


def _t_density(x, df):
    log_c = gammaln((df + 1) / 2) - gammaln(df / 2) - 0.5 * math.log(df * math.pi)
    return math.exp(log_c) * (1 + x * x / df) ** (-(df + 1) / 2)


def upper_tail_by_quadrature(t, df):
    value, _ = quad(_t_density, t, np.inf, args=(df,))
    return value


def test_hand_computed_example():
    # mean 0.6, sample std 0.1, m=3: t = (0.6-0.4)/(0.1/sqrt(3)) = 3.464, df 2
    p = t_test_one_sided([0.5, 0.6, 0.7], 0.4)
    assert p == pytest.approx(0.0371, abs=5e-4)
    # exact check against the quadrature oracle
    t = (0.6 - 0.4) / (np.std([0.5, 0.6, 0.7], ddof=1) / math.sqrt(3))
    assert t == pytest.approx(3.4641016, abs=1e-6)
    assert p == pytest.approx(upper_tail_by_quadrature(t, 2), abs=1e-9)


def test_cdf_matches_quadrature_for_df_2_to_30():
    for df in range(2, 31):
        for t in (-2.5, -0.7, 0.0, 0.4, 1.3, 2.2, 3.7):
            oracle = upper_tail_by_quadrature(t, df)
            assert 1.0 - t_cdf(t, df) == pytest.approx(oracle, abs=1e-6), (df, t)


def test_degenerate_sample():
    with pytest.raises(DegenerateSample):
        t_test_one_sided([0.4, 0.4, 0.4], 0.4)
    with pytest.raises(DegenerateSample):
        t_test_one_sided([0.4], 0.3)


def test_bonferroni_paper_values():
    assert bonferroni(0.05, 5) == 0.01
    assert bonferroni(0.05, 8) == 0.00625
