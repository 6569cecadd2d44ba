import numpy as np
import pytest

from viscom.ml.baselines import baseline_predict

PAPER_Y = ["low"] * 43 + ["moderate"] * 41 + ["high"] * 28


def test_most_frequent_predicts_low():
    preds = baseline_predict("most_frequent", PAPER_Y, 5)
    assert preds == ["low"] * 5


def test_most_frequent_tie_breaks_smallest_class():
    preds = baseline_predict("most_frequent", ["b", "a"], 3)
    assert preds == ["a"] * 3


def test_stratified_matches_closed_form_expectation():
    # expected accuracy = sum p_i^2 = (43^2 + 41^2 + 28^2) / 112^2 = 0.34391
    expected = (43**2 + 41**2 + 28**2) / 112**2
    accs = []
    for seed in range(1000):
        preds = baseline_predict("stratified", PAPER_Y, len(PAPER_Y), seed=seed)
        accs.append(np.mean([t == p for t, p in zip(PAPER_Y, preds)]))
    assert float(np.mean(accs)) == pytest.approx(expected, abs=0.02)


def test_uniform_matches_one_third():
    accs = []
    for seed in range(1000):
        preds = baseline_predict("uniform", PAPER_Y, len(PAPER_Y), seed=seed)
        accs.append(np.mean([t == p for t, p in zip(PAPER_Y, preds)]))
    assert float(np.mean(accs)) == pytest.approx(1 / 3, abs=0.02)


def test_seeded_baselines_are_deterministic():
    a = baseline_predict("stratified", PAPER_Y, 20, seed=5)
    b = baseline_predict("stratified", PAPER_Y, 20, seed=5)
    assert a == b


def test_unknown_kind():
    with pytest.raises(ValueError):
        baseline_predict("best_guess", PAPER_Y, 1)
