import numpy as np
import pytest

from viscom.ml.metrics import ConfusionMatrix, macro_f1, micro_accuracy


def test_perfect_predictions():
    y = ["a", "b", "c", "a"]
    cm = ConfusionMatrix.from_labels(y, y)
    assert macro_f1(cm) == 1.0
    assert micro_accuracy(cm) == 1.0


def test_always_low_on_paper_class_counts():
    # Most-frequent on 43/41/28: accuracy 43/112 = 0.3839,
    # macro F1 = (2*43/(2*43+69))/3 = 0.1849
    y = ["low"] * 43 + ["moderate"] * 41 + ["high"] * 28
    cm = ConfusionMatrix.from_labels(y, ["low"] * 112)
    assert micro_accuracy(cm) == pytest.approx(43 / 112)
    assert macro_f1(cm) == pytest.approx((2 * 43 / (2 * 43 + 69)) / 3)
    assert micro_accuracy(cm) == pytest.approx(0.384, abs=5e-4)
    assert macro_f1(cm) == pytest.approx(0.185, abs=5e-4)


def test_single_wrong_prediction():
    cm = ConfusionMatrix.from_labels(["a"], ["b"])
    assert micro_accuracy(cm) == 0.0


def brute_force_metrics(y_true, y_pred, classes):
    """Independent recomputation straight from the metric definitions."""
    f1s = []
    for cls in classes:
        tp = sum(1 for t, p in zip(y_true, y_pred) if t == cls and p == cls)
        fp = sum(1 for t, p in zip(y_true, y_pred) if t != cls and p == cls)
        fn = sum(1 for t, p in zip(y_true, y_pred) if t == cls and p != cls)
        f1s.append(2 * tp / (2 * tp + fp + fn) if (2 * tp + fp + fn) else 0.0)
    acc = sum(1 for t, p in zip(y_true, y_pred) if t == p) / len(y_true)
    return sum(f1s) / len(f1s), acc


def test_fuzz_against_brute_force():
    rng = np.random.default_rng(99)
    classes = ["low", "moderate", "high"]
    for _ in range(1000):
        n = int(rng.integers(1, 40))
        y_true = [classes[i] for i in rng.integers(0, 3, n)]
        y_pred = [classes[i] for i in rng.integers(0, 3, n)]
        cm = ConfusionMatrix.from_labels(y_true, y_pred, classes)
        expected_f1, expected_acc = brute_force_metrics(y_true, y_pred, classes)
        assert macro_f1(cm) == pytest.approx(expected_f1, abs=1e-12)
        assert micro_accuracy(cm) == pytest.approx(expected_acc, abs=1e-12)


def test_counts_are_consistent():
    y_true = ["a", "a", "b", "c"]
    y_pred = ["a", "b", "b", "b"]
    cm = ConfusionMatrix.from_labels(y_true, y_pred, ["a", "b", "c"])
    for counts in cm.counts:
        assert counts.tp + counts.fp + counts.tn + counts.fn == cm.n
