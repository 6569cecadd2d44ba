"""Confusion-matrix metrics: per-class F1, macro F1, micro accuracy."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ClassCounts:
    tp: int
    fp: int
    tn: int
    fn: int


@dataclass(frozen=True)
class ConfusionMatrix:
    classes: tuple
    counts: tuple[ClassCounts, ...]
    n: int

    @staticmethod
    def from_labels(y_true, y_pred, classes=None) -> "ConfusionMatrix":
        y_true = list(y_true)
        y_pred = list(y_pred)
        if len(y_true) != len(y_pred):
            raise ValueError("prediction count mismatch")
        if classes is None:
            classes = sorted(set(y_true) | set(y_pred))
        counts = []
        for cls in classes:
            tp = sum(1 for t, p in zip(y_true, y_pred) if t == cls and p == cls)
            fp = sum(1 for t, p in zip(y_true, y_pred) if t != cls and p == cls)
            fn = sum(1 for t, p in zip(y_true, y_pred) if t == cls and p != cls)
            tn = len(y_true) - tp - fp - fn
            counts.append(ClassCounts(tp=tp, fp=fp, tn=tn, fn=fn))
        return ConfusionMatrix(classes=tuple(classes), counts=tuple(counts), n=len(y_true))


def macro_f1(cm: ConfusionMatrix) -> float:
    """Unweighted mean of per-class F1 = 2TP / (2TP + FP + FN)."""
    scores = []
    for c in cm.counts:
        denom = 2 * c.tp + c.fp + c.fn
        scores.append(2 * c.tp / denom if denom > 0 else 0.0)
    return sum(scores) / len(scores) if scores else 0.0


def micro_accuracy(cm: ConfusionMatrix) -> float:
    correct = sum(c.tp for c in cm.counts)
    return correct / cm.n if cm.n > 0 else 0.0
