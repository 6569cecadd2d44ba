"""Evaluation harness: cross-validation, classifiers, baselines, reports."""
