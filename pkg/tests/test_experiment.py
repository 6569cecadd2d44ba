import json

import numpy as np
import pytest

from viscom.errors import ConfigError
from viscom.ml.experiment import (
    ExperimentConfig,
    build_settings,
    pfi_csv,
    report_csv,
    resolve_feature_set,
    run_experiment,
    run_importance,
)
from viscom.ml.synth import PLANTED_NAME, write_synthetic_tables

# Cheap single-combination grids: grid_search short-circuits, keeping these
# tests fast while exercising the full outer protocol.
LEAN_GRIDS = {
    "knn": [{"k": 5, "metric": "euclidean"}],
    "gnb": [{"var_floor": 1e-9}],
    "cart": [{"max_depth": 3, "min_leaf": 1}],
    "rf": [{"n_trees": 10, "max_depth": 3}],
    "adaboost": [{"rounds": 20}],
}


@pytest.fixture(scope="module")
def planted_tables(tmp_path_factory):
    out = tmp_path_factory.mktemp("synth")
    return write_synthetic_tables(out, seed=7)


def _config(**overrides):
    base = dict(
        feature_sets=["synth"],
        mode="full",
        gamma_policy="none",
        seed=5,
        grids=LEAN_GRIDS,
        baseline_draws=50,
    )
    base.update(overrides)
    return ExperimentConfig.from_dict(base)


def test_resolve_feature_set_prefix_matching():
    names = ("viscom.html.a", "viscom.visual.b", "texcom.c", "query.d")
    assert resolve_feature_set("viscom", names) == [0, 1]
    assert resolve_feature_set("viscom.html", names) == [0]
    assert resolve_feature_set("query", names) == [3]
    with pytest.raises(ConfigError):
        resolve_feature_set("webrel", names)


def test_subsets_mode_yields_eight_settings():
    names = tuple(f"synth.{g}.f{i}" for g in "abcd" for i in range(3))
    config = _config(mode="subsets", feature_sets=["synth.a", "synth.b", "synth.c", "synth.d"])
    settings = build_settings(config, names)
    assert len(settings) == 8
    assert [s.selection_label for s in settings] == [""] * 4 + ["grid"] * 4


def test_combination_mode_single_setting_with_per_group_selection():
    names = tuple([f"synth.a.f{i}" for i in range(12)] + [f"synth.b.f{i}" for i in range(12)])
    config = _config(mode="combination", feature_sets=["synth.a", "synth.b"])
    settings = build_settings(config, names)
    assert len(settings) == 1
    assert settings[0].policy.mode == "per_group"
    assert settings[0].policy.gamma == 10
    assert settings[0].selection_label == "fixed:10/set"


def test_unknown_feature_set_is_config_error(planted_tables):
    features_csv, labels_csv = planted_tables
    with pytest.raises(ConfigError):
        run_experiment(features_csv, labels_csv, _config(feature_sets=["nonexistent"]))


def test_unknown_config_key_rejected():
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"feature_sets": ["x"], "bogus": 1})


def test_bad_k_outer_is_config_error(planted_tables):
    features_csv, labels_csv = planted_tables
    with pytest.raises(ConfigError):
        run_experiment(features_csv, labels_csv, _config(k_outer=500))


def test_report_echoes_config_and_is_deterministic(planted_tables):
    features_csv, labels_csv = planted_tables
    config = _config()
    a = run_experiment(features_csv, labels_csv, config)
    b = run_experiment(features_csv, labels_csv, _config())
    assert a.to_json() == b.to_json()
    payload = json.loads(a.to_json())
    assert payload["config"]["seed"] == 5
    assert payload["config"]["feature_sets"] == ["synth"]
    assert payload["n_settings"] == 1
    assert payload["alpha_bon"] == 0.05


def test_report_csv_shape(planted_tables):
    features_csv, labels_csv = planted_tables
    report = run_experiment(features_csv, labels_csv, _config())
    text = report_csv(report)
    lines = text.strip().split("\n")
    assert lines[0].startswith("approach,f_sel,")
    assert len(lines) == 1 + 3 + 1  # header + 3 baselines + 1 setting
    assert lines[1].startswith("most_frequent,")


def test_planted_feature_dominates_with_lean_grids(planted_tables):
    features_csv, labels_csv = planted_tables
    config = _config(gamma_policy="fixed:1")
    report = run_experiment(features_csv, labels_csv, config)
    setting = report.settings[0]
    acc_mean, _ = setting.acc_stats()
    assert acc_mean >= 0.8
    assert setting.significant
    for clf in setting.classifiers:
        for selected in clf.fold_selected:
            assert selected == [PLANTED_NAME]


def test_baseline_rows_cover_three_kinds(planted_tables):
    features_csv, labels_csv = planted_tables
    report = run_experiment(features_csv, labels_csv, _config())
    assert [b["name"] for b in report.baselines] == ["most_frequent", "stratified", "uniform"]
    assert report.baseline_accuracy == report.baselines[0]["accuracy"]


def test_run_importance_counts_and_csv(planted_tables):
    features_csv, labels_csv = planted_tables
    config = _config(gamma_policy="fixed:3", repeats=10, k_outer=4)
    results = run_importance(features_csv, labels_csv, config)
    assert results, "expected at least one selected feature"
    planted = next(r for r in results if r.feature_name == PLANTED_NAME)
    assert planted.selection_count == 4  # selected in every outer fold
    assert planted.mean_delta == max(r.mean_delta for r in results)
    text = pfi_csv(results)
    assert text.splitlines()[0] == "feature,selection_count,mean_delta,std_delta"
    assert PLANTED_NAME in text
