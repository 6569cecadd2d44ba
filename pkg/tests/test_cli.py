import json
import shutil

import numpy as np
import pytest
from click.testing import CliRunner

from viscom.cli import cli, render_report
from viscom.tables import read_feature_csv, read_labels_csv

from .conftest import FIXTURES

BUNDLES = FIXTURES / "bundles"
SESSIONS = FIXTURES / "sessions.jsonl"

LEAN_CONFIG = {
    "feature_sets": ["viscom", "texcom", "webrel", "query"],
    "mode": "full",
    "gamma_policy": "none",
    "k_outer": 3,
    "k_inner": 2,
    "seed": 11,
    "grids": {
        "knn": [{"k": 1, "metric": "euclidean"}],
        "gnb": [{"var_floor": 1e-9}],
        "cart": [{"max_depth": 3, "min_leaf": 1}],
        "rf": [{"n_trees": 5, "max_depth": 3}],
        "adaboost": [{"rounds": 5}],
    },
    "classifiers": ["knn", "gnb", "cart"],
    "baseline_draws": 20,
}


def run_cli(*args):
    return CliRunner().invoke(cli, [str(a) for a in args], catch_exceptions=False)


@pytest.fixture(scope="module")
def extracted(tmp_path_factory):
    out = tmp_path_factory.mktemp("extract")
    result = run_cli("extract", BUNDLES, "--out-dir", out)
    assert result.exit_code == 0, result.output
    return out


def test_extract_five_pages_156_columns(extracted):
    _, ids, names, matrix = read_feature_csv(extracted / "features_pages.csv")
    assert len(ids) == 5
    assert len(names) == 156
    assert matrix.shape == (5, 156)
    assert not np.isnan(matrix).any()
    assert ids == sorted(ids)


def test_extract_writes_registries(extracted):
    html_names = json.loads((extracted / "features_html.json").read_text())
    aest_names = json.loads((extracted / "features_aesthetics.json").read_text())
    assert len(html_names) == 31
    assert len(aest_names) == 70


def test_extract_manifest_hashes_outputs(extracted):
    manifest = json.loads((extracted / "run_manifest_extract.json").read_text())
    assert manifest["command"] == "extract"
    assert "features_pages.csv" in manifest["outputs"]
    import hashlib

    digest = hashlib.sha256((extracted / "features_pages.csv").read_bytes()).hexdigest()
    assert manifest["outputs"]["features_pages.csv"] == digest


def test_extract_empty_root_exits_2(tmp_path):
    empty = tmp_path / "empty"
    empty.mkdir()
    result = CliRunner().invoke(cli, ["extract", str(empty), "--out-dir", str(tmp_path / "o")])
    assert result.exit_code == 2


def test_extract_unreadable_bundle_keeps_row(tmp_path):
    root = tmp_path / "root"
    shutil.copytree(BUNDLES, root)
    (root / "p03_formpage" / "geometry.json").write_text("{not valid json", "utf-8")
    out = tmp_path / "out"
    result = CliRunner().invoke(cli, ["extract", str(root), "--out-dir", str(out)])
    assert result.exit_code == 0
    _, ids, _, matrix = read_feature_csv(out / "features_pages.csv")
    assert len(ids) == 5
    bad_row = matrix[ids.index("p03_formpage")]
    assert np.isnan(bad_row).all()
    good_row = matrix[ids.index("p01_article")]
    assert not np.isnan(good_row).any()


def test_extract_deterministic_across_worker_counts(tmp_path):
    out1, out2 = tmp_path / "w1", tmp_path / "w2"
    assert run_cli("extract", BUNDLES, "--out-dir", out1, "--workers", 1).exit_code == 0
    assert run_cli("extract", BUNDLES, "--out-dir", out2, "--workers", 2).exit_code == 0
    a = (out1 / "features_pages.csv").read_bytes()
    b = (out2 / "features_pages.csv").read_bytes()
    assert a == b


@pytest.fixture(scope="module")
def aggregated(extracted, tmp_path_factory):
    out = tmp_path_factory.mktemp("aggregate")
    result = run_cli("aggregate", SESSIONS, extracted / "features_pages.csv", "--out-dir", out)
    assert result.exit_code == 0, result.output
    return out


def test_aggregate_three_sessions_167_columns(aggregated):
    _, ids, names, matrix = read_feature_csv(aggregated / "features.csv")
    assert ids == ["alice", "bob", "carol"]
    assert len(names) == 167
    assert matrix.shape == (3, 167)


def test_aggregate_serp_only_session_has_missing_page_cells(aggregated):
    _, ids, names, matrix = read_feature_csv(aggregated / "features.csv")
    carol = matrix[ids.index("carol")]
    page_part = carol[:156]
    query_part = carol[156:]
    assert np.isnan(page_part).all()
    assert not np.isnan(query_part).any()


def test_aggregate_labels(aggregated):
    ids, kgs, zs, classes = read_labels_csv(aggregated / "labels.csv")
    assert ids == ["alice", "bob", "carol"]
    np.testing.assert_allclose(kgs, [0.4, 0.1, 0.0])
    assert set(classes) <= {"low", "moderate", "high"}


def test_aggregate_missing_snapshot_reference_exits_2(extracted, tmp_path):
    bad = tmp_path / "sessions.jsonl"
    bad.write_text(
        json.dumps(
            {
                "user_id": "dave",
                "events": [
                    {"timestamp": 0.0, "url": "https://x", "page_type": "content",
                     "snapshot_id": "missing_page"}
                ],
                "test": {"pre_correct": 1, "post_correct": 2, "n_items": 10},
            }
        )
        + "\n"
    )
    result = CliRunner().invoke(
        cli,
        ["aggregate", str(bad), str(extracted / "features_pages.csv"),
         "--out-dir", str(tmp_path / "out")],
    )
    assert result.exit_code == 2


def test_aggregate_rerun_is_byte_identical(extracted, tmp_path):
    out1, out2 = tmp_path / "a1", tmp_path / "a2"
    run_cli("aggregate", SESSIONS, extracted / "features_pages.csv", "--out-dir", out1)
    run_cli("aggregate", SESSIONS, extracted / "features_pages.csv", "--out-dir", out2)
    assert (out1 / "features.csv").read_bytes() == (out2 / "features.csv").read_bytes()
    assert (out1 / "labels.csv").read_bytes() == (out2 / "labels.csv").read_bytes()


@pytest.fixture(scope="module")
def synthetic_tables(tmp_path_factory):
    from viscom.ml.synth import write_synthetic_tables

    out = tmp_path_factory.mktemp("synthcli")
    return write_synthetic_tables(out, seed=3)


def test_experiment_and_report_cli(synthetic_tables, tmp_path):
    features_csv, labels_csv = synthetic_tables
    config_path = tmp_path / "experiment.json"
    config = dict(LEAN_CONFIG, feature_sets=["synth"])
    config_path.write_text(json.dumps(config))
    out = tmp_path / "exp"
    result = run_cli("experiment", features_csv, labels_csv,
                     "--config", config_path, "--out-dir", out)
    assert result.exit_code == 0, result.output
    assert (out / "report.json").is_file()
    assert (out / "report.csv").is_file()

    rendered = run_cli("report", out / "report.json")
    assert rendered.exit_code == 0
    assert "most_frequent" in rendered.output
    # rendering a frozen report twice is byte-identical
    payload = json.loads((out / "report.json").read_text())
    assert render_report(payload) == render_report(payload)


def test_experiment_rerun_byte_identical(synthetic_tables, tmp_path):
    features_csv, labels_csv = synthetic_tables
    config_path = tmp_path / "experiment.json"
    config_path.write_text(json.dumps(dict(LEAN_CONFIG, feature_sets=["synth"])))
    out1, out2 = tmp_path / "e1", tmp_path / "e2"
    run_cli("experiment", features_csv, labels_csv, "--config", config_path, "--out-dir", out1)
    run_cli("experiment", features_csv, labels_csv, "--config", config_path, "--out-dir", out2)
    assert (out1 / "report.json").read_bytes() == (out2 / "report.json").read_bytes()
    assert (out1 / "report.csv").read_bytes() == (out2 / "report.csv").read_bytes()


def test_importance_cli_and_plot(synthetic_tables, tmp_path):
    features_csv, labels_csv = synthetic_tables
    config = dict(LEAN_CONFIG, feature_sets=["synth"], gamma_policy="fixed:3",
                  repeats=5, k_outer=3, pfi_classifier="knn")
    config_path = tmp_path / "experiment.json"
    config_path.write_text(json.dumps(config))
    out = tmp_path / "pfi"
    result = run_cli("importance", features_csv, labels_csv,
                     "--config", config_path, "--out-dir", out)
    assert result.exit_code == 0, result.output
    text = (out / "pfi.csv").read_text()
    assert text.splitlines()[0] == "feature,selection_count,mean_delta,std_delta"

    # report --plot draws the PFI bars
    exp_out = tmp_path / "exp"
    run_cli("experiment", features_csv, labels_csv, "--config", config_path,
            "--out-dir", exp_out)
    plot = tmp_path / "pfi.png"
    result = run_cli("report", exp_out / "report.json", "--pfi", out / "pfi.csv",
                     "--plot", plot)
    assert result.exit_code == 0, result.output
    assert plot.is_file() and plot.stat().st_size > 0


def test_experiment_bad_config_exits_2(synthetic_tables, tmp_path):
    features_csv, labels_csv = synthetic_tables
    config_path = tmp_path / "experiment.json"
    config_path.write_text(json.dumps(dict(LEAN_CONFIG, feature_sets=["nonexistent"])))
    from viscom.cli import main
    import sys

    argv = ["viscom", "experiment", str(features_csv), str(labels_csv),
            "--config", str(config_path), "--out-dir", str(tmp_path / "out")]
    old = sys.argv
    sys.argv = argv
    try:
        with pytest.raises(SystemExit) as exc:
            main()
        assert exc.value.code == 2
    finally:
        sys.argv = old
