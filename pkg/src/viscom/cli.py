"""Command-line entry point: extract, aggregate, experiment, importance,
report.

Exit codes: 0 success, 1 internal error, 2 user or configuration error.
Every command writes a run manifest (run_manifest_<command>.json) whose
hashes cover the emitted output files.
"""

from __future__ import annotations

import hashlib
import json
import sys
from datetime import datetime, timezone
from importlib import metadata
from pathlib import Path

import click
import numpy as np

from .errors import ConfigError, ViscomError
from .extract import extract_corpus
from .ml.experiment import (
    ExperimentConfig,
    pfi_csv,
    report_csv,
    run_experiment,
    run_importance,
)
from .queries import query_features
from .registry import QUERY_COLUMNS, export_registries, page_columns
from .relevance import DEFAULT_FACTS, FactSet, load_facts
from .session import FeatureVector, aggregate_session, compute_kg, filter_content_pages, label_classes
from .snapshot import load_sessions
from .tables import read_feature_csv, write_feature_csv, write_labels_csv

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _write_manifest(command: str, out_dir: Path, inputs: list[str], outputs: list[Path],
                    seed: int | None, config_path: str | None):
    try:
        version = metadata.version("viscom")
    except metadata.PackageNotFoundError:
        version = "unknown"
    manifest = {
        "command": command,
        "config": config_path,
        "inputs": inputs,
        "seed": seed,
        "tool_version": version,
        "started_at": _write_manifest.started_at,
        "finished_at": datetime.now(timezone.utc).isoformat(),
        "outputs": {p.name: _sha256(p) for p in outputs},
    }
    (out_dir / f"run_manifest_{command}.json").write_text(
        json.dumps(manifest, indent=1, sort_keys=True) + "\n", "utf-8"
    )


def _begin():
    _write_manifest.started_at = datetime.now(timezone.utc).isoformat()


@click.group()
def cli():
    """Visual complexity extraction and knowledge-gain experiments."""


@cli.command()
@click.argument("snapshot_root", type=click.Path(exists=True, file_okay=False))
@click.option("--out-dir", type=click.Path(file_okay=False), default=".", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--facts", "facts_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="facts.json with the topic fact list (default: shipped list)")
@click.option("--provider-url", default=None, help="remote embedding endpoint base URL")
def extract(snapshot_root, out_dir, seed, workers, facts_path, provider_url):
    """Extract per-page features from every bundle under SNAPSHOT_ROOT."""
    _begin()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    facts = load_facts(facts_path) if facts_path else FactSet(facts=DEFAULT_FACTS)

    ids, matrix, errors = extract_corpus(snapshot_root, facts, provider_url, workers)
    if not ids:
        click.echo("error: no snapshot bundles found", err=True)
        sys.exit(EXIT_USAGE)
    for page_id, message in sorted(errors.items()):
        click.echo(f"warning: {page_id}: {message}", err=True)

    columns = page_columns(len(facts.facts))
    features_path = write_feature_csv(out / "features_pages.csv", "page_id", ids, columns, matrix)
    registry_paths = export_registries(out)
    _write_manifest("extract", out, [str(snapshot_root)], [features_path, *registry_paths],
                    seed, None)
    click.echo(f"extracted {len(ids) - len(errors)}/{len(ids)} pages -> {features_path}")
    if len(errors) == len(ids):
        sys.exit(EXIT_INTERNAL)


@cli.command()
@click.argument("sessions_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("features_pages", type=click.Path(exists=True, dir_okay=False))
@click.option("--out-dir", type=click.Path(file_okay=False), default=".", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def aggregate(sessions_file, features_pages, out_dir, seed):
    """Aggregate page features into per-session rows plus KG labels."""
    _begin()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    sessions = load_sessions(sessions_file)
    _, page_ids, page_names, page_matrix = read_feature_csv(features_pages)
    by_id = {pid: i for i, pid in enumerate(page_ids)}

    sessions = sorted(sessions, key=lambda s: s.user_id)
    rows, user_ids, kgs = [], [], []
    for s in sessions:
        pages = []
        for ev in filter_content_pages(s):
            if ev.snapshot_id is None:
                continue
            if ev.snapshot_id not in by_id:
                click.echo(f"error: session {s.user_id} references missing snapshot "
                           f"{ev.snapshot_id!r}", err=True)
                sys.exit(EXIT_USAGE)
            pages.append(FeatureVector(names=page_names,
                                       values=page_matrix[by_id[ev.snapshot_id]],
                                       scope="page"))
        query_vec = FeatureVector(names=QUERY_COLUMNS, values=query_features(s), scope="session")
        agg = aggregate_session(pages, query_vec, page_names=page_names)
        rows.append(agg.values)
        user_ids.append(s.user_id)
        kgs.append(compute_kg(s.test))

    if not rows:
        click.echo("error: no sessions found", err=True)
        sys.exit(EXIT_USAGE)
    session_names = tuple(page_names) + QUERY_COLUMNS
    features_path = write_feature_csv(out / "features.csv", "user_id", user_ids,
                                      session_names, np.vstack(rows))
    labels = label_classes(kgs)
    labels_path = write_labels_csv(out / "labels.csv", user_ids, labels)
    _write_manifest("aggregate", out, [str(sessions_file), str(features_pages)],
                    [features_path, labels_path], seed, None)
    click.echo(f"aggregated {len(user_ids)} sessions -> {features_path}")


def _load_config(config_path: str | None, seed: int | None) -> ExperimentConfig:
    if config_path is None:
        raise ConfigError("--config is required")
    config = ExperimentConfig.from_json(config_path)
    if seed is not None:
        config.seed = seed
    return config


@cli.command()
@click.argument("features_csv", type=click.Path(exists=True, dir_okay=False))
@click.argument("labels_csv", type=click.Path(exists=True, dir_okay=False))
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--out-dir", type=click.Path(file_okay=False), default=".", show_default=True)
@click.option("--seed", type=int, default=None, help="override the config seed")
def experiment(features_csv, labels_csv, config_path, out_dir, seed):
    """Run the cross-validated classification experiment."""
    _begin()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    config = _load_config(config_path, seed)
    report = run_experiment(features_csv, labels_csv, config)
    json_path = out / "report.json"
    json_path.write_text(report.to_json(), "utf-8")
    csv_path = out / "report.csv"
    csv_path.write_text(report_csv(report), "utf-8")
    _write_manifest("experiment", out, [str(features_csv), str(labels_csv)],
                    [json_path, csv_path], config.seed, str(config_path))
    click.echo(f"report -> {json_path}")


@cli.command()
@click.argument("features_csv", type=click.Path(exists=True, dir_okay=False))
@click.argument("labels_csv", type=click.Path(exists=True, dir_okay=False))
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--out-dir", type=click.Path(file_okay=False), default=".", show_default=True)
@click.option("--seed", type=int, default=None, help="override the config seed")
def importance(features_csv, labels_csv, config_path, out_dir, seed):
    """Permutation feature importance across the outer folds."""
    _begin()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    config = _load_config(config_path, seed)
    results = run_importance(features_csv, labels_csv, config)
    csv_path = out / "pfi.csv"
    csv_path.write_text(pfi_csv(results), "utf-8")
    _write_manifest("importance", out, [str(features_csv), str(labels_csv)],
                    [csv_path], config.seed, str(config_path))
    click.echo(f"importance -> {csv_path}")


def render_report(payload: dict) -> str:
    """Human-readable table mirroring the report grouping."""
    lines = []
    lines.append(f"alpha_bon = {payload['alpha_bon']:.6g} "
                 f"(n_settings = {payload['n_settings']})")
    lines.append(f"baseline accuracy (most frequent) = {payload['baseline_accuracy'] * 100:.1f}%")
    lines.append("")
    header = f"{'approach':<40}{'sel':<14}{'F1 (macro)':<18}{'accuracy':<18}{'p':<10}"
    lines.append(header)
    lines.append("-" * len(header))
    for b in payload["baselines"]:
        lines.append(
            f"{b['name']:<40}{'':<14}"
            f"{b['macro_f1'] * 100:>6.1f}{'':<12}{b['accuracy'] * 100:>6.1f}{'':<12}"
        )
    for s in payload["settings"]:
        p = "" if s["p_value"] is None else f"{s['p_value']:.3f}"
        star = " *" if s["significant"] else ""
        lines.append(
            f"{s['name']:<40}{s['selection']:<14}"
            f"{s['f1_mean'] * 100:>6.1f} +- {s['f1_std'] * 100:<8.1f}"
            f"{s['acc_mean'] * 100:>6.1f} +- {s['acc_std'] * 100:<8.1f}{p:<10}{star}"
        )
    return "\n".join(lines) + "\n"


@cli.command()
@click.argument("report_json", type=click.Path(exists=True, dir_okay=False))
@click.option("--pfi", "pfi_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--plot", "plot_path", type=click.Path(dir_okay=False), default=None,
              help="write a bar chart of the permutation importances")
def report(report_json, pfi_path, plot_path):
    """Render a report.json as a readable table, optionally plotting PFI."""
    payload = json.loads(Path(report_json).read_text("utf-8"))
    click.echo(render_report(payload), nl=False)
    if plot_path:
        if not pfi_path:
            click.echo("error: --plot requires --pfi", err=True)
            sys.exit(EXIT_USAGE)
        import csv as _csv

        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        with open(pfi_path, newline="", encoding="utf-8") as fh:
            rows = list(_csv.DictReader(fh))
        names = [f"{r['feature']} [{r['selection_count']}]" for r in rows]
        means = [float(r["mean_delta"]) for r in rows]
        stds = [float(r["std_delta"]) for r in rows]
        fig, ax = plt.subplots(figsize=(8, max(2, 0.3 * len(names))))
        ypos = range(len(names))[::-1]
        ax.barh(list(ypos), means, xerr=stds, color="black", ecolor="red")
        ax.set_yticks(list(ypos))
        ax.set_yticklabels(names, fontsize=7)
        ax.set_xlabel("mean decrease in accuracy")
        fig.tight_layout()
        fig.savefig(plot_path, dpi=150)
        click.echo(f"plot -> {plot_path}")


def main():
    try:
        cli.main(standalone_mode=False)
    except click.exceptions.ClickException as exc:
        exc.show()
        sys.exit(EXIT_USAGE)
    except click.exceptions.Abort:
        sys.exit(EXIT_USAGE)
    except SystemExit:
        raise
    except ConfigError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    except ViscomError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INTERNAL)
    except Exception as exc:  # pragma: no cover - defensive
        click.echo(f"internal error: {type(exc).__name__}: {exc}", err=True)
        sys.exit(EXIT_INTERNAL)


if __name__ == "__main__":
    main()
