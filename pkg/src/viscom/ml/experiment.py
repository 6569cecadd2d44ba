"""The evaluation protocol: outer stratified 10-fold CV with nested 3-fold
grid search, per-setting aggregation across classifiers, significance
against the best baseline, and permutation feature importance.

Results are reduced in a fixed canonical order and every random stream is
derived from the master seed, so reports are byte-identical across reruns.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import ConfigError, DegenerateSample
from ..rng import derive_seed
from ..tables import read_feature_csv, read_labels_csv
from .baselines import BASELINE_KINDS, baseline_predict
from .classifiers import DEFAULT_CLASSIFIERS, DEFAULT_GRIDS
from .data import Dataset
from .folds import stratified_kfold, train_indices
from .importance import DEFAULT_REPEATS, PfiResult, permutation_importance
from .metrics import ConfusionMatrix, macro_f1, micro_accuracy
from .pipeline import SelectionPolicy, fit_pipeline, grid_search
from .stats import bonferroni, t_test_one_sided

MODES = ("full", "subsets", "combination")


@dataclass
class ExperimentConfig:
    feature_sets: list[str]
    mode: str = "full"
    k_outer: int = 10
    k_inner: int = 3
    gamma_policy: str = "none"  # none | grid | fixed:<g>
    repeats: int = DEFAULT_REPEATS
    alpha: float = 0.05
    n_settings: int | None = None
    seed: int = 0
    classifiers: tuple[str, ...] = DEFAULT_CLASSIFIERS
    grids: dict = field(default_factory=dict)
    baseline_accuracy: float | None = None
    baseline_draws: int = 1000
    pfi_classifier: str = "knn"

    @staticmethod
    def from_json(path: str | Path) -> "ExperimentConfig":
        payload = json.loads(Path(path).read_text("utf-8"))
        return ExperimentConfig.from_dict(payload)

    @staticmethod
    def from_dict(payload: dict) -> "ExperimentConfig":
        known = {
            "feature_sets", "mode", "k_outer", "k_inner", "gamma_policy",
            "repeats", "alpha", "n_settings", "seed", "classifiers", "grids",
            "baseline_accuracy", "baseline_draws", "pfi_classifier",
        }
        unknown = set(payload) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if "feature_sets" not in payload:
            raise ConfigError("config requires feature_sets")
        cfg = ExperimentConfig(feature_sets=list(payload["feature_sets"]))
        for key in known - {"feature_sets", "classifiers"}:
            if key in payload:
                setattr(cfg, key, payload[key])
        if "classifiers" in payload:
            cfg.classifiers = tuple(payload["classifiers"])
        if cfg.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}")
        for name in cfg.classifiers:
            if name not in DEFAULT_GRIDS:
                raise ConfigError(f"unknown classifier {name!r}")
        return cfg

    def echo(self) -> dict:
        return {
            "feature_sets": list(self.feature_sets),
            "mode": self.mode,
            "k_outer": self.k_outer,
            "k_inner": self.k_inner,
            "gamma_policy": self.gamma_policy,
            "repeats": self.repeats,
            "alpha": self.alpha,
            "n_settings": self.n_settings,
            "seed": self.seed,
            "classifiers": list(self.classifiers),
            "grids": self.grids,
            "baseline_accuracy": self.baseline_accuracy,
            "baseline_draws": self.baseline_draws,
            "pfi_classifier": self.pfi_classifier,
        }


@dataclass(frozen=True)
class Setting:
    name: str
    selection_label: str
    columns: tuple[int, ...]
    policy: SelectionPolicy


def resolve_feature_set(prefix: str, names: tuple[str, ...]) -> list[int]:
    cols = [i for i, n in enumerate(names) if n == prefix or n.startswith(prefix + ".")]
    if not cols:
        raise ConfigError(f"feature set {prefix!r} matches no columns")
    return cols


def _policy_from_string(spec: str) -> SelectionPolicy:
    if spec == "none":
        return SelectionPolicy(mode="none")
    if spec == "grid":
        return SelectionPolicy(mode="grid")
    if spec.startswith("fixed:"):
        return SelectionPolicy(mode="fixed", gamma=int(spec.split(":", 1)[1]))
    raise ConfigError(f"unknown gamma_policy {spec!r}")


def build_settings(config: ExperimentConfig, names: tuple[str, ...]) -> list[Setting]:
    if config.mode == "full":
        policy = _policy_from_string(config.gamma_policy)
        label = "" if policy.mode == "none" else config.gamma_policy
        return [
            Setting(fs, label, tuple(resolve_feature_set(fs, names)), policy)
            for fs in config.feature_sets
        ]
    if config.mode == "subsets":
        settings = []
        for fs in config.feature_sets:
            cols = tuple(resolve_feature_set(fs, names))
            settings.append(Setting(fs, "", cols, SelectionPolicy(mode="none")))
        for fs in config.feature_sets:
            cols = tuple(resolve_feature_set(fs, names))
            settings.append(Setting(fs, "grid", cols, SelectionPolicy(mode="grid")))
        return settings
    # combination: one setting over the union, selecting a fixed number of
    # features within each constituent set separately.
    if len(config.feature_sets) < 2:
        raise ConfigError("combination mode needs at least two feature sets")
    gamma = 10
    if config.gamma_policy.startswith("fixed:"):
        gamma = int(config.gamma_policy.split(":", 1)[1])
    groups = [resolve_feature_set(fs, names) for fs in config.feature_sets]
    columns = sorted({c for g in groups for c in g})
    remap = {c: i for i, c in enumerate(columns)}
    local_groups = tuple(tuple(remap[c] for c in g) for g in groups)
    policy = SelectionPolicy(mode="per_group", gamma=gamma, groups=local_groups)
    return [Setting("+".join(config.feature_sets), f"fixed:{gamma}/set", tuple(columns), policy)]


@dataclass
class ClassifierResult:
    name: str
    fold_accuracy: list[float]
    fold_macro_f1: list[float]
    fold_gammas: list[int | None]
    fold_selected: list[list[str]]

    @property
    def acc_mean(self) -> float:
        return float(np.mean(self.fold_accuracy))

    @property
    def f1_mean(self) -> float:
        return float(np.mean(self.fold_macro_f1))


@dataclass
class SettingResult:
    setting: Setting
    classifiers: list[ClassifierResult]
    p_value: float | None
    significant: bool

    def acc_stats(self) -> tuple[float, float]:
        means = [c.acc_mean for c in self.classifiers]
        return float(np.mean(means)), float(np.std(means))

    def f1_stats(self) -> tuple[float, float]:
        means = [c.f1_mean for c in self.classifiers]
        return float(np.mean(means)), float(np.std(means))


@dataclass
class ExperimentReport:
    config: dict
    n_settings: int
    alpha_bon: float
    baseline_accuracy: float
    baselines: list[dict]
    settings: list[SettingResult]

    def to_dict(self) -> dict:
        out_settings = []
        for sr in self.settings:
            acc_mean, acc_std = sr.acc_stats()
            f1_mean, f1_std = sr.f1_stats()
            out_settings.append(
                {
                    "name": sr.setting.name,
                    "selection": sr.setting.selection_label,
                    "acc_mean": acc_mean,
                    "acc_std": acc_std,
                    "f1_mean": f1_mean,
                    "f1_std": f1_std,
                    "p_value": sr.p_value,
                    "significant": sr.significant,
                    "classifiers": [
                        {
                            "name": c.name,
                            "acc_mean": c.acc_mean,
                            "f1_mean": c.f1_mean,
                            "fold_accuracy": c.fold_accuracy,
                            "fold_macro_f1": c.fold_macro_f1,
                            "fold_gammas": c.fold_gammas,
                            "fold_selected": c.fold_selected,
                        }
                        for c in sr.classifiers
                    ],
                }
            )
        return {
            "config": self.config,
            "n_settings": self.n_settings,
            "alpha_bon": self.alpha_bon,
            "baseline_accuracy": self.baseline_accuracy,
            "baselines": self.baselines,
            "settings": out_settings,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"


def load_joined_dataset(features_csv, labels_csv) -> tuple[Dataset, np.ndarray, list[str]]:
    """Join features and labels on user id; returns (dataset, kg, user_ids)."""
    _, ids, names, matrix = read_feature_csv(features_csv)
    label_ids, kgs, _, classes = read_labels_csv(labels_csv)
    by_id = {u: i for i, u in enumerate(label_ids)}
    missing = [u for u in ids if u not in by_id]
    if missing:
        raise ConfigError(f"labels missing for users: {missing[:5]}")
    order = [by_id[u] for u in ids]
    ds = Dataset(x=matrix, y=tuple(classes[i] for i in order), feature_names=names)
    return ds, kgs[order], ids


def _evaluate_baselines(y, config: ExperimentConfig) -> list[dict]:
    """Baseline metrics on the full label multiset.

    The majority baseline is deterministic; the random baselines report the
    empirical mean over seeded draws.
    """
    classes = sorted(set(y))
    rows = []
    for kind in BASELINE_KINDS:
        accs, f1s = [], []
        draws = 1 if kind == "most_frequent" else config.baseline_draws
        for i in range(draws):
            pred = baseline_predict(kind, y, len(y), seed=derive_seed(config.seed, "baseline", kind, i))
            cm = ConfusionMatrix.from_labels(y, pred, classes)
            accs.append(micro_accuracy(cm))
            f1s.append(macro_f1(cm))
        rows.append(
            {
                "name": kind,
                "accuracy": float(np.mean(accs)),
                "macro_f1": float(np.mean(f1s)),
                "draws": draws,
            }
        )
    return rows


def _run_setting(
    setting: Setting,
    ds: Dataset,
    kg: np.ndarray,
    classes,
    folds,
    config: ExperimentConfig,
    alpha_bon: float,
    baseline_accuracy: float,
) -> SettingResult:
    x = ds.x[:, list(setting.columns)]
    names = tuple(ds.feature_names[c] for c in setting.columns)
    results = []
    for clf_name in config.classifiers:
        fold_acc, fold_f1, fold_gammas, fold_selected = [], [], [], []
        for fi, test_idx in enumerate(folds):
            tr_idx = train_indices(ds.n, test_idx)
            y_tr = [ds.y[i] for i in tr_idx]
            seed = derive_seed(config.seed, "outer", setting.name, setting.selection_label, clf_name, fi)
            params, gamma = grid_search(
                clf_name, x[tr_idx], y_tr, kg[tr_idx], classes, setting.policy,
                config.k_inner, seed, grid=config.grids.get(clf_name),
            )
            pipe = fit_pipeline(
                clf_name, params, x[tr_idx], y_tr, kg[tr_idx], classes,
                setting.policy, gamma, seed=derive_seed(seed, "final-fit"),
            )
            pred = pipe.predict(x[test_idx])
            cm = ConfusionMatrix.from_labels([ds.y[i] for i in test_idx], pred, classes)
            fold_acc.append(micro_accuracy(cm))
            fold_f1.append(macro_f1(cm))
            fold_gammas.append(gamma if gamma is not None else (setting.policy.gamma if setting.policy.mode != "none" else None))
            selected = list(names) if pipe.selected is None else [names[j] for j in pipe.selected]
            fold_selected.append(selected)
        results.append(
            ClassifierResult(
                name=clf_name,
                fold_accuracy=fold_acc,
                fold_macro_f1=fold_f1,
                fold_gammas=fold_gammas,
                fold_selected=fold_selected,
            )
        )
    try:
        p_value = t_test_one_sided([c.acc_mean for c in results], baseline_accuracy)
    except DegenerateSample:
        p_value = None
    significant = p_value is not None and p_value < alpha_bon
    return SettingResult(setting=setting, classifiers=results, p_value=p_value, significant=significant)


def run_experiment(features_csv, labels_csv, config: ExperimentConfig) -> ExperimentReport:
    ds, kg, _ = load_joined_dataset(features_csv, labels_csv)
    if config.k_outer < 2 or config.k_outer > ds.n:
        raise ConfigError(f"k_outer={config.k_outer} invalid for n={ds.n}")
    settings = build_settings(config, ds.feature_names)
    n_settings = config.n_settings if config.n_settings is not None else len(settings)
    alpha_bon = bonferroni(config.alpha, n_settings)
    classes = sorted(set(ds.y))

    baselines = _evaluate_baselines(list(ds.y), config)
    baseline_accuracy = config.baseline_accuracy
    if baseline_accuracy is None:
        baseline_accuracy = next(b["accuracy"] for b in baselines if b["name"] == "most_frequent")

    folds = stratified_kfold(list(ds.y), config.k_outer, derive_seed(config.seed, "outer-folds"))
    setting_results = [
        _run_setting(s, ds, kg, classes, folds, config, alpha_bon, baseline_accuracy)
        for s in settings
    ]
    return ExperimentReport(
        config=config.echo(),
        n_settings=n_settings,
        alpha_bon=alpha_bon,
        baseline_accuracy=baseline_accuracy,
        baselines=baselines,
        settings=setting_results,
    )


def report_csv(report: ExperimentReport) -> str:
    """Table-shaped CSV: baselines, then one row per setting."""
    lines = ["approach,f_sel,f1_macro_mean,f1_macro_std,acc_mean,acc_std,p_value,significant"]
    for b in report.baselines:
        lines.append(
            f"{b['name']},,{b['macro_f1']:.6f},,{b['accuracy']:.6f},,,"
        )
    for sr in report.settings:
        acc_mean, acc_std = sr.acc_stats()
        f1_mean, f1_std = sr.f1_stats()
        p = "" if sr.p_value is None else f"{sr.p_value:.6f}"
        lines.append(
            f"{sr.setting.name},{sr.setting.selection_label},{f1_mean:.6f},{f1_std:.6f},"
            f"{acc_mean:.6f},{acc_std:.6f},{p},{str(sr.significant).lower()}"
        )
    return "\n".join(lines) + "\n"


def run_importance(features_csv, labels_csv, config: ExperimentConfig) -> list[PfiResult]:
    """Permutation feature importance for one classifier across outer folds.

    Per fold, importance is computed over the features the fold's pipeline
    actually selected; per-feature results aggregate the fold deltas and
    count the folds in which the feature was selected.
    """
    ds, kg, _ = load_joined_dataset(features_csv, labels_csv)
    settings = build_settings(config, ds.feature_names)
    setting = settings[0]
    clf_name = config.pfi_classifier
    if clf_name not in config.classifiers:
        raise ConfigError(f"pfi_classifier {clf_name!r} not among configured classifiers")
    classes = sorted(set(ds.y))
    folds = stratified_kfold(list(ds.y), config.k_outer, derive_seed(config.seed, "outer-folds"))

    x = ds.x[:, list(setting.columns)]
    names = tuple(ds.feature_names[c] for c in setting.columns)
    per_feature: dict[str, list[PfiResult]] = {}
    for fi, test_idx in enumerate(folds):
        tr_idx = train_indices(ds.n, test_idx)
        y_tr = [ds.y[i] for i in tr_idx]
        seed = derive_seed(config.seed, "outer", setting.name, setting.selection_label, clf_name, fi)
        params, gamma = grid_search(
            clf_name, x[tr_idx], y_tr, kg[tr_idx], classes, setting.policy,
            config.k_inner, seed, grid=config.grids.get(clf_name),
        )
        pipe = fit_pipeline(
            clf_name, params, x[tr_idx], y_tr, kg[tr_idx], classes,
            setting.policy, gamma, seed=derive_seed(seed, "final-fit"),
        )
        selected = list(range(len(names))) if pipe.selected is None else pipe.selected
        sel_names = [names[j] for j in selected]

        z_test = pipe.pre.transform(x[test_idx])[:, selected]
        y_test = [ds.y[i] for i in test_idx]
        index = {c: i for i, c in enumerate(pipe.classes)}

        def predict_fn(rows):
            idx = pipe.clf.predict(rows)
            return [pipe.classes[i] for i in idx]

        del index
        fold_results = permutation_importance(
            predict_fn, z_test, y_test, sel_names,
            repeats=config.repeats, seed=derive_seed(config.seed, "pfi", fi),
        )
        for res in fold_results:
            per_feature.setdefault(res.feature_name, []).append(res)

    aggregated = []
    for name in names:
        fold_results = per_feature.get(name)
        if not fold_results:
            continue
        deltas = np.asarray([r.mean_delta for r in fold_results])
        aggregated.append(
            PfiResult(
                feature_name=name,
                accuracy_ori=float(np.mean([r.accuracy_ori for r in fold_results])),
                mean_delta=float(deltas.mean()),
                std_delta=float(deltas.std()),
                repeats=config.repeats,
                selection_count=len(fold_results),
            )
        )
    aggregated.sort(key=lambda r: (-r.mean_delta, r.feature_name))
    return aggregated


def pfi_csv(results: list[PfiResult]) -> str:
    lines = ["feature,selection_count,mean_delta,std_delta"]
    for r in results:
        lines.append(f"{r.feature_name},{r.selection_count},{r.mean_delta:.6f},{r.std_delta:.6f}")
    return "\n".join(lines) + "\n"
