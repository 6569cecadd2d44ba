"""CSV table formats shared by the CLI and the experiment harness.

features.csv: one row per entity (page or session); first column is the id,
remaining columns follow the registry order; missing values are empty
cells. labels.csv: user_id, kg, z, class. All floats are written with
repr() so files round-trip exactly and reruns are byte-identical.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .session import KgLabel


def _format(value: float) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    return repr(float(value))


def write_feature_csv(path: str | Path, id_column: str, ids: list[str],
                      names: tuple[str, ...], matrix: np.ndarray) -> Path:
    out = Path(path)
    with out.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([id_column, *names])
        for row_id, row in zip(ids, matrix):
            writer.writerow([row_id] + [_format(v) for v in row])
    return out


def read_feature_csv(path: str | Path) -> tuple[str, list[str], tuple[str, ...], np.ndarray]:
    with Path(path).open("r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or len(header) < 2:
            raise ConfigError(f"{path}: missing feature header")
        names = tuple(header[1:])
        ids, rows = [], []
        for record in reader:
            ids.append(record[0])
            rows.append([float(v) if v != "" else float("nan") for v in record[1:]])
    matrix = np.asarray(rows, dtype=float) if rows else np.zeros((0, len(names)))
    return header[0], ids, names, matrix


def write_labels_csv(path: str | Path, user_ids: list[str], labels: list[KgLabel]) -> Path:
    out = Path(path)
    with out.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["user_id", "kg", "z", "class"])
        for user_id, label in zip(user_ids, labels):
            writer.writerow([user_id, repr(label.kg), repr(label.z), label.cls])
    return out


def read_labels_csv(path: str | Path) -> tuple[list[str], np.ndarray, np.ndarray, list[str]]:
    with Path(path).open("r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["user_id", "kg", "z", "class"]:
            raise ConfigError(f"{path}: expected header user_id,kg,z,class")
        ids, kgs, zs, classes = [], [], [], []
        for record in reader:
            ids.append(record[0])
            kgs.append(float(record[1]))
            zs.append(float(record[2]))
            classes.append(record[3])
    return ids, np.asarray(kgs), np.asarray(zs), classes
