"""Tabular loading, mode imputation and min-max normalization.

The end product is a :class:`FuzzyDecisionSystem`: an ``N x M`` matrix of
feature values in ``[0, 1]`` together with integer class ids and the
partition of sample indices into decision classes.
"""

from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Hashable, Sequence

import numpy as np

Cell = float | str | None


class DatasetError(Exception):
    """Base class for data problems. ``code`` is a stable machine-readable tag."""

    code = "dataset_error"


class UnreadableFileError(DatasetError):
    code = "unreadable_file"


class RaggedRowsError(DatasetError):
    code = "ragged_rows"


class MissingLabelColumnError(DatasetError):
    code = "missing_label_column"


class EmptyColumnError(DatasetError):
    code = "empty_column"


class EmptyTableError(DatasetError):
    code = "empty_table"


class MissingLabelError(DatasetError):
    code = "missing_label"


@dataclass(frozen=True)
class RawTable:
    rows: tuple[tuple[Cell, ...], ...]
    column_names: tuple[str, ...]
    label_column: int

    def __post_init__(self):
        width = len(self.column_names)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise RaggedRowsError(f"row {i} has {len(row)} cells, expected {width}")
        if not 0 <= self.label_column < width:
            raise MissingLabelColumnError(f"label column {self.label_column} out of range")

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def column(self, j: int) -> list[Cell]:
        return [row[j] for row in self.rows]

    @property
    def feature_columns(self) -> list[int]:
        return [j for j in range(len(self.column_names)) if j != self.label_column]

    def has_missing(self) -> bool:
        return any(cell is None for row in self.rows for cell in row)


def class_partition(labels: Sequence[Hashable]) -> tuple[np.ndarray, ...]:
    """Group sample indices by label, groups ordered by first occurrence.

    >>> [g.tolist() for g in class_partition([2, 1, 2, 1])]
    [[0, 2], [1, 3]]
    """
    groups: dict[Hashable, list[int]] = {}
    for i, lab in enumerate(labels):
        groups.setdefault(lab, []).append(i)
    return tuple(np.asarray(g, dtype=np.intp) for g in groups.values())


@dataclass(frozen=True, eq=False)
class FuzzyDecisionSystem:
    """Normalized samples plus decision classes.

    ``labels`` holds integer class ids; ``class_names`` maps an id back to
    the original label token. ``classes`` is derived from ``labels`` (one
    group per distinct id, ordered by first occurrence).
    """

    samples: np.ndarray
    labels: np.ndarray
    feature_names: tuple[str, ...] = ()
    class_names: tuple[str, ...] = ()
    classes: tuple[np.ndarray, ...] = field(init=False)

    def __post_init__(self):
        X = np.array(self.samples, dtype=float)
        y = np.array(self.labels, dtype=np.intp).ravel()
        if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
            raise EmptyTableError(f"need a non-empty N x M matrix, got shape {X.shape}")
        if y.shape[0] != X.shape[0]:
            raise ValueError(f"{X.shape[0]} samples but {y.shape[0]} labels")
        if not np.all(np.isfinite(X)) or X.min() < 0.0 or X.max() > 1.0:
            raise ValueError("sample values must lie in [0, 1]")
        X.setflags(write=False)
        y.setflags(write=False)
        names = tuple(self.feature_names) or tuple(f"a{j}" for j in range(X.shape[1]))
        if len(names) != X.shape[1]:
            raise ValueError("feature_names length does not match column count")
        n_ids = int(y.max()) + 1
        cnames = tuple(self.class_names) or tuple(str(i) for i in range(n_ids))
        object.__setattr__(self, "samples", X)
        object.__setattr__(self, "labels", y)
        object.__setattr__(self, "feature_names", names)
        object.__setattr__(self, "class_names", cnames)
        object.__setattr__(self, "classes", class_partition(y.tolist()))

    @property
    def n_samples(self) -> int:
        return self.samples.shape[0]

    @property
    def n_features(self) -> int:
        return self.samples.shape[1]

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    def restrict(self, sample_indices) -> "FuzzyDecisionSystem":
        """Sub-system on a subset of samples (e.g. a training fold)."""
        idx = np.asarray(sample_indices, dtype=np.intp)
        return FuzzyDecisionSystem(self.samples[idx], self.labels[idx],
                                   self.feature_names, self.class_names)


def _parse_cell(token: str) -> Cell:
    token = token.strip()
    if token == "":
        return None
    try:
        return float(token)
    except ValueError:
        return token


def load_csv(path, label_column: str | int = -1, has_header: bool = True) -> RawTable:
    """Read a comma-delimited file. Empty fields become ``None``.

    ``label_column`` is a column name (header files) or a zero-based index;
    negative indices count from the end.
    """
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            records = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    except (OSError, UnicodeDecodeError) as exc:
        raise UnreadableFileError(f"cannot read {path}: {exc}") from exc
    if not records:
        raise EmptyTableError(f"{path} contains no rows")

    if has_header:
        header, body = [h.strip() for h in records[0]], records[1:]
    else:
        header, body = [f"x{j}" for j in range(len(records[0]))], records
    width = len(header)
    for i, rec in enumerate(body):
        if len(rec) != width:
            line = i + 2 if has_header else i + 1
            raise RaggedRowsError(f"{path}:{line}: {len(rec)} fields, expected {width}")

    label_idx = _resolve_label(label_column, header)
    rows = tuple(tuple(_parse_cell(c) for c in rec) for rec in body)
    return RawTable(rows, tuple(header), label_idx)


def _resolve_label(label_column, header: Sequence[str]) -> int:
    width = len(header)
    if isinstance(label_column, str) and label_column in header:
        return list(header).index(label_column)
    try:
        idx = int(label_column)
    except (TypeError, ValueError):
        raise MissingLabelColumnError(f"no column named {label_column!r}") from None
    if idx < 0:
        idx += width
    if not 0 <= idx < width:
        raise MissingLabelColumnError(f"label index {label_column} out of range for {width} columns")
    return idx


def _column_mode(values: list[Cell]) -> Cell:
    counts = Counter(v for v in values if v is not None)
    best = max(counts.values())
    tied = [v for v, n in counts.items() if n == best]
    if all(isinstance(v, float) for v in tied):
        return min(tied)
    # categorical ties: first occurrence (Counter preserves insertion order)
    return tied[0]


def impute_missing(table: RawTable) -> RawTable:
    """Fill missing feature cells with the column mode.

    Numeric ties go to the smallest value. The label column is left as is;
    rows without a label are rejected later by :func:`normalize_min_max`.
    """
    if not table.has_missing():
        return table
    columns = [table.column(j) for j in range(len(table.column_names))]
    for j in table.feature_columns:
        col = columns[j]
        if all(v is None for v in col):
            raise EmptyColumnError(f"column {table.column_names[j]!r} has no values")
        if any(v is None for v in col):
            fill = _column_mode(col)
            columns[j] = [fill if v is None else v for v in col]
    rows = tuple(zip(*columns)) if table.rows else ()
    return RawTable(tuple(tuple(r) for r in rows), table.column_names, table.label_column)


def _encode_column(values: list[Cell]) -> np.ndarray:
    if all(isinstance(v, float) for v in values):
        return np.asarray(values, dtype=float)
    codes: dict[Cell, int] = {}
    return np.asarray([codes.setdefault(v, len(codes)) for v in values], dtype=float)


def min_max_scale(X: np.ndarray) -> np.ndarray:
    """Column-wise ``(x - min) / (max - min)``; constant columns become 0."""
    X = np.asarray(X, dtype=float)
    lo = X.min(axis=0)
    span = X.max(axis=0) - lo
    out = np.zeros_like(X)
    ok = span > 0
    out[:, ok] = (X[:, ok] - lo[ok]) / span[ok]
    return np.clip(out, 0.0, 1.0)


def normalize_min_max(table: RawTable) -> FuzzyDecisionSystem:
    if table.n_rows == 0:
        raise EmptyTableError("table has zero rows")
    if table.has_missing():
        for i, row in enumerate(table.rows):
            if row[table.label_column] is None:
                raise MissingLabelError(f"row {i} has no label")
        raise DatasetError("table still has missing feature cells; impute first")
    feats = table.feature_columns
    if not feats:
        raise EmptyTableError("table has no feature columns")
    X = np.column_stack([_encode_column(table.column(j)) for j in feats])

    label_cells = table.column(table.label_column)
    ids: dict[Cell, int] = {}
    y = [ids.setdefault(v, len(ids)) for v in label_cells]
    class_names = tuple(_label_str(v) for v in ids)
    names = tuple(table.column_names[j] for j in feats)
    return FuzzyDecisionSystem(min_max_scale(X), np.asarray(y), names, class_names)


def _label_str(v: Cell) -> str:
    if isinstance(v, float) and v.is_integer():
        return str(int(v))
    return str(v)


def load_dataset(path, label_column: str | int = -1, has_header: bool = True) -> FuzzyDecisionSystem:
    """Full pipeline: read, impute, normalize."""
    return normalize_min_max(impute_missing(load_csv(path, label_column, has_header)))


BUNDLED = {"wine": "wine.csv", "separable": "separable.csv"}


def bundled_path(name: str) -> Path:
    """Filesystem path of a dataset shipped with the package."""
    if name not in BUNDLED:
        raise KeyError(f"unknown bundled dataset {name!r}; choose from {sorted(BUNDLED)}")
    return Path(str(resources.files("fcssc") / "data" / BUNDLED[name]))


def load_bundled(name: str) -> FuzzyDecisionSystem:
    return load_dataset(bundled_path(name), label_column="class")
