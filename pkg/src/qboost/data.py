"""Dataset loading, validation and train/validation splitting."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._backend import kernels
from .rng import SplitMix64

MAX_SPLIT_RETRIES = 100


class DatasetError(ValueError):
    """Raised for malformed or unusable datasets."""


@dataclass(frozen=True, eq=False)
class Dataset:
    """Binary-labelled samples: ``features`` is (N, d), ``labels`` is (N,) of 0/1."""

    features: np.ndarray
    labels: np.ndarray
    feature_names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        X = np.array(self.features, dtype=np.float64, copy=True)
        y = np.array(self.labels, copy=True)
        if X.ndim != 2:
            raise DatasetError(f"features must be 2-D, got shape {X.shape}")
        if y.ndim != 1 or y.shape[0] != X.shape[0]:
            raise DatasetError(
                f"labels must have length {X.shape[0]}, got shape {y.shape}")
        if X.shape[1] < 1:
            raise DatasetError("dataset has no feature columns")
        if not np.all(np.isfinite(X)):
            raise DatasetError("features contain non-finite values")
        if not np.all((y == 0) | (y == 1)):
            bad = y[(y != 0) & (y != 1)][0]
            raise DatasetError(f"label {bad!r} is not 0 or 1")
        X.setflags(write=False)
        y = y.astype(np.int8)
        y.setflags(write=False)
        object.__setattr__(self, "features", X)
        object.__setattr__(self, "labels", y)

    @property
    def N(self) -> int:
        return self.features.shape[0]

    @property
    def d(self) -> int:
        return self.features.shape[1]

    def subset(self, index) -> Dataset:
        index = np.asarray(index, dtype=np.int64)
        return Dataset(self.features[index], self.labels[index], self.feature_names)

    def check_binary(self):
        """Raise unless N >= 2 and both classes occur."""
        if self.N < 2:
            raise DatasetError(f"need at least 2 samples, got {self.N}")
        n_pos = int(self.labels.sum())
        if n_pos == 0 or n_pos == self.N:
            raise DatasetError(
                f"dataset has a single class (all labels {int(self.labels[0])})")
        return self


@dataclass(frozen=True, eq=False)
class SplitPair:
    train: Dataset
    valid: Dataset
    seed: int
    train_index: np.ndarray
    valid_index: np.ndarray


def _parse_float(cell: str) -> float | None:
    try:
        return float(cell)
    except ValueError:
        return None


def _read_rows(path):
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"dataset file not found: {path}")
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh) if row and any(c.strip() for c in row)]
    if not rows:
        raise DatasetError(f"{path}: file is empty")
    header = None
    if any(_parse_float(c) is None for c in rows[0]):
        header = [c.strip() for c in rows[0]]
        rows = rows[1:]
    ncol = len(header) if header is not None else len(rows[0]) if rows else 0
    for lineno, row in enumerate(rows, start=2 if header else 1):
        if len(row) != ncol:
            raise DatasetError(
                f"{path}:{lineno}: expected {ncol} columns, found {len(row)}")
    return header, rows, ncol


def _parse_features(path, header, rows, cols):
    X = np.empty((len(rows), len(cols)), dtype=np.float64)
    for i, row in enumerate(rows):
        for k, j in enumerate(cols):
            v = _parse_float(row[j])
            if v is None or not math.isfinite(v):
                lineno = i + (2 if header else 1)
                raise DatasetError(
                    f"{path}:{lineno}: non-numeric feature value {row[j]!r} in column {j}")
            X[i, k] = v
    return X


def load_csv(path, label_column: str | int = -1,
             require_both_classes: bool = True) -> Dataset:
    """Load a comma-separated file into a :class:`Dataset`.

    The first row is treated as a header iff one of its cells does not parse
    as a number. ``label_column`` is a header name or a (possibly negative)
    column index; the remaining columns become features in file order.
    """
    header, rows, ncol = _read_rows(path)
    if isinstance(label_column, str) and not _is_int(label_column):
        if header is None:
            raise DatasetError(
                f"{path}: label column {label_column!r} given by name but file has no header")
        if label_column not in header:
            raise DatasetError(f"{path}: no column named {label_column!r}")
        label_idx = header.index(label_column)
    else:
        label_idx = int(label_column)
        if not -ncol <= label_idx < ncol:
            raise DatasetError(f"{path}: label column index {label_idx} out of range")
        label_idx %= ncol

    feat_cols = [j for j in range(ncol) if j != label_idx]
    if not rows:
        raise DatasetError(f"{path}: no data rows")
    X = _parse_features(path, header, rows, feat_cols)
    y = np.empty(len(rows), dtype=np.int8)
    for i, row in enumerate(rows):
        lineno = i + (2 if header else 1)
        lab = _parse_float(row[label_idx])
        if lab not in (0.0, 1.0):
            raise DatasetError(
                f"{path}:{lineno}: label {row[label_idx]!r} is not 0 or 1")
        y[i] = int(lab)

    names = tuple(header[j] for j in feat_cols) if header else None
    ds = Dataset(X, y, names)
    return ds.check_binary() if require_both_classes else ds


def load_features(path) -> np.ndarray:
    """Load an unlabelled CSV (optional header) as an (n, d) feature matrix."""
    header, rows, ncol = _read_rows(path)
    if not rows:
        raise DatasetError(f"{path}: no data rows")
    return _parse_features(path, header, rows, list(range(ncol)))


def _is_int(s: str) -> bool:
    try:
        int(s)
    except ValueError:
        return False
    return True


def write_csv(ds: Dataset, path, label_name: str = "label") -> None:
    """Write ``ds`` with a header row and the label as the last column.

    Floats are written with ``repr`` so a reload is bit-exact.
    """
    names = ds.feature_names or tuple(f"x{j}" for j in range(ds.d))
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([*names, label_name])
        for row, lab in zip(ds.features, ds.labels):
            w.writerow([repr(float(v)) for v in row] + [int(lab)])


def split(ds: Dataset, valid_fraction: float = 0.1, seed: int = 0) -> SplitPair:
    """Seeded random split into training and validation parts.

    ``floor(valid_fraction * N)`` samples go to the validation side. The
    permutation is redrawn (up to 100 times, continuing the same SplitMix64
    stream) until both sides contain both classes.
    """
    if not 0.0 < valid_fraction < 1.0:
        raise DatasetError(f"valid_fraction must be in (0, 1), got {valid_fraction}")
    n_valid = math.floor(valid_fraction * ds.N)
    n_train = ds.N - n_valid
    if n_valid < 1 or n_train < 1:
        raise DatasetError(
            f"valid_fraction {valid_fraction} on N={ds.N} gives "
            f"{n_valid} validation / {n_train} training samples")

    rng = SplitMix64(seed)
    for _ in range(MAX_SPLIT_RETRIES):
        perm, rng.state = kernels.permutation(ds.N, rng.state)
        valid_index = np.sort(perm[:n_valid])
        train_index = np.sort(perm[n_valid:])
        yv, yt = ds.labels[valid_index], ds.labels[train_index]
        if 0 < yv.sum() < n_valid and 0 < yt.sum() < n_train:
            return SplitPair(ds.subset(train_index), ds.subset(valid_index),
                             seed, train_index, valid_index)
    raise DatasetError(
        f"could not draw a split with both classes on both sides "
        f"after {MAX_SPLIT_RETRIES} attempts (N={ds.N}, n_valid={n_valid}, seed={seed})")
