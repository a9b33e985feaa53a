"""Loading, splitting, and standardizing tabular binary-classification data.

The central type is :class:`Dataset`, an immutable (features, target,
feature_names) triple that every other module consumes. CSV input is
expected in SPAMBASE style: comma separated, ``.`` decimal point, optional
single header row, binary label in a selectable column.
"""

from __future__ import annotations

import csv
import gzip
import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import (
    EmptyDatasetError,
    InvalidFractionError,
    LabelError,
    ParseError,
    StratifyError,
)

__all__ = [
    "Dataset",
    "SplitSpec",
    "ScalerParams",
    "load_csv",
    "split_indices",
    "train_test_split",
    "standardize",
]


@dataclass(frozen=True)
class Dataset:
    """Immutable numeric feature matrix with a binary target.

    Invariants are enforced at construction: all feature values finite,
    target values in {0, 1}, unique feature names matching the column
    count. Arrays are set read-only so instances can be shared freely.
    """

    features: np.ndarray
    target: np.ndarray
    feature_names: tuple[str, ...]

    def __post_init__(self):
        features = np.asarray(self.features, dtype=np.float64)
        target = np.asarray(self.target)
        if features.ndim != 2:
            raise ValueError("features must be a 2-d matrix")
        if target.shape != (features.shape[0],):
            raise ValueError("target length must equal the number of rows")
        if not np.all(np.isfinite(features)):
            raise ValueError("features contain NaN or Inf")
        if not np.isin(target, (0, 1)).all():
            raise LabelError("target values must be 0 or 1")
        target = target.astype(np.int64)
        names = tuple(self.feature_names)
        if len(names) != features.shape[1]:
            raise ValueError("feature_names length must equal the column count")
        if len(set(names)) != len(names):
            raise ValueError("feature names must be unique")
        features = features.copy()
        features.setflags(write=False)
        target = target.copy()
        target.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "feature_names", names)

    @property
    def n_rows(self) -> int:
        return self.features.shape[0]

    @property
    def n_cols(self) -> int:
        return self.features.shape[1]

    def take_rows(self, indices: np.ndarray) -> "Dataset":
        """New Dataset holding the given rows (original column order)."""
        idx = np.asarray(indices, dtype=np.int64)
        return Dataset(self.features[idx], self.target[idx], self.feature_names)

    def content_hash(self) -> str:
        """SHA-256 over feature bytes, target bytes, and names.

        Used as a cache key and as provenance metadata in reports.
        """
        h = hashlib.sha256()
        h.update(np.ascontiguousarray(self.features).tobytes())
        h.update(np.ascontiguousarray(self.target).tobytes())
        h.update("\x00".join(self.feature_names).encode())
        return h.hexdigest()


@dataclass(frozen=True)
class SplitSpec:
    """Train/test split configuration (default 80-20, stratified)."""

    test_fraction: float = 0.2
    seed: int = 0
    stratified: bool = True


@dataclass(frozen=True)
class ScalerParams:
    """Per-column mean/std learned from a training set.

    Population (1/N) standard deviation. Columns with zero variance carry
    ``std == 0`` and transform to all-zeros.
    """

    means: tuple[float, ...]
    stds: tuple[float, ...]

    def transform(self, features: np.ndarray) -> np.ndarray:
        x = np.asarray(features, dtype=np.float64)
        means = np.asarray(self.means)
        stds = np.asarray(self.stds)
        out = np.zeros_like(x)
        nz = stds > 0
        out[:, nz] = (x[:, nz] - means[nz]) / stds[nz]
        return out

    def inverse_transform(self, scaled: np.ndarray) -> np.ndarray:
        z = np.asarray(scaled, dtype=np.float64)
        means = np.asarray(self.means)
        stds = np.asarray(self.stds)
        return z * stds + means

    def to_json(self) -> str:
        return json.dumps({"means": list(self.means), "stds": list(self.stds)})

    @classmethod
    def from_json(cls, text: str) -> "ScalerParams":
        obj = json.loads(text)
        return cls(means=tuple(obj["means"]), stds=tuple(obj["stds"]))


def _open_text(path: Path):
    if path.suffix == ".gz":
        return gzip.open(path, "rt", newline="")
    return open(path, "rt", newline="")


def load_csv(
    path: str | Path,
    label_column: int | str = -1,
    has_header: bool = False,
) -> Dataset:
    """Parse a CSV file into a Dataset.

    ``label_column`` selects the target column by index (negative counts
    from the end) or by header name. Without a header, features are named
    ``f0..f{n-1}`` in file order, skipping the label column.

    Raises FileNotFoundError, :class:`ParseError` (with 1-based data row
    and column), :class:`LabelError`, or :class:`EmptyDatasetError`.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(str(path))

    with _open_text(path) as fh:
        reader = csv.reader(fh)
        rows = [row for row in reader if row and any(cell.strip() for cell in row)]

    header: list[str] | None = None
    if has_header and rows:
        header = [c.strip() for c in rows[0]]
        rows = rows[1:]
    if not rows:
        raise EmptyDatasetError(f"no data rows in {path}")

    n_fields = len(rows[0])
    if isinstance(label_column, str):
        if header is None:
            raise LabelError("label column by name requires a header row")
        try:
            label_idx = header.index(label_column)
        except ValueError:
            raise LabelError(f"no column named {label_column!r}") from None
    else:
        label_idx = label_column if label_column >= 0 else n_fields + label_column
    if not 0 <= label_idx < n_fields:
        raise LabelError(f"label column {label_column} out of range for {n_fields} fields")

    n_features = n_fields - 1
    features = np.empty((len(rows), n_features), dtype=np.float64)
    target = np.empty(len(rows), dtype=np.int64)
    for r, row in enumerate(rows):
        if len(row) != n_fields:
            raise ParseError(r + 1, len(row) + 1, "<missing field>")
        k = 0
        for c, cell in enumerate(row):
            try:
                value = float(cell)
            except ValueError:
                raise ParseError(r + 1, c + 1, cell) from None
            if not math.isfinite(value):
                raise ParseError(r + 1, c + 1, cell)
            if c == label_idx:
                if value not in (0.0, 1.0):
                    raise LabelError(f"label {cell!r} at row {r + 1} is not 0 or 1")
                target[r] = int(value)
            else:
                features[r, k] = value
                k += 1

    if header is not None:
        names = tuple(h for i, h in enumerate(header) if i != label_idx)
    else:
        names = tuple(f"f{i}" for i in range(n_features))
    return Dataset(features, target, names)


def split_indices(target: np.ndarray, spec: SplitSpec) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic (train, test) row indices, both sorted ascending.

    Test-set sizes use round-half-to-even (Python ``round``): per class
    ``round(n_class * test_fraction)`` when stratified, otherwise
    ``round(n_rows * test_fraction)`` overall. On the UCI SPAMBASE class
    sizes (2788/1813) the stratified rule yields a 3680/921 split.
    """
    if not 0.0 < spec.test_fraction < 1.0:
        raise InvalidFractionError(f"test_fraction {spec.test_fraction} not in (0, 1)")
    target = np.asarray(target)
    n = len(target)
    rng = np.random.default_rng(spec.seed)
    if spec.stratified:
        classes = np.unique(target)
        if len(classes) < 2:
            raise StratifyError("stratified split requires both classes")
        test_parts = []
        for c in classes:
            idx = np.flatnonzero(target == c)
            if len(idx) < 2:
                raise StratifyError(f"class {c} has fewer than 2 instances")
            n_test = round(len(idx) * spec.test_fraction)
            test_parts.append(rng.permutation(idx)[:n_test])
        test = np.sort(np.concatenate(test_parts))
    else:
        n_test = round(n * spec.test_fraction)
        test = np.sort(rng.permutation(n)[:n_test])
    mask = np.ones(n, dtype=bool)
    mask[test] = False
    train = np.flatnonzero(mask)
    return train, test


def train_test_split(d: Dataset, spec: SplitSpec) -> tuple[Dataset, Dataset]:
    """Row-disjoint (train, test) partition of ``d`` per ``spec``."""
    train_idx, test_idx = split_indices(d.target, spec)
    return d.take_rows(train_idx), d.take_rows(test_idx)


def standardize(
    train: Dataset, others: Sequence[Dataset] = ()
) -> tuple[Dataset, list[Dataset], ScalerParams]:
    """Zero-mean unit-variance columns, parameters fitted on train only.

    Zero-variance train columns map to all-zeros in every output dataset.
    """
    x = train.features
    means = x.mean(axis=0)
    stds = x.std(axis=0)  # population (1/N) convention
    params = ScalerParams(means=tuple(means.tolist()), stds=tuple(stds.tolist()))
    train_std = Dataset(params.transform(x), train.target, train.feature_names)
    others_std = [
        Dataset(params.transform(o.features), o.target, o.feature_names) for o in others
    ]
    return train_std, others_std, params
