"""In-house classifiers and evaluation metrics.

Three deterministic, from-scratch models close the threshold-tuning loop:
a CART decision tree (Gini impurity, vectorized split search), a logistic
classifier trained by minibatch SGD on internally standardized inputs,
and Gaussian naive Bayes with variance smoothing. They exist for relative
comparisons between feature subsets under identical conditions, not for
parity with any external library.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .dataset import Dataset, standardize
from .errors import (
    EmptySubsetError,
    SingleClassError,
    SubsetMismatchError,
)

__all__ = [
    "CLASSIFIER_KINDS",
    "ClassifierSpec",
    "EvalResult",
    "classifier_id",
    "train_model",
    "evaluate",
    "DecisionTreeModel",
    "LogisticSGDModel",
    "GaussianNBModel",
]

CLASSIFIER_KINDS = ("decision_tree", "logistic_sgd", "gaussian_nb")

_DEFAULTS: dict[str, dict[str, float | int]] = {
    "decision_tree": {
        "max_depth": 20,
        "min_samples_split": 2,
        "min_samples_leaf": 1,
    },
    "logistic_sgd": {
        "learning_rate": 0.1,
        "epochs": 100,
        "batch_size": 32,
        "l2": 1e-4,
    },
    "gaussian_nb": {
        "var_smoothing": 1e-9,
    },
}


@dataclass(frozen=True)
class ClassifierSpec:
    """Classifier kind plus hyperparameter overrides and a seed.

    Unknown hyperparameter names and out-of-range values are rejected at
    construction, so a spec that exists is trainable.
    """

    kind: str
    hyperparams: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.kind not in CLASSIFIER_KINDS:
            raise ValueError(f"unknown classifier kind {self.kind!r}")
        defaults = _DEFAULTS[self.kind]
        unknown = set(self.hyperparams) - set(defaults)
        if unknown:
            raise ValueError(f"unknown hyperparams for {self.kind}: {sorted(unknown)}")
        p = self.resolved()
        if self.kind == "decision_tree":
            if p["max_depth"] < 1:
                raise ValueError("max_depth must be >= 1")
            if p["min_samples_split"] < 2:
                raise ValueError("min_samples_split must be >= 2")
            if p["min_samples_leaf"] < 1:
                raise ValueError("min_samples_leaf must be >= 1")
        elif self.kind == "logistic_sgd":
            if p["learning_rate"] <= 0:
                raise ValueError("learning_rate must be > 0")
            if p["epochs"] < 1 or p["batch_size"] < 1:
                raise ValueError("epochs and batch_size must be >= 1")
            if p["l2"] < 0:
                raise ValueError("l2 must be >= 0")
        elif p["var_smoothing"] <= 0:
            raise ValueError("var_smoothing must be > 0")

    def resolved(self) -> dict:
        """Defaults overlaid with the explicit overrides."""
        merged = dict(_DEFAULTS[self.kind])
        merged.update(self.hyperparams)
        return merged


def classifier_id(spec: ClassifierSpec) -> str:
    return spec.kind


@dataclass(frozen=True)
class EvalResult:
    """Accuracy, precision, and the confusion matrix behind them.

    ``confusion[i][j]`` counts rows with actual label i predicted as j;
    label 1 is the positive class. A precision of 0/0 is reported as 0.0
    with ``degenerate_precision`` set.
    """

    accuracy: float
    precision: float
    confusion: tuple[tuple[int, int], tuple[int, int]]
    n_test: int
    degenerate_precision: bool = False


def _check_subset(d: Dataset, feature_subset: Sequence[int]) -> np.ndarray:
    cols = np.asarray(list(feature_subset), dtype=np.int64)
    if cols.size == 0:
        raise EmptySubsetError("feature subset is empty")
    if len(np.unique(cols)) != cols.size:
        raise ValueError("feature subset contains duplicates")
    if cols.min() < 0 or cols.max() >= d.n_cols:
        raise IndexError(f"feature index out of range for {d.n_cols} columns")
    return cols


class _TreeNode:
    __slots__ = ("prediction", "feature", "threshold", "left", "right")

    def __init__(self, prediction: int):
        self.prediction = prediction
        self.feature = -1
        self.threshold = 0.0
        self.left: _TreeNode | None = None
        self.right: _TreeNode | None = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None


def _gini_best_split(
    x: np.ndarray, y: np.ndarray, min_leaf: int
) -> tuple[int, float, float]:
    """Best (feature, threshold, gain) at a node; features scanned in
    index order and ties kept at the first best, so growth is fully
    deterministic."""
    m = len(y)
    total1 = int(y.sum())
    p1 = total1 / m
    parent = 1.0 - (p1 * p1 + (1.0 - p1) * (1.0 - p1))
    best_gain = 0.0
    best_feature = -1
    best_threshold = 0.0
    for f in range(x.shape[1]):
        col = x[:, f]
        order = np.argsort(col, kind="stable")
        xs = col[order]
        c1 = np.cumsum(y[order])
        cut = np.flatnonzero(xs[:-1] < xs[1:])
        if min_leaf > 1:
            cut = cut[(cut + 1 >= min_leaf) & (m - cut - 1 >= min_leaf)]
        if cut.size == 0:
            continue
        n_left = (cut + 1).astype(np.float64)
        n_right = m - n_left
        ones_left = c1[cut].astype(np.float64)
        ones_right = total1 - ones_left
        gini_left = 1.0 - (ones_left**2 + (n_left - ones_left) ** 2) / n_left**2
        gini_right = 1.0 - (ones_right**2 + (n_right - ones_right) ** 2) / n_right**2
        weighted = (n_left * gini_left + n_right * gini_right) / m
        j = int(np.argmin(weighted))
        gain = parent - float(weighted[j])
        if gain > best_gain + 1e-15:
            best_gain = gain
            best_feature = f
            best_threshold = float((xs[cut[j]] + xs[cut[j] + 1]) / 2.0)
    return best_feature, best_threshold, best_gain


class DecisionTreeModel:
    """CART with Gini impurity; exhaustive threshold search per feature."""

    def __init__(self, spec: ClassifierSpec, feature_subset: tuple[int, ...]):
        self.spec = spec
        self.feature_subset = feature_subset
        self._root: _TreeNode | None = None

    def fit(self, x: np.ndarray, y: np.ndarray) -> "DecisionTreeModel":
        p = self.spec.resolved()
        self._root = self._grow(
            x,
            y,
            depth=0,
            max_depth=int(p["max_depth"]),
            min_split=int(p["min_samples_split"]),
            min_leaf=int(p["min_samples_leaf"]),
        )
        return self

    def _grow(self, x, y, depth, max_depth, min_split, min_leaf) -> _TreeNode:
        counts = np.bincount(y, minlength=2)
        node = _TreeNode(prediction=int(np.argmax(counts)))
        if (
            depth >= max_depth
            or len(y) < min_split
            or counts[0] == 0
            or counts[1] == 0
        ):
            return node
        feature, threshold, gain = _gini_best_split(x, y, min_leaf)
        if feature < 0 or gain <= 0.0:
            return node
        mask = x[:, feature] <= threshold
        node.feature = feature
        node.threshold = threshold
        node.left = self._grow(x[mask], y[mask], depth + 1, max_depth, min_split, min_leaf)
        node.right = self._grow(x[~mask], y[~mask], depth + 1, max_depth, min_split, min_leaf)
        return node

    def predict(self, x: np.ndarray) -> np.ndarray:
        out = np.empty(len(x), dtype=np.int64)
        self._apply(self._root, x, np.arange(len(x)), out)
        return out

    def _apply(self, node: _TreeNode, x, idx, out):
        if node.is_leaf:
            out[idx] = node.prediction
            return
        mask = x[idx, node.feature] <= node.threshold
        self._apply(node.left, x, idx[mask], out)
        self._apply(node.right, x, idx[~mask], out)


class LogisticSGDModel:
    """Logistic loss minimized by minibatch SGD on standardized inputs."""

    def __init__(self, spec: ClassifierSpec, feature_subset: tuple[int, ...]):
        self.spec = spec
        self.feature_subset = feature_subset
        self._weights: np.ndarray | None = None
        self._bias = 0.0
        self._scaler = None

    def fit(self, x: np.ndarray, y: np.ndarray) -> "LogisticSGDModel":
        p = self.spec.resolved()
        names = tuple(str(i) for i in range(x.shape[1]))
        scaled, _, scaler = standardize(Dataset(x, y, names))
        self._scaler = scaler
        z = scaled.features
        rng = np.random.default_rng(self.spec.seed)
        n, k = z.shape
        w = np.zeros(k)
        b = 0.0
        lr = float(p["learning_rate"])
        l2 = float(p["l2"])
        batch = int(p["batch_size"])
        yf = y.astype(np.float64)
        for _ in range(int(p["epochs"])):
            order = rng.permutation(n)
            for start in range(0, n, batch):
                rows = order[start : start + batch]
                zb = z[rows]
                err = _sigmoid(zb @ w + b) - yf[rows]
                w -= lr * (zb.T @ err / len(rows) + l2 * w)
                b -= lr * float(err.mean())
        self._weights = w
        self._bias = b
        return self

    def predict(self, x: np.ndarray) -> np.ndarray:
        z = self._scaler.transform(x)
        return (_sigmoid(z @ self._weights + self._bias) >= 0.5).astype(np.int64)


def _sigmoid(v: np.ndarray) -> np.ndarray:
    out = np.empty_like(v, dtype=np.float64)
    pos = v >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-v[pos]))
    ev = np.exp(v[~pos])
    out[~pos] = ev / (1.0 + ev)
    return out


class GaussianNBModel:
    """Per-class Gaussian likelihoods with smoothed variances.

    The smoothing term is ``var_smoothing`` times the largest per-feature
    variance of the training data, added to every class variance.
    """

    def __init__(self, spec: ClassifierSpec, feature_subset: tuple[int, ...]):
        self.spec = spec
        self.feature_subset = feature_subset
        self._means: np.ndarray | None = None
        self._vars: np.ndarray | None = None
        self._log_priors: np.ndarray | None = None

    def fit(self, x: np.ndarray, y: np.ndarray) -> "GaussianNBModel":
        p = self.spec.resolved()
        eps = float(p["var_smoothing"]) * max(float(x.var(axis=0).max()), 1e-300)
        means, variances, priors = [], [], []
        for c in (0, 1):
            xc = x[y == c]
            means.append(xc.mean(axis=0))
            variances.append(xc.var(axis=0) + eps)
            priors.append(len(xc) / len(x))
        self._means = np.array(means)
        self._vars = np.array(variances)
        self._log_priors = np.log(np.array(priors))
        return self

    def predict(self, x: np.ndarray) -> np.ndarray:
        scores = np.empty((len(x), 2))
        for c in (0, 1):
            diff = x - self._means[c]
            scores[:, c] = self._log_priors[c] - 0.5 * np.sum(
                np.log(2.0 * np.pi * self._vars[c]) + diff**2 / self._vars[c], axis=1
            )
        return np.argmax(scores, axis=1).astype(np.int64)


_MODEL_CLASSES = {
    "decision_tree": DecisionTreeModel,
    "logistic_sgd": LogisticSGDModel,
    "gaussian_nb": GaussianNBModel,
}


def train_model(spec: ClassifierSpec, train: Dataset, feature_subset: Sequence[int]):
    """Fit the specified model on the chosen training columns.

    Deterministic in (spec.seed, data, subset); the tree and naive Bayes
    have no stochastic component at all.
    """
    cols = _check_subset(train, feature_subset)
    if len(np.unique(train.target)) < 2:
        raise SingleClassError("training data contains a single class")
    model = _MODEL_CLASSES[spec.kind](spec, tuple(int(c) for c in cols))
    model.fit(train.features[:, cols], train.target)
    return model


def evaluate(model, test: Dataset, feature_subset: Sequence[int]) -> EvalResult:
    """Confusion-matrix metrics of ``model`` on ``test``.

    ``feature_subset`` must match the subset the model was trained on.
    """
    cols = tuple(int(c) for c in feature_subset)
    if cols != tuple(model.feature_subset):
        raise SubsetMismatchError(
            f"evaluation subset {cols} differs from training subset {model.feature_subset}"
        )
    predicted = model.predict(test.features[:, np.asarray(cols, dtype=np.int64)])
    actual = test.target
    tn = int(np.sum((actual == 0) & (predicted == 0)))
    fp = int(np.sum((actual == 0) & (predicted == 1)))
    fn = int(np.sum((actual == 1) & (predicted == 0)))
    tp = int(np.sum((actual == 1) & (predicted == 1)))
    n = len(actual)
    degenerate = (tp + fp) == 0
    return EvalResult(
        accuracy=(tp + tn) / n,
        precision=0.0 if degenerate else tp / (tp + fp),
        confusion=((tn, fp), (fn, tp)),
        n_test=n,
        degenerate_precision=degenerate,
    )
