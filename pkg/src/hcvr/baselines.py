"""Non-iterative filter baselines: ANOVA-F, mutual information, mRMR.

All three rank features using statistics of the training data alone.
The ANOVA-F ranking doubles as the correlation-based baseline (same
k-best protocol); mutual information is estimated from joint histograms
after equal-frequency binning, in nats; mRMR uses the greedy difference
criterion (relevance minus mean redundancy, both measured by MI).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset
from .errors import InvalidKError, SingleClassError, TooFewSamplesError

__all__ = [
    "RankedFeatures",
    "anova_f_scores",
    "mutual_info_scores",
    "mrmr_select",
    "k_best",
    "equal_frequency_bins",
    "binned_mutual_information",
]

_F_SENTINEL = float(np.finfo(np.float64).max)


@dataclass(frozen=True)
class RankedFeatures:
    """Per-feature scores plus the descending-score ranking.

    Score ties are broken by ascending feature index, so the order is a
    deterministic permutation of 0..n-1.
    """

    method: str
    scores: np.ndarray
    order: np.ndarray

    def __post_init__(self):
        scores = np.asarray(self.scores, dtype=np.float64).copy()
        order = np.asarray(self.order, dtype=np.int64).copy()
        if sorted(order.tolist()) != list(range(len(scores))):
            raise ValueError("order must be a permutation of 0..n-1")
        scores.setflags(write=False)
        order.setflags(write=False)
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "order", order)

    def to_json(self) -> str:
        return json.dumps(
            {
                "method": self.method,
                "scores": self.scores.tolist(),
                "order": self.order.tolist(),
            },
            indent=2,
        )


def _ranked(method: str, scores: np.ndarray) -> RankedFeatures:
    order = np.lexsort((np.arange(len(scores)), -scores))
    return RankedFeatures(method=method, scores=scores, order=order)


def anova_f_scores(d: Dataset) -> RankedFeatures:
    """One-way ANOVA F statistic of each feature against the two classes.

    F = (between-class SS / 1) / (within-class SS / (N - 2)). A feature
    with identical class distributions scores 0; zero within-class
    variance with distinct class means scores the largest finite float.
    """
    if d.n_rows < 3:
        raise TooFewSamplesError("ANOVA-F needs at least 3 rows")
    y = d.target
    if len(np.unique(y)) < 2:
        raise SingleClassError("ANOVA-F requires both classes")
    x = d.features
    n = d.n_rows
    x0, x1 = x[y == 0], x[y == 1]
    grand = x.mean(axis=0)
    ssb = len(x0) * (x0.mean(axis=0) - grand) ** 2 + len(x1) * (x1.mean(axis=0) - grand) ** 2
    ssw = ((x0 - x0.mean(axis=0)) ** 2).sum(axis=0) + ((x1 - x1.mean(axis=0)) ** 2).sum(axis=0)
    msb = ssb  # df1 = 2 - 1
    msw = ssw / (n - 2)
    scores = np.zeros(d.n_cols)
    ok = msw > 0
    scores[ok] = msb[ok] / msw[ok]
    scores[~ok & (ssb > 0)] = _F_SENTINEL
    return _ranked("anova_f", scores)


def equal_frequency_bins(x: np.ndarray, n_bins: int) -> np.ndarray:
    """Quantile-based discretization into at most ``n_bins`` bins.

    Duplicate quantile edges collapse, so heavily tied values (e.g. a
    binary column) land in fewer, well-defined bins; identical values
    always share a bin.
    """
    if n_bins < 2:
        raise ValueError("n_bins must be >= 2")
    x = np.asarray(x, dtype=np.float64)
    edges = np.quantile(x, np.linspace(0.0, 1.0, n_bins + 1))
    interior = np.unique(edges[1:-1])
    return np.searchsorted(interior, x, side="right").astype(np.int64)


def binned_mutual_information(a: np.ndarray, b: np.ndarray) -> float:
    """Plug-in mutual information (nats) of two integer-coded vectors."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    n = len(a)
    ka = int(a.max()) + 1
    kb = int(b.max()) + 1
    joint = np.bincount(a * kb + b, minlength=ka * kb).reshape(ka, kb) / n
    pa = joint.sum(axis=1)
    pb = joint.sum(axis=0)
    nz = joint > 0
    mi = float(np.sum(joint[nz] * np.log(joint[nz] / np.outer(pa, pb)[nz])))
    return max(mi, 0.0)


def mutual_info_scores(d: Dataset, n_bins: int = 10) -> RankedFeatures:
    """MI between each equal-frequency-binned feature and the target."""
    scores = np.array(
        [
            binned_mutual_information(equal_frequency_bins(d.features[:, j], n_bins), d.target)
            for j in range(d.n_cols)
        ]
    )
    return _ranked("mutual_info", scores)


def mrmr_select(d: Dataset, k: int, n_bins: int = 10) -> list[int]:
    """Greedy minimum-redundancy maximum-relevance selection (difference
    criterion).

    The first pick maximizes MI with the target; each later pick
    maximizes relevance minus the mean MI with the already-selected
    features. Returns k indices in pick order; by construction the
    result for k is a prefix of the result for k+1.
    """
    n = d.n_cols
    if not 1 <= k <= n:
        raise InvalidKError(f"k={k} not in [1, {n}]")
    binned = [equal_frequency_bins(d.features[:, j], n_bins) for j in range(n)]
    relevance = np.array(
        [binned_mutual_information(binned[j], d.target) for j in range(n)]
    )
    selected = [int(np.argmax(relevance))]
    redundancy = np.zeros((0, n))
    while len(selected) < k:
        last = selected[-1]
        row = np.array([binned_mutual_information(binned[last], binned[j]) for j in range(n)])
        redundancy = np.vstack([redundancy, row])
        score = relevance - redundancy.mean(axis=0)
        score[selected] = -np.inf
        selected.append(int(np.argmax(score)))
    return selected


def k_best(ranked: RankedFeatures, k: int) -> list[int]:
    """First k indices of the ranking (ties already broken by index)."""
    if not 1 <= k <= len(ranked.order):
        raise InvalidKError(f"k={k} not in [1, {len(ranked.order)}]")
    return [int(i) for i in ranked.order[:k]]
