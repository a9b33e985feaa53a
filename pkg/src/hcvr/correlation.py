"""Pearson correlation profiles: feature-feature matrix and feature-target vector.

A :class:`CorrelationProfile` packages the symmetric pairwise (P2P) matrix
together with the feature-target (P2T) vector; both feed the voting rules
and the redundancy/relevance baselines. The binary target is treated as a
real-valued {0, 1} variable, so the P2T entries are point-biserial
correlations.

Conventions: a zero-variance vector correlates 0 with everything
(including itself, so a degenerate feature's diagonal entry is 0), and
computed values are clamped to [-1, 1] to absorb floating-point drift.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset
from .errors import (
    InvalidThresholdError,
    LengthMismatchError,
    TooFewSamplesError,
)

__all__ = [
    "CorrelationClass",
    "CorrelationProfile",
    "pearson",
    "build_profile",
    "classify",
]


class CorrelationClass(enum.Enum):
    """Thresholded magnitude of a correlation: High iff |rho| >= theta."""

    HIGH = "H"
    LOW = "L"


@dataclass(frozen=True)
class CorrelationProfile:
    """Pairwise feature correlations plus feature-target correlations.

    ``p2p`` is n x n, symmetric, entries in [-1, 1]; ``p2t`` has length n.
    Both arrays are read-only.
    """

    p2p: np.ndarray
    p2t: np.ndarray

    def __post_init__(self):
        p2p = np.asarray(self.p2p, dtype=np.float64)
        p2t = np.asarray(self.p2t, dtype=np.float64)
        if p2p.ndim != 2 or p2p.shape[0] != p2p.shape[1]:
            raise ValueError("p2p must be square")
        if p2t.shape != (p2p.shape[0],):
            raise ValueError("p2t length must match p2p dimension")
        p2p = p2p.copy()
        p2p.setflags(write=False)
        p2t = p2t.copy()
        p2t.setflags(write=False)
        object.__setattr__(self, "p2p", p2p)
        object.__setattr__(self, "p2t", p2t)

    @property
    def n(self) -> int:
        return self.p2p.shape[0]

    def to_json(self) -> str:
        return json.dumps({"p2p": self.p2p.tolist(), "p2t": self.p2t.tolist()})

    @classmethod
    def from_json(cls, text: str) -> "CorrelationProfile":
        obj = json.loads(text)
        return cls(p2p=np.array(obj["p2p"]), p2t=np.array(obj["p2t"]))


def pearson(x: np.ndarray, y: np.ndarray) -> float:
    """Pearson correlation of two equal-length vectors.

    Returns 0.0 when either vector has zero variance; the result is
    clamped to [-1, 1].
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise LengthMismatchError(f"lengths {x.shape} vs {y.shape}")
    if len(x) < 2:
        raise TooFewSamplesError("pearson needs at least 2 samples")
    xc = x - x.mean()
    yc = y - y.mean()
    sx = np.sqrt(np.dot(xc, xc))
    sy = np.sqrt(np.dot(yc, yc))
    if sx == 0.0 or sy == 0.0:
        return 0.0
    r = np.dot(xc, yc) / (sx * sy)
    return float(min(1.0, max(-1.0, r)))


def build_profile(d: Dataset) -> CorrelationProfile:
    """Correlation profile of a dataset: all feature pairs plus target.

    The upper triangle is computed once and mirrored, so symmetry is
    exact. Zero-variance features get 0 everywhere in their row/column
    and in p2t; other diagonal entries are exactly 1.
    """
    x = d.features
    n_rows, n_cols = x.shape
    if n_rows < 2:
        raise TooFewSamplesError("profile needs at least 2 rows")
    xc = x - x.mean(axis=0)
    norms = np.sqrt(np.einsum("ij,ij->j", xc, xc))
    nz = norms > 0.0
    z = np.zeros_like(xc)
    z[:, nz] = xc[:, nz] / norms[nz]

    prod = z.T @ z
    p2p = np.zeros((n_cols, n_cols))
    iu = np.triu_indices(n_cols, k=1)
    p2p[iu] = np.clip(prod[iu], -1.0, 1.0)
    p2p = p2p + p2p.T
    p2p[np.diag_indices(n_cols)] = np.where(nz, 1.0, 0.0)

    t = d.target.astype(np.float64)
    tc = t - t.mean()
    tnorm = np.sqrt(np.dot(tc, tc))
    if tnorm > 0.0:
        p2t = np.clip(z.T @ (tc / tnorm), -1.0, 1.0)
    else:
        p2t = np.zeros(n_cols)
    return CorrelationProfile(p2p=p2p, p2t=p2t)


def classify(rho: float, theta: float) -> CorrelationClass:
    """High iff |rho| >= theta, Low otherwise."""
    if not 0.0 <= theta <= 1.0:
        raise InvalidThresholdError(f"theta {theta} not in [0, 1]")
    return CorrelationClass.HIGH if abs(rho) >= theta else CorrelationClass.LOW
