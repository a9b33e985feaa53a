"""Correlation-aware pairwise voting: rules, majority tally, threshold sweep.

Every unordered feature pair casts one {0, 1} vote for each of its two
members, driven by the High/Low pattern of three correlations: the pair
correlation and the two feature-target correlations. A feature survives
when its keep votes strictly outnumber its discard votes across all n-1
pairings. Raising the threshold and re-running the vote from the full
feature set gives a backward-elimination sweep; the threshold is tuned
by validation accuracy of a classifier trained on the surviving columns.

The eight-row rule table (votes ``(f1, f2)`` for pattern ``(pair, f1-T,
f2-T)``)::

    (H,L,L) -> (0,0)    (L,H,L) -> (1,0)
    (H,H,L) -> (1,0)    (L,L,H) -> (0,1)
    (H,L,H) -> (0,1)    (L,H,H) -> (1,1)
    (H,H,H) -> (P,Q)    (L,L,L) -> (0,0)

where P = [|rho(f1,T)| >= |rho(f2,T)|] and Q = not P. The H/H/H
comparison is on correlation magnitudes, consistent with the High/Low
classification itself; exact magnitude ties go to f1, so with pairs
always evaluated in (min-index, max-index) order the lower-indexed
feature wins.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .classifiers import ClassifierSpec, classifier_id, evaluate, train_model
from .correlation import CorrelationClass, CorrelationProfile, build_profile, classify
from .dataset import Dataset, SplitSpec, train_test_split
from .errors import InvalidRangeError, TooFewFeaturesError

__all__ = [
    "RuleInput",
    "VoteTally",
    "SelectionReport",
    "SweepRecord",
    "SweepTrace",
    "vote_pair",
    "tally_votes",
    "select",
    "sweep",
]

_H = CorrelationClass.HIGH


@dataclass(frozen=True)
class RuleInput:
    """One pair's inputs to the rule table.

    ``a``, ``b``, ``c`` classify rho(f1,f2), rho(f1,T), rho(f2,T); the raw
    target correlations are carried for the all-High row's comparison.
    """

    a: CorrelationClass
    b: CorrelationClass
    c: CorrelationClass
    rho1t: float = 0.0
    rho2t: float = 0.0


@dataclass(frozen=True)
class VoteTally:
    """Keep-vote counts per feature; each feature is voted n-1 times."""

    keep_votes: np.ndarray

    def __post_init__(self):
        votes = np.asarray(self.keep_votes, dtype=np.int64).copy()
        votes.setflags(write=False)
        object.__setattr__(self, "keep_votes", votes)

    @property
    def n(self) -> int:
        return len(self.keep_votes)

    @property
    def pair_count(self) -> int:
        """Votes cast per feature: one for each of its n-1 pairings."""
        return self.n - 1


@dataclass(frozen=True)
class SelectionReport:
    """Outcome of one majority vote at a fixed threshold."""

    theta: float
    selected: tuple[int, ...]
    tally: VoteTally
    n_features_in: int
    n_features_out: int
    dataset_hash: str | None = None
    seed: int | None = None

    def to_json(self) -> str:
        return json.dumps(
            {
                "theta": self.theta,
                "selected": list(self.selected),
                "keep_votes": self.tally.keep_votes.tolist(),
                "pair_count": self.tally.pair_count,
                "n_features_in": self.n_features_in,
                "n_features_out": self.n_features_out,
                "dataset_hash": self.dataset_hash,
                "seed": self.seed,
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "SelectionReport":
        obj = json.loads(text)
        return cls(
            theta=obj["theta"],
            selected=tuple(obj["selected"]),
            tally=VoteTally(np.array(obj["keep_votes"])),
            n_features_in=obj["n_features_in"],
            n_features_out=obj["n_features_out"],
            dataset_hash=obj.get("dataset_hash"),
            seed=obj.get("seed"),
        )


@dataclass(frozen=True)
class SweepRecord:
    theta: float
    n_selected: int
    train_accuracy: float
    validation_accuracy: float


@dataclass(frozen=True)
class SweepTrace:
    """Threshold-vs-accuracy trace; records ordered by increasing theta."""

    records: tuple[SweepRecord, ...]
    best_theta: float
    classifier_id: str

    def record_at(self, theta: float, tol: float = 1e-9) -> SweepRecord:
        for rec in self.records:
            if abs(rec.theta - theta) <= tol:
                return rec
        raise KeyError(f"no sweep record at theta={theta}")

    def to_json(self) -> str:
        return json.dumps(
            {
                "classifier_id": self.classifier_id,
                "best_theta": self.best_theta,
                "records": [
                    {
                        "theta": r.theta,
                        "n_selected": r.n_selected,
                        "train_acc": r.train_accuracy,
                        "val_acc": r.validation_accuracy,
                    }
                    for r in self.records
                ],
            },
            indent=2,
        )

    def to_csv(self) -> str:
        lines = ["theta,n_selected,train_acc,val_acc"]
        for r in self.records:
            lines.append(
                f"{r.theta:g},{r.n_selected},{r.train_accuracy:.6f},{r.validation_accuracy:.6f}"
            )
        return "\n".join(lines) + "\n"


def vote_pair(rule: RuleInput) -> tuple[int, int]:
    """Votes (for f1, for f2) of a single pair, straight from the table."""
    a, b, c = rule.a is _H, rule.b is _H, rule.c is _H
    if a:
        if b and c:
            p = abs(rule.rho1t) >= abs(rule.rho2t)
            return (1, 0) if p else (0, 1)
        if b:
            return (1, 0)
        if c:
            return (0, 1)
        return (0, 0)
    # uncorrelated pair: each feature stands on its own target relevance
    return (int(b), int(c))


def tally_votes(profile: CorrelationProfile, theta: float) -> VoteTally:
    """Accumulate pair votes over all unordered pairs, lower index as f1."""
    n = profile.n
    if n < 2:
        raise TooFewFeaturesError("voting needs at least 2 features")
    classify(0.0, theta)  # validates theta
    p2p, p2t = profile.p2p, profile.p2t
    high_t = np.abs(p2t) >= theta
    keep = np.zeros(n, dtype=np.int64)
    for i in range(n - 1):
        for j in range(i + 1, n):
            rule = RuleInput(
                a=_H if abs(p2p[i, j]) >= theta else CorrelationClass.LOW,
                b=_H if high_t[i] else CorrelationClass.LOW,
                c=_H if high_t[j] else CorrelationClass.LOW,
                rho1t=float(p2t[i]),
                rho2t=float(p2t[j]),
            )
            v1, v2 = vote_pair(rule)
            keep[i] += v1
            keep[j] += v2
    return VoteTally(keep)


def select(
    profile: CorrelationProfile,
    theta: float,
    dataset_hash: str | None = None,
    seed: int | None = None,
) -> SelectionReport:
    """Features whose keep votes strictly exceed their discard votes.

    With n-1 votes per feature the condition is keep > (n-1)/2; an exact
    balance discards.
    """
    tally = tally_votes(profile, theta)
    n = tally.n
    selected = tuple(int(i) for i in np.flatnonzero(tally.keep_votes > (n - 1) / 2))
    return SelectionReport(
        theta=float(theta),
        selected=selected,
        tally=tally,
        n_features_in=n,
        n_features_out=len(selected),
        dataset_hash=dataset_hash,
        seed=seed,
    )


def _theta_grid(theta_min: float, theta_max: float, step: float) -> list[float]:
    if not (0.0 <= theta_min < theta_max <= 1.0):
        raise InvalidRangeError(f"need 0 <= theta_min < theta_max <= 1, got [{theta_min}, {theta_max}]")
    if step <= 0.0:
        raise InvalidRangeError(f"step must be positive, got {step}")
    thetas = []
    k = 0
    while True:
        t = round(theta_min + k * step, 12)
        if t > theta_max + 1e-12:
            break
        thetas.append(min(t, theta_max))
        k += 1
    return thetas


def _majority_rate(labels: np.ndarray, majority: int) -> float:
    return float(np.mean(labels == majority))


def sweep(
    train: Dataset,
    classifier: ClassifierSpec,
    theta_min: float = 0.0,
    theta_max: float = 0.5,
    step: float = 0.02,
    *,
    validation_fraction: float = 0.2,
    seed: int = 0,
    refine: bool = False,
) -> SweepTrace:
    """Evaluate the vote at each threshold on an inner validation split.

    The training set is split 80-20 (stratified, ``seed``); both the
    correlation profile and the classifier are fitted on the inner
    training part only, so validation rows never influence selection.
    Thresholds where the vote empties the feature set are scored as the
    majority-class predictor. ``best_theta`` maximizes validation
    accuracy, ties broken toward fewer selected features, then toward
    smaller theta. With ``refine``, a second pass at step/10 around the
    coarse optimum is merged into the trace.
    """
    thetas = _theta_grid(theta_min, theta_max, step)
    inner_train, inner_val = train_test_split(
        train, SplitSpec(test_fraction=validation_fraction, seed=seed, stratified=True)
    )
    profile = build_profile(inner_train)

    counts = np.bincount(inner_train.target, minlength=2)
    majority = int(np.argmax(counts))

    def evaluate_theta(theta: float) -> SweepRecord:
        report = select(profile, theta)
        if not report.selected:
            return SweepRecord(
                theta=theta,
                n_selected=0,
                train_accuracy=_majority_rate(inner_train.target, majority),
                validation_accuracy=_majority_rate(inner_val.target, majority),
            )
        model = train_model(classifier, inner_train, report.selected)
        train_acc = evaluate(model, inner_train, report.selected).accuracy
        val_acc = evaluate(model, inner_val, report.selected).accuracy
        return SweepRecord(
            theta=theta,
            n_selected=len(report.selected),
            train_accuracy=train_acc,
            validation_accuracy=val_acc,
        )

    records = [evaluate_theta(t) for t in thetas]

    def best_of(recs: list[SweepRecord]) -> SweepRecord:
        best = recs[0]
        for r in recs[1:]:
            if r.validation_accuracy > best.validation_accuracy:
                best = r
            elif r.validation_accuracy == best.validation_accuracy:
                if r.n_selected < best.n_selected or (
                    r.n_selected == best.n_selected and r.theta < best.theta
                ):
                    best = r
        return best

    if refine:
        coarse_best = best_of(records)
        lo = max(0.0, coarse_best.theta - step)
        hi = min(1.0, coarse_best.theta + step)
        seen = {round(r.theta, 12) for r in records}
        for t in _theta_grid(lo, hi, step / 10.0):
            if round(t, 12) not in seen:
                records.append(evaluate_theta(t))
        records.sort(key=lambda r: r.theta)

    best = best_of(records)
    return SweepTrace(
        records=tuple(records),
        best_theta=best.theta,
        classifier_id=classifier_id(classifier),
    )
