import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hcvr import (
    ClassifierSpec,
    CorrelationClass,
    CorrelationProfile,
    Dataset,
    RuleInput,
    SelectionReport,
    VoteTally,
    select,
    sweep,
    tally_votes,
    vote_pair,
)
from hcvr.errors import InvalidRangeError, InvalidThresholdError, TooFewFeaturesError

H = CorrelationClass.HIGH
L = CorrelationClass.LOW

# The eight-row table, written out independently of the implementation:
# (pair, f1-target, f2-target) -> (vote f1, vote f2), with "P" marking the
# conditional all-High row.
RULE_TABLE = {
    (True, False, False): (0, 0),
    (True, True, False): (1, 0),
    (True, False, True): (0, 1),
    (True, True, True): "P",
    (False, True, False): (1, 0),
    (False, False, True): (0, 1),
    (False, True, True): (1, 1),
    (False, False, False): (0, 0),
}


def oracle_vote(a_high, b_high, c_high, rho1t, rho2t):
    entry = RULE_TABLE[(a_high, b_high, c_high)]
    if entry == "P":
        return (1, 0) if abs(rho1t) >= abs(rho2t) else (0, 1)
    return entry


def oracle_tally(profile: CorrelationProfile, theta: float) -> np.ndarray:
    """Naive pairwise enumerator, independent of the library's code path."""
    n = profile.n
    keep = np.zeros(n, dtype=int)
    for i in range(n):
        for j in range(i + 1, n):
            v1, v2 = oracle_vote(
                abs(profile.p2p[i, j]) >= theta,
                abs(profile.p2t[i]) >= theta,
                abs(profile.p2t[j]) >= theta,
                profile.p2t[i],
                profile.p2t[j],
            )
            keep[i] += v1
            keep[j] += v2
    return keep


def random_profile(rng, n):
    m = rng.uniform(-1.0, 1.0, size=(n, n))
    p2p = np.triu(m, 1)
    p2p = p2p + p2p.T + np.eye(n)
    return CorrelationProfile(p2p=p2p, p2t=rng.uniform(-1.0, 1.0, size=n))


class TestVotePair:
    @pytest.mark.parametrize(
        "pattern,expected",
        [
            ((H, L, L), (0, 0)),
            ((H, H, L), (1, 0)),
            ((H, L, H), (0, 1)),
            ((L, H, L), (1, 0)),
            ((L, L, H), (0, 1)),
            ((L, H, H), (1, 1)),
            ((L, L, L), (0, 0)),
        ],
    )
    def test_unconditional_rows(self, pattern, expected):
        a, b, c = pattern
        assert vote_pair(RuleInput(a, b, c, 0.9, 0.8)) == expected

    def test_all_high_first_feature_wins(self):
        assert vote_pair(RuleInput(H, H, H, rho1t=0.5, rho2t=0.3)) == (1, 0)

    def test_all_high_second_feature_wins(self):
        assert vote_pair(RuleInput(H, H, H, rho1t=0.3, rho2t=0.5)) == (0, 1)

    def test_all_high_tie_goes_to_first(self):
        assert vote_pair(RuleInput(H, H, H, rho1t=0.4, rho2t=0.4)) == (1, 0)

    def test_all_high_compares_magnitudes(self):
        # a strongly negative target correlation is highly relevant
        assert vote_pair(RuleInput(H, H, H, rho1t=-0.6, rho2t=0.5)) == (1, 0)
        assert vote_pair(RuleInput(H, H, H, rho1t=0.2, rho2t=-0.9)) == (0, 1)

    def test_exhaustive_against_oracle(self):
        for a, b, c in itertools.product((True, False), repeat=3):
            for rho1t, rho2t in ((0.7, 0.4), (0.4, 0.7), (0.5, 0.5)):
                got = vote_pair(
                    RuleInput(H if a else L, H if b else L, H if c else L, rho1t, rho2t)
                )
                assert got == oracle_vote(a, b, c, rho1t, rho2t)

    def test_correlated_rows_cast_at_most_one_keep(self):
        # rows with a High pair correlation never keep both features
        for b, c in itertools.product((True, False), repeat=2):
            for rho in ((0.9, 0.1), (0.1, 0.9)):
                v1, v2 = vote_pair(RuleInput(H, H if b else L, H if c else L, *rho))
                assert v1 + v2 <= 1


class TestTallyVotes:
    def test_single_pair_example(self):
        profile = CorrelationProfile(
            p2p=np.array([[1.0, 0.9], [0.9, 1.0]]), p2t=np.array([0.8, 0.1])
        )
        tally = tally_votes(profile, 0.2)
        assert tally.keep_votes.tolist() == [1, 0]
        assert tally.pair_count == 1

    def test_all_zero_profile(self):
        profile = CorrelationProfile(p2p=np.zeros((3, 3)), p2t=np.zeros(3))
        assert tally_votes(profile, 0.2).keep_votes.tolist() == [0, 0, 0]

    def test_matches_oracle_on_random_profiles(self):
        rng = np.random.default_rng(0)
        for _ in range(40):
            n = int(rng.integers(2, 9))
            profile = random_profile(rng, n)
            theta = float(rng.uniform(0.0, 1.0))
            assert tally_votes(profile, theta).keep_votes.tolist() == oracle_tally(
                profile, theta
            ).tolist()

    def test_too_few_features(self):
        profile = CorrelationProfile(p2p=np.eye(1), p2t=np.zeros(1))
        with pytest.raises(TooFewFeaturesError):
            tally_votes(profile, 0.2)

    def test_invalid_theta(self):
        profile = CorrelationProfile(p2p=np.eye(2), p2t=np.zeros(2))
        with pytest.raises(InvalidThresholdError):
            tally_votes(profile, 1.2)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(min_value=0, max_value=2**31), st.integers(2, 8))
    def test_tally_bounds_property(self, seed, n):
        rng = np.random.default_rng(seed)
        profile = random_profile(rng, n)
        tally = tally_votes(profile, 0.3)
        votes = tally.keep_votes
        assert np.all(votes >= 0) and np.all(votes <= n - 1)
        assert votes.sum() <= n * (n - 1)  # two keeps max per pair


class TestSelect:
    def test_majority_needs_strictly_more_keeps(self):
        # keep votes come out [2, 1, 2]: feature 1 splits 1-1 and is dropped
        profile = CorrelationProfile(
            p2p=np.array([[1.0, 0.1, 0.1], [0.1, 1.0, 0.9], [0.1, 0.9, 1.0]]),
            p2t=np.array([0.5, 0.3, 0.4]),
        )
        report = select(profile, 0.2)
        assert report.tally.keep_votes.tolist() == [2, 1, 2]
        assert report.selected == (0, 2)
        assert report.n_features_in == 3
        assert report.n_features_out == 2

    def test_selected_sorted_ascending(self):
        rng = np.random.default_rng(8)
        profile = random_profile(rng, 7)
        report = select(profile, 0.25)
        assert list(report.selected) == sorted(report.selected)

    def test_idempotent(self):
        profile = random_profile(np.random.default_rng(3), 6)
        a = select(profile, 0.3)
        b = select(profile, 0.3)
        assert a.selected == b.selected
        assert a.tally.keep_votes.tolist() == b.tally.keep_votes.tolist()

    def test_report_json_round_trip(self):
        profile = random_profile(np.random.default_rng(4), 5)
        report = select(profile, 0.4, dataset_hash="abc123", seed=7)
        again = SelectionReport.from_json(report.to_json())
        assert again.selected == report.selected
        assert again.theta == report.theta
        assert again.dataset_hash == "abc123"
        assert again.seed == 7
        assert again.tally.keep_votes.tolist() == report.tally.keep_votes.tolist()

    def test_spambase_counts_at_published_thresholds(self, spambase_train_profile):
        at_002 = select(spambase_train_profile, 0.02)
        at_004 = select(spambase_train_profile, 0.04)
        assert 42 <= at_002.n_features_out <= 48
        assert 51 <= at_004.n_features_out <= 57


def two_cluster_dataset(n=120, seed=0):
    rng = np.random.default_rng(seed)
    y = np.array([0, 1] * (n // 2))
    signal = y + rng.normal(0.0, 0.4, size=n)
    weak = y + rng.normal(0.0, 2.0, size=n)
    noise = rng.normal(size=n)
    x = np.column_stack([signal, weak, noise])
    return Dataset(x, y, ("signal", "weak", "noise"))


class TestSweep:
    def test_single_record_when_step_exceeds_range(self):
        ds = two_cluster_dataset()
        trace = sweep(ds, ClassifierSpec("gaussian_nb"), 0.0, 0.4, 0.5, seed=1)
        assert len(trace.records) == 1
        assert trace.records[0].theta == 0.0
        assert trace.best_theta == 0.0

    def test_thetas_strictly_increasing_by_step(self):
        ds = two_cluster_dataset()
        trace = sweep(ds, ClassifierSpec("gaussian_nb"), 0.0, 0.2, 0.05, seed=1)
        thetas = [r.theta for r in trace.records]
        assert thetas == pytest.approx([0.0, 0.05, 0.10, 0.15, 0.20])

    @pytest.mark.parametrize(
        "lo,hi,step",
        [(0.4, 0.2, 0.02), (0.0, 1.2, 0.02), (-0.1, 0.4, 0.02), (0.0, 0.4, 0.0), (0.0, 0.4, -0.1)],
    )
    def test_invalid_range(self, lo, hi, step):
        ds = two_cluster_dataset()
        with pytest.raises(InvalidRangeError):
            sweep(ds, ClassifierSpec("gaussian_nb"), lo, hi, step)

    def test_empty_selection_scored_as_majority_class(self):
        # tiny correlations everywhere at high theta -> nothing selected
        rng = np.random.default_rng(2)
        x = rng.normal(size=(200, 4))
        y = np.array([0, 1] * 100)
        ds = Dataset(x, y, tuple("abcd"))
        trace = sweep(ds, ClassifierSpec("gaussian_nb"), 0.8, 0.9, 0.1, seed=3)
        for record in trace.records:
            assert record.n_selected == 0
            assert record.validation_accuracy == pytest.approx(0.5)
            assert record.train_accuracy == pytest.approx(0.5)

    def test_best_theta_smallest_on_exact_ties(self):
        # one dominant feature, one weak noise column: every theta in
        # [0.1, 0.2] selects exactly {signal}, so the accuracies tie and
        # the smallest theta must win
        rng = np.random.default_rng(4)
        y = np.array([0, 1] * 250)
        x = np.column_stack([y + rng.normal(0.0, 0.5, 500), rng.normal(size=500)])
        ds = Dataset(x, y, ("signal", "noise"))
        trace = sweep(ds, ClassifierSpec("gaussian_nb"), 0.1, 0.2, 0.05, seed=4)
        assert {r.n_selected for r in trace.records} == {1}
        accs = {r.validation_accuracy for r in trace.records}
        assert len(accs) == 1
        assert trace.best_theta == 0.1

    def test_trace_serialization(self):
        ds = two_cluster_dataset()
        trace = sweep(ds, ClassifierSpec("gaussian_nb"), 0.0, 0.1, 0.05, seed=5)
        obj = json.loads(trace.to_json())
        assert obj["classifier_id"] == "gaussian_nb"
        assert len(obj["records"]) == len(trace.records)
        csv_text = trace.to_csv()
        header, *rows = csv_text.strip().split("\n")
        assert header == "theta,n_selected,train_acc,val_acc"
        assert len(rows) == len(trace.records)

    def test_refine_adds_finer_grid(self):
        ds = two_cluster_dataset()
        coarse = sweep(ds, ClassifierSpec("gaussian_nb"), 0.0, 0.2, 0.1, seed=6)
        fine = sweep(ds, ClassifierSpec("gaussian_nb"), 0.0, 0.2, 0.1, seed=6, refine=True)
        assert len(fine.records) > len(coarse.records)
        thetas = [r.theta for r in fine.records]
        assert thetas == sorted(thetas)
        assert len(set(round(t, 12) for t in thetas)) == len(thetas)

    def test_deterministic(self):
        ds = two_cluster_dataset()
        a = sweep(ds, ClassifierSpec("decision_tree", seed=1), 0.0, 0.2, 0.05, seed=7)
        b = sweep(ds, ClassifierSpec("decision_tree", seed=1), 0.0, 0.2, 0.05, seed=7)
        assert a == b
