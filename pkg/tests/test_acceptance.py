"""Acceptance gate: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
report. All data-dependent criteria run on the bundled SPAMBASE copy with
the suite-wide seed convention (split 42, sweep 43, classifiers 44).
"""

import time

import numpy as np
import pytest

from hcvr import (
    ClassifierSpec,
    CorrelationClass,
    Dataset,
    RuleInput,
    SplitSpec,
    anova_f_scores,
    build_profile,
    evaluate,
    mrmr_select,
    mutual_info_scores,
    pearson,
    select,
    sweep,
    tally_votes,
    train_model,
    train_test_split,
    vote_pair,
)
from hcvr.cli import main as cli_main

from tests.test_voting import oracle_tally, random_profile

H = CorrelationClass.HIGH
L = CorrelationClass.LOW

SPLIT_SEED = 42
SWEEP_SEED = 43
CLASSIFIER_SEED = 44


def report(criterion, detail):
    print(f"ACCEPTANCE {criterion}: PASS ({detail})")


@pytest.fixture(scope="module")
def dt_spec():
    return ClassifierSpec("decision_tree", seed=CLASSIFIER_SEED)


@pytest.fixture(scope="module")
def full_sweep_trace(spambase_train, dt_spec):
    return sweep(spambase_train, dt_spec, 0.0, 0.5, 0.02, seed=SWEEP_SEED)


def test_c1_rule_table_fidelity():
    """All 8 High/Low combinations reproduce the vote table exactly."""
    start = time.time()
    expected = {
        (H, L, L): (0, 0),
        (H, H, L): (1, 0),
        (H, L, H): (0, 1),
        (L, H, L): (1, 0),
        (L, L, H): (0, 1),
        (L, H, H): (1, 1),
        (L, L, L): (0, 0),
    }
    for combo, votes in expected.items():
        for rhos in ((0.9, 0.5), (0.5, 0.9)):
            assert vote_pair(RuleInput(*combo, *rhos)) == votes
    # both branches of the all-High row: >= keeps f1, < keeps f2
    assert vote_pair(RuleInput(H, H, H, rho1t=0.5, rho2t=0.3)) == (1, 0)
    assert vote_pair(RuleInput(H, H, H, rho1t=0.3, rho2t=0.5)) == (0, 1)
    assert vote_pair(RuleInput(H, H, H, rho1t=0.4, rho2t=0.4)) == (1, 0)
    elapsed = time.time() - start
    assert elapsed < 1.0
    report(1, f"8 rows + both conditional branches, {elapsed:.3f}s")


def test_c2_brute_force_oracle_equivalence():
    """200 random profiles: tally and selection match a naive enumerator."""
    start = time.time()
    rng = np.random.default_rng(2024)
    for _ in range(200):
        n = int(rng.integers(2, 9))
        profile = random_profile(rng, n)
        theta = float(rng.uniform(0.0, 1.0))
        expected_votes = oracle_tally(profile, theta)
        got = tally_votes(profile, theta)
        assert got.keep_votes.tolist() == expected_votes.tolist()
        expected_selected = [i for i, v in enumerate(expected_votes) if v > (n - 1) / 2]
        assert list(select(profile, theta).selected) == expected_selected
    elapsed = time.time() - start
    assert elapsed < 10.0
    report(2, f"200 profiles, n in [2,8], {elapsed:.2f}s")


def test_c3_spambase_feature_counts(spambase_train_profile):
    """Selection sizes bracket the published 45 and 54 at 0.02 / 0.04."""
    start = time.time()
    n_002 = select(spambase_train_profile, 0.02).n_features_out
    n_004 = select(spambase_train_profile, 0.04).n_features_out
    assert 42 <= n_002 <= 48
    assert 51 <= n_004 <= 57
    elapsed = time.time() - start
    assert elapsed < 5.0
    report(3, f"|theta=0.02| = {n_002}, |theta=0.04| = {n_004}, {elapsed:.2f}s")


def test_c4_non_monotonicity_tolerated(spambase, dt_spec):
    """At least one seed shows fewer features at 0.02 than at 0.04."""
    inversions = []
    for seed in range(1, 6):
        train, _ = train_test_split(spambase, SplitSpec(0.2, seed=seed))
        trace = sweep(train, dt_spec, 0.02, 0.05, 0.02, seed=seed)
        n_002 = trace.record_at(0.02).n_selected
        n_004 = trace.record_at(0.04).n_selected
        inversions.append((seed, n_002, n_004))
    assert any(n2 < n4 for _, n2, n4 in inversions)
    report(4, "counts per seed " + ", ".join(f"s{s}:{a}<{b}" for s, a, b in inversions))


def test_c5_high_theta_collapse(full_sweep_trace):
    """Validation accuracy at theta >= 0.4 sits well below the trace max."""
    best = max(r.validation_accuracy for r in full_sweep_trace.records)
    high = [r for r in full_sweep_trace.records if r.theta >= 0.4]
    assert high, "sweep must cover theta >= 0.4"
    worst_drop = min(best - r.validation_accuracy for r in high)
    assert worst_drop >= 0.05
    report(5, f"max val acc {best:.4f}, drop at theta>=0.4 >= {worst_drop * 100:.1f} pts")


def test_c6_relative_performance(spambase_train, spambase_test, dt_spec, full_sweep_trace):
    """Tuned subset rivals all 57 features and beats size-matched random picks."""
    start = time.time()
    cols_all = list(range(spambase_train.n_cols))

    def dt_test_accuracy(cols):
        model = train_model(dt_spec, spambase_train, cols)
        return evaluate(model, spambase_test, cols).accuracy

    full_acc = dt_test_accuracy(cols_all)
    best_theta = full_sweep_trace.best_theta
    chosen = list(select(build_profile(spambase_train), best_theta).selected)
    assert chosen, "best theta must keep at least one feature"
    hcvr_acc = dt_test_accuracy(chosen)

    random_accs = []
    for seed in range(1, 11):
        rng = np.random.default_rng(seed)
        cols = sorted(rng.choice(spambase_train.n_cols, size=len(chosen), replace=False).tolist())
        random_accs.append(dt_test_accuracy(cols))
    random_mean = float(np.mean(random_accs))

    elapsed = time.time() - start
    assert abs(hcvr_acc - full_acc) <= 0.03, (
        f"selected-subset accuracy {hcvr_acc:.4f} not within 3 points of full {full_acc:.4f}"
    )
    assert hcvr_acc - random_mean >= 0.03, (
        f"margin over random subsets {100 * (hcvr_acc - random_mean):.2f} pts < 3 pts"
    )
    assert elapsed < 300.0
    report(
        6,
        f"theta*={best_theta:g}, k={len(chosen)}, full={full_acc:.4f}, "
        f"selected={hcvr_acc:.4f}, random_mean={random_mean:.4f}, {elapsed:.1f}s",
    )


def test_c7_baseline_sanity(spambase_train):
    """MI identity, ANOVA-F degenerate zero, and the mRMR prefix chain."""
    y = np.array([0, 1] * 200)
    identical = Dataset(y.astype(float)[:, None], y, ("copy",))
    mi = mutual_info_scores(identical).scores[0]
    assert mi == pytest.approx(np.log(2), abs=1e-6)

    const = Dataset(np.full((len(y), 1), 3.7), y, ("const",))
    assert anova_f_scores(const).scores[0] == 0.0

    full = mrmr_select(spambase_train, 10)
    for k in range(1, 11):
        assert mrmr_select(spambase_train, k) == full[:k]
    report(7, f"MI=ln2 within 1e-6, F(const)=0, mRMR prefix holds; picks {full}")


def test_c8_correlation_engine():
    """Matrix path vs scalar oracle, scale invariance, zero-variance zero."""
    rng = np.random.default_rng(88)
    for _ in range(5):
        x = rng.normal(size=(20, 8))
        y = rng.integers(0, 2, 20)
        if y.min() == y.max():
            y[0] = 1 - y[0]
        ds = Dataset(x, y, tuple(f"f{i}" for i in range(8)))
        profile = build_profile(ds)
        for i in range(8):
            assert abs(profile.p2t[i] - pearson(x[:, i], y.astype(float))) <= 1e-12
            for j in range(8):
                assert abs(profile.p2p[i, j] - pearson(x[:, i], x[:, j])) <= 1e-12

    for _ in range(20):
        x = rng.normal(size=12)
        z = rng.normal(size=12)
        a = float(rng.uniform(0.01, 100.0))
        b = float(rng.uniform(-50.0, 50.0))
        assert abs(pearson(a * x + b, z) - pearson(x, z)) <= 1e-9

    assert pearson([1.0, 2.0, 3.0], [5.0, 5.0, 5.0]) == 0.0
    report(8, "matrix/scalar agree to 1e-12; scale invariance 1e-9; zero-variance -> 0")


def test_c9_reproducibility(tmp_path):
    """Two identical compare runs emit byte-identical CSV artifacts."""
    from tests.conftest import SPAMBASE_PATH

    args = [
        "compare",
        "--data", str(SPAMBASE_PATH),
        "--classifiers", "decision_tree", "gaussian_nb",
        "--methods", "hcvr", "anova_f", "mi", "mrmr",
        "--k", "10",
        "--theta-max", "0.2",
        "--step", "0.05",
        "--seed", str(SPLIT_SEED),
        "--quiet",
    ]
    out = tmp_path / "run"
    assert cli_main(args + ["--out", str(out)]) == 0
    first = {
        name: (out / name).read_bytes()
        for name in ("comparison.csv", "comparison.json", "run-config.json")
    }
    assert cli_main(args + ["--out", str(out)]) == 0
    for name, content in first.items():
        assert (out / name).read_bytes() == content, f"{name} changed between runs"
    report(9, f"all artifacts identical across runs (csv {len(first['comparison.csv'])} bytes)")
