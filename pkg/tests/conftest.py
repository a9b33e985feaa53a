from pathlib import Path

import pytest

from hcvr import Dataset, SplitSpec, build_profile, load_csv, train_test_split

REPO_ROOT = Path(__file__).resolve().parent.parent
SPAMBASE_PATH = REPO_ROOT / "data" / "spambase.csv.gz"

# Master seed for every data-dependent test, fanned out the same way the
# CLI does: split = seed, sweep inner split = seed + 1, classifier = seed + 2.
MASTER_SEED = 42


@pytest.fixture(scope="session")
def spambase() -> Dataset:
    return load_csv(SPAMBASE_PATH, label_column=-1, has_header=False)


@pytest.fixture(scope="session")
def spambase_split(spambase):
    return train_test_split(spambase, SplitSpec(test_fraction=0.2, seed=MASTER_SEED))


@pytest.fixture(scope="session")
def spambase_train(spambase_split):
    return spambase_split[0]


@pytest.fixture(scope="session")
def spambase_test(spambase_split):
    return spambase_split[1]


@pytest.fixture(scope="session")
def spambase_train_profile(spambase_train):
    return build_profile(spambase_train)
