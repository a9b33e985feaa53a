"""hcvr: correlation-aware pairwise voting for feature selection.

The package splits into small, composable layers:

``dataset``
    CSV loading, stratified train/test splitting, standardization.
``correlation``
    Pearson feature-feature matrix and feature-target vector.
``voting``
    The pairwise voting rules, majority selection, and the threshold
    sweep that tunes the cut-off against a classifier.
``baselines``
    Non-iterative filters: ANOVA-F k-best, mutual-information k-best,
    and greedy mRMR.
``classifiers``
    Deterministic in-house models (CART, logistic SGD, Gaussian NB)
    plus confusion-matrix metrics.
``comparison``
    The classifier-by-method results grid.
``cli``
    ``hcvr`` command-line entry point.
"""

from .baselines import (
    RankedFeatures,
    anova_f_scores,
    k_best,
    mrmr_select,
    mutual_info_scores,
)
from .classifiers import (
    CLASSIFIER_KINDS,
    ClassifierSpec,
    EvalResult,
    evaluate,
    train_model,
)
from .comparison import CellResult, ComparisonTable, MethodConfig, compare_methods
from .correlation import (
    CorrelationClass,
    CorrelationProfile,
    build_profile,
    classify,
    pearson,
)
from .dataset import (
    Dataset,
    ScalerParams,
    SplitSpec,
    load_csv,
    split_indices,
    standardize,
    train_test_split,
)
from .voting import (
    RuleInput,
    SelectionReport,
    SweepRecord,
    SweepTrace,
    VoteTally,
    select,
    sweep,
    tally_votes,
    vote_pair,
)

__version__ = "0.1.0"

__all__ = [
    "CLASSIFIER_KINDS",
    "CellResult",
    "ClassifierSpec",
    "ComparisonTable",
    "CorrelationClass",
    "CorrelationProfile",
    "Dataset",
    "EvalResult",
    "MethodConfig",
    "RankedFeatures",
    "RuleInput",
    "ScalerParams",
    "SelectionReport",
    "SplitSpec",
    "SweepRecord",
    "SweepTrace",
    "VoteTally",
    "anova_f_scores",
    "build_profile",
    "classify",
    "compare_methods",
    "evaluate",
    "k_best",
    "load_csv",
    "mrmr_select",
    "mutual_info_scores",
    "pearson",
    "select",
    "split_indices",
    "standardize",
    "sweep",
    "tally_votes",
    "train_model",
    "train_test_split",
    "vote_pair",
]
