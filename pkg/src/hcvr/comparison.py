"""Side-by-side evaluation of selection methods across classifiers.

Builds the (classifier x method) grid: each cell selects features on the
training rows only, trains the classifier on the selected columns, and
reports accuracy, precision, and subset size on the held-out test rows.
The voting method's cell additionally carries the threshold in force,
either fixed or tuned by the sweep for that classifier.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .baselines import anova_f_scores, k_best, mrmr_select, mutual_info_scores
from .classifiers import ClassifierSpec, classifier_id, evaluate, train_model
from .correlation import build_profile
from .dataset import Dataset
from .errors import HcvrError
from .voting import select, sweep

__all__ = ["MethodConfig", "CellResult", "ComparisonTable", "compare_methods"]

METHOD_KINDS = ("hcvr", "anova_f", "mutual_info", "mrmr")

_METHOD_ALIASES = {
    "cfs": "anova_f",
    "mi": "mutual_info",
}


@dataclass(frozen=True)
class MethodConfig:
    """One selection method column of the comparison grid.

    ``kind`` accepts the aliases ``cfs`` (for ``anova_f``) and ``mi``
    (for ``mutual_info``). For ``hcvr``, a fixed ``theta`` skips the
    sweep; otherwise the sweep over [theta_min, theta_max] tunes it per
    classifier. ``k`` applies to the three filter baselines.
    """

    kind: str
    k: int = 10
    theta: float | None = None
    theta_min: float = 0.0
    theta_max: float = 0.5
    step: float = 0.02
    label: str | None = None

    def __post_init__(self):
        kind = _METHOD_ALIASES.get(self.kind, self.kind)
        if kind not in METHOD_KINDS:
            raise ValueError(f"unknown method kind {self.kind!r}")
        object.__setattr__(self, "kind", kind)

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        if self.kind == "hcvr":
            return "hcvr" if self.theta is None else f"hcvr(theta={self.theta:g})"
        return f"{self.kind}(k={self.k})"


@dataclass(frozen=True)
class CellResult:
    accuracy: float
    precision: float
    n_selected: int
    theta: float | None = None

    def as_dict(self) -> dict:
        out = {
            "accuracy": self.accuracy,
            "precision": self.precision,
            "n_selected": self.n_selected,
        }
        if self.theta is not None:
            out["theta"] = self.theta
        return out


@dataclass(frozen=True)
class ComparisonTable:
    """Grid of cells: rows are classifiers, columns are methods."""

    classifiers: tuple[str, ...]
    methods: tuple[str, ...]
    cells: dict

    def cell(self, classifier: str, method: str) -> CellResult:
        return self.cells[(classifier, method)]

    def to_json(self) -> str:
        rows = {
            c: {m: self.cells[(c, m)].as_dict() for m in self.methods}
            for c in self.classifiers
        }
        return json.dumps({"classifiers": list(self.classifiers), "methods": list(self.methods), "rows": rows}, indent=2)

    def to_csv(self) -> str:
        """Grid CSV: one row per classifier, one column per method.

        Cells pack their values as ``acc=..;prec=..;n=..[;theta=..]`` so
        the file keeps the familiar rows-by-columns table shape while
        staying parseable.
        """
        header = ["classifier"] + list(self.methods)
        lines = [",".join(header)]
        for c in self.classifiers:
            row = [c]
            for m in self.methods:
                cell = self.cells[(c, m)]
                packed = f"acc={cell.accuracy:.4f};prec={cell.precision:.4f};n={cell.n_selected}"
                if cell.theta is not None:
                    packed += f";theta={cell.theta:g}"
                row.append(packed)
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


def _select_for_method(
    method: MethodConfig,
    train: Dataset,
    spec: ClassifierSpec,
    sweep_seed: int,
) -> tuple[list[int], float | None]:
    if method.kind == "hcvr":
        theta = method.theta
        if theta is None:
            trace = sweep(
                train,
                spec,
                theta_min=method.theta_min,
                theta_max=method.theta_max,
                step=method.step,
                seed=sweep_seed,
            )
            theta = trace.best_theta
        report = select(build_profile(train), theta, dataset_hash=train.content_hash())
        if not report.selected:
            raise HcvrError(
                f"voting at theta={theta:g} eliminated every feature; lower the threshold"
            )
        return list(report.selected), theta
    if method.kind == "anova_f":
        return k_best(anova_f_scores(train), method.k), None
    if method.kind == "mutual_info":
        return k_best(mutual_info_scores(train), method.k), None
    return mrmr_select(train, method.k), None


def compare_methods(
    train: Dataset,
    test: Dataset,
    specs: list[ClassifierSpec],
    methods: list[MethodConfig],
    *,
    sweep_seed: int = 0,
) -> ComparisonTable:
    """Populate the full grid; selection never sees the test rows."""
    if not specs or not methods:
        raise ValueError("need at least one classifier and one method")
    row_ids = []
    for spec in specs:
        base = classifier_id(spec)
        row_id = base
        suffix = 2
        while row_id in row_ids:
            row_id = f"{base}#{suffix}"
            suffix += 1
        row_ids.append(row_id)
    col_ids = [m.name for m in methods]
    if len(set(col_ids)) != len(col_ids):
        raise ValueError("method labels must be unique")

    cells = {}
    for row_id, spec in zip(row_ids, specs):
        for col_id, method in zip(col_ids, methods):
            cols, theta = _select_for_method(method, train, spec, sweep_seed)
            model = train_model(spec, train, cols)
            result = evaluate(model, test, cols)
            cells[(row_id, col_id)] = CellResult(
                accuracy=result.accuracy,
                precision=result.precision,
                n_selected=len(cols),
                theta=theta,
            )
    return ComparisonTable(
        classifiers=tuple(row_ids), methods=tuple(col_ids), cells=cells
    )
