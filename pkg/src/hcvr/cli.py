"""Command-line pipeline: ``hcvr {select,sweep,compare,baseline}``.

Every command loads a CSV dataset, applies the configured train/test
split, and writes machine-readable artifacts into an output directory
with a fixed layout (``selection.json``, ``sweep.csv``/``sweep.json``,
``comparison.csv``/``comparison.json``, ``ranked.json``, plus
``run-config.json`` describing the run). Outputs carry no timestamps, so
re-running a saved config on the same data reproduces them byte for
byte.

Exit codes: 0 on success, 2 for usage or validation problems, 1 for
runtime failures. Diagnostics go to stderr; with ``--quiet`` stdout
carries only the machine payload selected by ``--format``.

All randomness derives from the single ``--seed``: the split uses
``seed``, the sweep's inner validation split ``seed + 1``, and the
classifiers ``seed + 2``.

If ``HCVR_CACHE_DIR`` is set, ``select`` caches correlation profiles
there as JSON, keyed by the dataset content hash and the split seed.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

from .baselines import anova_f_scores, k_best, mrmr_select, mutual_info_scores
from .classifiers import CLASSIFIER_KINDS, ClassifierSpec
from .comparison import MethodConfig, compare_methods
from .correlation import CorrelationProfile, build_profile
from .dataset import Dataset, SplitSpec, load_csv, train_test_split
from .errors import (
    HcvrError,
    InvalidFractionError,
    InvalidKError,
    InvalidRangeError,
    InvalidThresholdError,
)
from .voting import SelectionReport, select, sweep

_METHOD_CHOICES = ("hcvr", "anova_f", "cfs", "mutual_info", "mi", "mrmr")
_VALIDATION_ERRORS = (
    InvalidThresholdError,
    InvalidFractionError,
    InvalidKError,
    InvalidRangeError,
)


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Complete, serializable description of one CLI run."""

    command: str
    data: str
    label: int | str = -1
    header: bool = False
    test_fraction: float = 0.2
    stratified: bool = True
    seed: int = 0
    theta: float | None = None
    theta_min: float = 0.0
    theta_max: float = 0.5
    step: float = 0.02
    refine: bool = False
    classifiers: tuple[str, ...] = ("decision_tree",)
    methods: tuple[str, ...] = ("hcvr", "anova_f", "mi", "mrmr")
    k: int = 10
    method: str = "anova_f"
    out: str = "hcvr-out"
    format: str = "json"

    def to_json(self) -> str:
        obj = dataclasses.asdict(self)
        obj["classifiers"] = list(self.classifiers)
        obj["methods"] = list(self.methods)
        return json.dumps(obj, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        obj = json.loads(text)
        obj["classifiers"] = tuple(obj.get("classifiers", ()))
        obj["methods"] = tuple(obj.get("methods", ()))
        return cls(**obj)

    @property
    def split_seed(self) -> int:
        return self.seed

    @property
    def sweep_seed(self) -> int:
        return self.seed + 1

    @property
    def classifier_seed(self) -> int:
        return self.seed + 2


def _parse_label(text: str) -> int | str:
    try:
        return int(text)
    except ValueError:
        return text


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hcvr",
        description="Correlation-aware pairwise voting for feature selection.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser):
        p.add_argument("--data", required=True, help="CSV dataset path (.gz accepted)")
        p.add_argument(
            "--label",
            type=_parse_label,
            default=-1,
            help="label column: index (negative counts from the end) or header name",
        )
        p.add_argument("--header", action="store_true", help="first row is a header")
        p.add_argument("--test-fraction", type=float, default=0.2)
        p.add_argument(
            "--no-stratify",
            dest="stratified",
            action="store_false",
            help="plain random split instead of stratified",
        )
        p.add_argument("--seed", type=int, default=0, help="master seed for the run")
        p.add_argument("--out", default="hcvr-out", help="output directory")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument(
            "--quiet",
            action="store_true",
            help="print only the machine payload on stdout",
        )

    def add_sweep_opts(p: argparse.ArgumentParser):
        p.add_argument("--theta-min", type=float, default=0.0)
        p.add_argument("--theta-max", type=float, default=0.5)
        p.add_argument("--step", type=float, default=0.02)
        p.add_argument(
            "--refine",
            action="store_true",
            help="second sweep pass at step/10 around the coarse optimum",
        )

    p_select = sub.add_parser("select", help="majority vote at a fixed threshold")
    add_common(p_select)
    p_select.add_argument("--theta", type=float, required=True)

    p_sweep = sub.add_parser("sweep", help="threshold-vs-accuracy trace")
    add_common(p_sweep)
    add_sweep_opts(p_sweep)
    p_sweep.add_argument(
        "--classifier", choices=CLASSIFIER_KINDS, default="decision_tree"
    )

    p_compare = sub.add_parser(
        "compare", help="classifier-by-method accuracy/precision grid"
    )
    add_common(p_compare)
    add_sweep_opts(p_compare)
    p_compare.add_argument(
        "--classifiers",
        nargs="+",
        choices=CLASSIFIER_KINDS,
        default=list(CLASSIFIER_KINDS),
    )
    p_compare.add_argument(
        "--methods", nargs="+", choices=_METHOD_CHOICES,
        default=["hcvr", "anova_f", "mi", "mrmr"],
    )
    p_compare.add_argument("--k", type=int, default=10, help="k for the filter baselines")
    p_compare.add_argument(
        "--theta", type=float, default=None,
        help="fixed voting threshold (default: tune by sweep per classifier)",
    )

    p_baseline = sub.add_parser("baseline", help="rank features with one filter")
    add_common(p_baseline)
    p_baseline.add_argument(
        "--method", choices=("anova_f", "cfs", "mutual_info", "mi", "mrmr"),
        default="anova_f",
    )
    p_baseline.add_argument("--k", type=int, default=10)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = {
        "command": args.command,
        "data": args.data,
        "label": args.label,
        "header": args.header,
        "test_fraction": args.test_fraction,
        "stratified": args.stratified,
        "seed": args.seed,
        "out": args.out,
        "format": args.format,
    }
    if args.command == "select":
        fields["theta"] = args.theta
    if args.command in ("sweep", "compare"):
        fields.update(
            theta_min=args.theta_min,
            theta_max=args.theta_max,
            step=args.step,
            refine=args.refine,
        )
    if args.command == "sweep":
        fields["classifiers"] = (args.classifier,)
    if args.command == "compare":
        fields.update(
            classifiers=tuple(args.classifiers),
            methods=tuple(args.methods),
            k=args.k,
            theta=args.theta,
        )
    if args.command == "baseline":
        fields.update(method=args.method, k=args.k)
    return RunConfig(**fields)


def _load_and_split(config: RunConfig) -> tuple[Dataset, Dataset, Dataset]:
    data = load_csv(config.data, label_column=config.label, has_header=config.header)
    split = SplitSpec(
        test_fraction=config.test_fraction,
        seed=config.split_seed,
        stratified=config.stratified,
    )
    train, test = train_test_split(data, split)
    return data, train, test


def _cached_profile(train: Dataset, full_hash: str, split_seed: int) -> CorrelationProfile:
    cache_dir = os.environ.get("HCVR_CACHE_DIR")
    if not cache_dir:
        return build_profile(train)
    path = Path(cache_dir) / f"profile-{full_hash[:32]}-seed{split_seed}.json"
    if path.exists():
        return CorrelationProfile.from_json(path.read_text())
    profile = build_profile(train)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(profile.to_json())
    return profile


def _write(out_dir: Path, name: str, content: str) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    path.write_text(content)
    return path


def _emit(args: argparse.Namespace, human: str, payload: str):
    if args.quiet:
        sys.stdout.write(payload)
    else:
        sys.stdout.write(human)


def _selection_csv(report: SelectionReport, names: tuple[str, ...]) -> str:
    lines = ["index,name,keep_votes,selected"]
    chosen = set(report.selected)
    for i, name in enumerate(names):
        lines.append(f"{i},{name},{report.tally.keep_votes[i]},{int(i in chosen)}")
    return "\n".join(lines) + "\n"


def _cmd_select(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    data, train, _ = _load_and_split(config)
    profile = _cached_profile(train, data.content_hash(), config.split_seed)
    report = select(
        profile, args.theta, dataset_hash=data.content_hash(), seed=config.split_seed
    )
    out = Path(config.out)
    _write(out, "selection.json", report.to_json() + "\n")
    _write(out, "run-config.json", config.to_json() + "\n")

    votes = report.tally.keep_votes
    chosen = set(report.selected)
    lines = [
        f"threshold {args.theta:g}: kept {report.n_features_out} of "
        f"{report.n_features_in} features (majority of {report.tally.pair_count} votes)",
        "",
        "kept:",
    ]
    for i in report.selected:
        lines.append(f"  {train.feature_names[i]:<28} keep_votes={votes[i]}")
    lines.append("dropped:")
    for i in range(report.n_features_in):
        if i not in chosen:
            lines.append(f"  {train.feature_names[i]:<28} keep_votes={votes[i]}")
    human = "\n".join(lines) + "\n"
    payload = (
        report.to_json() + "\n"
        if config.format == "json"
        else _selection_csv(report, train.feature_names)
    )
    _emit(args, human, payload)
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    _, train, _ = _load_and_split(config)
    spec = ClassifierSpec(kind=args.classifier, seed=config.classifier_seed)
    trace = sweep(
        train,
        spec,
        theta_min=config.theta_min,
        theta_max=config.theta_max,
        step=config.step,
        seed=config.sweep_seed,
        refine=config.refine,
    )
    out = Path(config.out)
    _write(out, "sweep.csv", trace.to_csv())
    _write(out, "sweep.json", trace.to_json() + "\n")
    _write(out, "run-config.json", config.to_json() + "\n")

    best = trace.record_at(trace.best_theta)
    human = (
        f"swept theta over [{config.theta_min:g}, {config.theta_max:g}] "
        f"step {config.step:g} with {trace.classifier_id}\n"
        f"best theta {trace.best_theta:g}: {best.n_selected} features, "
        f"validation accuracy {best.validation_accuracy:.4f}\n"
    )
    payload = trace.to_json() + "\n" if config.format == "json" else trace.to_csv()
    _emit(args, human, payload)
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    _, train, test = _load_and_split(config)
    specs = [
        ClassifierSpec(kind=kind, seed=config.classifier_seed)
        for kind in config.classifiers
    ]
    methods = [
        MethodConfig(
            kind=name,
            k=config.k,
            theta=config.theta if name == "hcvr" else None,
            theta_min=config.theta_min,
            theta_max=config.theta_max,
            step=config.step,
            label=name,
        )
        for name in config.methods
    ]
    table = compare_methods(train, test, specs, methods, sweep_seed=config.sweep_seed)
    out = Path(config.out)
    _write(out, "comparison.csv", table.to_csv())
    _write(out, "comparison.json", table.to_json() + "\n")
    _write(out, "run-config.json", config.to_json() + "\n")

    lines = ["classifier".ljust(16) + "".join(m.ljust(24) for m in table.methods)]
    for c in table.classifiers:
        row = c.ljust(16)
        for m in table.methods:
            cell = table.cell(c, m)
            text = f"{cell.accuracy * 100:.2f}"
            if cell.theta is not None:
                text += f" (T={cell.theta:g}, {cell.n_selected})"
            else:
                text += f" ({cell.n_selected})"
            row += text.ljust(24)
        lines.append(row)
    human = "\n".join(lines) + "\n"
    payload = table.to_json() + "\n" if config.format == "json" else table.to_csv()
    _emit(args, human, payload)
    return 0


def _cmd_baseline(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    _, train, _ = _load_and_split(config)
    method = {"cfs": "anova_f", "mi": "mutual_info"}.get(config.method, config.method)
    if method == "mrmr":
        picked = mrmr_select(train, config.k)
        obj = {"method": "mrmr", "k": config.k, "selected": picked}
        ranked_json = json.dumps(obj, indent=2)
    else:
        ranked = (
            anova_f_scores(train) if method == "anova_f" else mutual_info_scores(train)
        )
        picked = k_best(ranked, config.k)
        obj = json.loads(ranked.to_json())
        obj["k"] = config.k
        obj["selected"] = picked
        ranked_json = json.dumps(obj, indent=2)
    out = Path(config.out)
    _write(out, "ranked.json", ranked_json + "\n")
    _write(out, "run-config.json", config.to_json() + "\n")

    names = [train.feature_names[i] for i in picked]
    human = f"{method} top {config.k}: " + ", ".join(names) + "\n"
    payload = (
        ranked_json + "\n"
        if config.format == "json"
        else "rank,index,name\n"
        + "\n".join(f"{r},{i},{train.feature_names[i]}" for r, i in enumerate(picked))
        + "\n"
    )
    _emit(args, human, payload)
    return 0


_COMMANDS = {
    "select": _cmd_select,
    "sweep": _cmd_sweep,
    "compare": _cmd_compare,
    "baseline": _cmd_baseline,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except _VALIDATION_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (HcvrError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
