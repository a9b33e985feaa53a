"""Compare the voting selector against the filter baselines on SPAMBASE.

Builds the full grid: three in-house classifiers by four selection
methods. The baselines pick their 10 best features; the voting method
tunes its threshold per classifier with the sweep, mirroring how each
classifier gets its own best threshold in the original experiments.
Expect a couple of minutes on a laptop-class machine.

Run:  python demos/04_method_comparison.py
"""

from pathlib import Path

from hcvr import (
    ClassifierSpec,
    MethodConfig,
    SplitSpec,
    compare_methods,
    load_csv,
    train_test_split,
)

DATA = Path(__file__).resolve().parent.parent / "data" / "spambase.csv.gz"

data = load_csv(DATA)
train, test = train_test_split(data, SplitSpec(test_fraction=0.2, seed=42))

specs = [
    ClassifierSpec("decision_tree", seed=44),
    ClassifierSpec("logistic_sgd", seed=44),
    ClassifierSpec("gaussian_nb", seed=44),
]
methods = [
    MethodConfig("hcvr", theta_max=0.4),
    MethodConfig("anova_f", k=10),
    MethodConfig("mi", k=10),
    MethodConfig("mrmr", k=10),
]

table = compare_methods(train, test, specs, methods, sweep_seed=43)

width = 26
print("accuracy % (selected count; voting cells also show the tuned threshold)\n")
print("classifier".ljust(16) + "".join(m.ljust(width) for m in table.methods))
for c in table.classifiers:
    row = c.ljust(16)
    for m in table.methods:
        cell = table.cell(c, m)
        text = f"{cell.accuracy * 100:5.2f}"
        if cell.theta is not None:
            text += f" (T={cell.theta:g}, {cell.n_selected})"
        else:
            text += f" ({cell.n_selected})"
        row += text.ljust(width)
    print(row)

print("\nprecision %\n")
print("classifier".ljust(16) + "".join(m.ljust(width) for m in table.methods))
for c in table.classifiers:
    print(c.ljust(16) + "".join(
        f"{table.cell(c, m).precision * 100:5.2f}".ljust(width) for m in table.methods
    ))
