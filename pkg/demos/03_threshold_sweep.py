"""Tune the voting threshold against a decision tree on SPAMBASE.

Sweeps theta from 0 to 0.5 in the published 0.02 steps. At each step the
vote re-runs from the full feature set (backward elimination restarts
per threshold), a tree is fitted on the surviving columns of an inner
80-20 split, and validation accuracy is recorded. Accuracy collapses to
the majority-class rate once the threshold eliminates every relevant
feature. Writes the trace CSV next to this script for external plotting.

Run:  python demos/03_threshold_sweep.py
"""

from pathlib import Path

from hcvr import ClassifierSpec, SplitSpec, load_csv, sweep, train_test_split

HERE = Path(__file__).resolve().parent
DATA = HERE.parent / "data" / "spambase.csv.gz"

data = load_csv(DATA)
train, _ = train_test_split(data, SplitSpec(test_fraction=0.2, seed=42))

trace = sweep(
    train,
    ClassifierSpec("decision_tree", seed=44),
    theta_min=0.0,
    theta_max=0.5,
    step=0.02,
    seed=43,
)

print(f"classifier: {trace.classifier_id}")
print("theta  kept  train_acc  val_acc")
peak = max(r.validation_accuracy for r in trace.records)
for r in trace.records:
    bar = "#" * int(60 * r.validation_accuracy)
    mark = " <- best" if r.theta == trace.best_theta else ""
    print(f"{r.theta:5.2f}  {r.n_selected:4d}   {r.train_accuracy:.4f}   "
          f"{r.validation_accuracy:.4f} {bar}{mark}")

best = trace.record_at(trace.best_theta)
print(f"\nbest theta {trace.best_theta:g} keeps {best.n_selected} features "
      f"(validation accuracy {best.validation_accuracy:.4f}, peak {peak:.4f})")

out = HERE / "sweep_trace.csv"
out.write_text(trace.to_csv())
print(f"trace written to {out}")
