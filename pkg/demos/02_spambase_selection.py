"""Reproduce the SPAMBASE selection counts at the published thresholds.

Loads the bundled SPAMBASE copy, applies the standard 80-20 stratified
split, and runs the majority vote at thresholds 0.02 and 0.04. The
selected-subset sizes land a couple of features away from the published
45 and 54 (the split seed behind those numbers is unknown), and the
inversion between them shows that raising the threshold does not
monotonically shrink the subset.

Run:  python demos/02_spambase_selection.py
"""

from pathlib import Path

from hcvr import SplitSpec, build_profile, load_csv, select, train_test_split

DATA = Path(__file__).resolve().parent.parent / "data" / "spambase.csv.gz"

data = load_csv(DATA, label_column=-1, has_header=False)
print(f"loaded {data.n_rows} rows x {data.n_cols} features "
      f"({int(data.target.sum())} spam / {int((1 - data.target).sum())} ham)")

train, test = train_test_split(data, SplitSpec(test_fraction=0.2, seed=42))
print(f"train {train.n_rows} rows, test {test.n_rows} rows (stratified, seed 42)")

profile = build_profile(train)

for theta in (0.02, 0.04, 0.10, 0.26):
    report = select(profile, theta)
    print(f"\ntheta = {theta:4.2f}: kept {report.n_features_out} of {report.n_features_in}")
    dropped = [i for i in range(data.n_cols) if i not in set(report.selected)]
    votes = report.tally.keep_votes
    show = ", ".join(f"{train.feature_names[i]}({votes[i]})" for i in dropped[:8])
    more = "" if len(dropped) <= 8 else f", ... {len(dropped) - 8} more"
    print(f"  dropped (keep votes in parens): {show}{more}")

print(
    "\nnote the inversion: the subset at 0.02 is smaller than at 0.04 -"
    "\nlow thresholds mark many pairs as correlated, and the head-to-head"
    "\nrule then eliminates the weaker member of each pair"
)
