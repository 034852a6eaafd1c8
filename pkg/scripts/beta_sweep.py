"""Accuracy of FCSSC over a beta grid and selected-feature counts.

Prints a table (rows: beta, columns: number of selected features) of mean
10-fold KNN accuracy, plus the all-features baseline. Selection runs inside
each training fold.

    python scripts/beta_sweep.py --dataset wine --max-features 7
"""

import argparse
import json

import numpy as np

from fcssc.dataset import BUNDLED, load_bundled, load_dataset
from fcssc.evaluation import cross_validate, cross_validate_prefixes, make_fold_plan
from fcssc.selection import SelectorConfig, fcssc


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    src = ap.add_mutually_exclusive_group()
    src.add_argument("--dataset", choices=sorted(BUNDLED), default="wine")
    src.add_argument("--csv", help="CSV file with the label in column --label-col")
    ap.add_argument("--label-col", default="-1")
    ap.add_argument("--max-features", type=int, default=7)
    ap.add_argument("--folds", type=int, default=10)
    ap.add_argument("--knn-k", type=int, default=5)
    ap.add_argument("--pi", type=float, default=1.0)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", help="also write the table to this file")
    args = ap.parse_args()

    if args.csv:
        label = int(args.label_col) if args.label_col.lstrip("-").isdigit() else args.label_col
        fds = load_dataset(args.csv, label)
    else:
        fds = load_bundled(args.dataset)
    width = min(args.max_features, fds.n_features)
    plan = make_fold_plan(fds.labels, args.folds, args.seed)
    betas = np.round(np.linspace(0, 1, 11), 1)

    table = {}
    for beta in betas:
        cfg = SelectorConfig(beta=float(beta), delta=width, pi=args.pi, seed=args.seed)
        reps = cross_validate_prefixes(fds, lambda tr, c=cfg: fcssc(tr, c), width, plan, args.knn_k)
        table[float(beta)] = [r.mean_accuracy for r in reps]
    baseline = cross_validate(fds, None, plan, args.knn_k).mean_accuracy

    print("beta  " + " ".join(f"{d:>6d}" for d in range(1, width + 1)))
    for beta, row in table.items():
        print(f"{beta:4.1f}  " + " ".join(f"{v:6.4f}" for v in row))
    best_beta, best_row = max(table.items(), key=lambda kv: max(kv[1]))
    best_d = int(np.argmax(best_row)) + 1
    print(f"\nbest: {max(best_row):.4f} at beta={best_beta} with {best_d} features")
    print(f"all {fds.n_features} features: {baseline:.4f}")

    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump({"betas": list(table), "accuracy": list(table.values()),
                       "baseline": baseline}, fh, indent=2)


if __name__ == "__main__":
    main()
