"""Regenerate the CSV files bundled in src/fcssc/data/.

wine.csv       UCI Wine recognition data (178 x 13, 3 classes), via scikit-learn.
separable.csv  60 x 6 synthetic set: two label-carrying features, four noise.
"""

import csv
from pathlib import Path

import numpy as np

DATA = Path(__file__).resolve().parents[1] / "src" / "fcssc" / "data"


def write(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def wine():
    from sklearn.datasets import load_wine
    d = load_wine()
    rows = [[repr(float(v)) for v in x] + [int(t)] for x, t in zip(d.data, d.target)]
    write(DATA / "wine.csv", list(d.feature_names) + ["class"], rows)


def separable(seed=7):
    rng = np.random.default_rng(seed)
    y = np.repeat([0, 1], 30)
    signal = y + rng.normal(0, 0.05, y.size)
    echo = 2.0 * y + rng.normal(0, 0.2, y.size)
    noise = rng.uniform(0, 1, (y.size, 4))
    X = np.column_stack([noise[:, :2], signal, noise[:, 2:], echo])
    order = rng.permutation(y.size)
    rows = [[f"{v:.6f}" for v in X[i]] + [f"c{y[i]}"] for i in order]
    write(DATA / "separable.csv", [f"f{j}" for j in range(6)] + ["class"], rows)


if __name__ == "__main__":
    DATA.mkdir(parents=True, exist_ok=True)
    wine()
    separable()
    print("wrote", sorted(p.name for p in DATA.glob("*.csv")))
