"""Cross-validated evaluation of feature subsets and rank statistics.

KNN is the only built-in classifier; anything with ``fit(X, y)`` and
``predict(X)`` can be plugged into :func:`cross_validate`.
"""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field
from typing import Callable, Protocol, Sequence

import numpy as np
from scipy.stats import rankdata

from .dataset import FuzzyDecisionSystem
from .selection import SelectionTrace


class Classifier(Protocol):
    def fit(self, X: np.ndarray, y: np.ndarray) -> "Classifier": ...

    def predict(self, X: np.ndarray) -> np.ndarray: ...


def knn_predict(train_X, train_y, query, k: int = 5) -> int:
    return int(KNNClassifier(k).fit(train_X, train_y).predict(np.atleast_2d(query))[0])


class KNNClassifier:
    """Majority vote among the ``k`` nearest training samples (Euclidean).

    Distance ties keep the lower training index; vote ties go to the
    smallest class id.
    """

    def __init__(self, k: int = 5):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = k

    def fit(self, X, y):
        self.X_ = np.asarray(X, dtype=float)
        self.y_ = np.asarray(y, dtype=np.intp)
        if self.X_.shape[0] == 0:
            raise ValueError("empty training set")
        return self

    def predict(self, X):
        Q = np.asarray(X, dtype=float)
        diff = Q[:, None, :] - self.X_[None, :, :]
        d2 = np.einsum("qnd,qnd->qn", diff, diff)
        k = min(self.k, self.X_.shape[0])
        nearest = np.argsort(d2, axis=1, kind="stable")[:, :k]
        votes = self.y_[nearest]
        n_ids = int(self.y_.max()) + 1
        counts = np.apply_along_axis(np.bincount, 1, votes, minlength=n_ids)
        return np.argmax(counts, axis=1)


@dataclass(frozen=True, eq=False)
class FoldPlan:
    k: int
    assignments: np.ndarray
    seed: int = 0
    stratified: bool = True

    def folds(self):
        """Yield ``(train_idx, test_idx)`` for each fold id in order."""
        for f in range(self.k):
            test = np.flatnonzero(self.assignments == f)
            train = np.flatnonzero(self.assignments != f)
            yield train, test


def make_fold_plan(labels, k: int = 10, seed: int = 0, stratified: bool = True) -> FoldPlan:
    """Random k-fold assignment.

    Stratified plans shuffle each class and deal it round-robin, continuing
    from where the previous class stopped, so every class is spread over the
    folds within one sample of its share.
    """
    y = np.asarray(labels)
    n = y.shape[0]
    if k < 2:
        raise ValueError("need at least 2 folds")
    if n < k:
        raise ValueError(f"{n} samples cannot fill {k} folds")
    rng = np.random.default_rng(seed)
    assign = np.empty(n, dtype=np.intp)
    if stratified:
        _, first = np.unique(y, return_index=True)
        offset = 0
        for lab in y[np.sort(first)]:
            members = rng.permutation(np.flatnonzero(y == lab))
            assign[members] = (offset + np.arange(members.size)) % k
            offset = (offset + members.size) % k
    else:
        assign[rng.permutation(n)] = np.arange(n) % k
    return FoldPlan(k, assign, seed, stratified)


def metrics(predictions, truths) -> tuple[float, float, float]:
    """Accuracy, macro precision and macro F1.

    Classes are those appearing in either vector. A class never predicted
    has precision 0; a class with precision and recall both 0 has F1 0.
    """
    p = np.asarray(predictions)
    t = np.asarray(truths)
    if p.shape != t.shape or p.size == 0:
        raise ValueError("predictions and truths must be non-empty and equal length")
    acc = float(np.mean(p == t))
    precs, f1s = [], []
    for c in np.union1d(p, t):
        tp = np.sum((p == c) & (t == c))
        n_pred, n_true = np.sum(p == c), np.sum(t == c)
        prec = tp / n_pred if n_pred else 0.0
        rec = tp / n_true if n_true else 0.0
        precs.append(prec)
        f1s.append(2 * prec * rec / (prec + rec) if prec + rec > 0 else 0.0)
    return acc, float(np.mean(precs)), float(np.mean(f1s))


@dataclass
class EvalReport:
    accuracy: list[float] = field(default_factory=list)
    precision: list[float] = field(default_factory=list)
    f1: list[float] = field(default_factory=list)
    subsets: list[list[int]] = field(default_factory=list)
    runtime: float = 0.0

    @staticmethod
    def _stat(values):
        return float(np.mean(values)), float(np.std(values))

    @property
    def mean_accuracy(self) -> float:
        return self._stat(self.accuracy)[0]

    @property
    def n_selected(self) -> list[int]:
        return [len(s) for s in self.subsets]

    def summary(self) -> dict:
        out = {}
        for name in ("accuracy", "precision", "f1"):
            mean, std = self._stat(getattr(self, name))
            out[name] = {"mean": mean, "std": std, "folds": list(getattr(self, name))}
        out["n_selected"] = {"mean": float(np.mean(self.n_selected)), "folds": self.n_selected}
        out["subsets"] = self.subsets
        out["runtime_s"] = self.runtime
        return out


Selector = Callable[[FuzzyDecisionSystem], "Sequence[int] | SelectionTrace"]


def _as_subset(result) -> list[int]:
    if isinstance(result, SelectionTrace):
        return list(result.selected)
    return [int(a) for a in result]


def _resolve(selector, train: FuzzyDecisionSystem) -> list[int]:
    if selector is None:
        return list(range(train.n_features))
    if callable(selector):
        return _as_subset(selector(train))
    return _as_subset(selector)


def _check_classes(fds: FuzzyDecisionSystem, train_idx, fold: int):
    missing = set(np.unique(fds.labels)) - set(np.unique(fds.labels[train_idx]))
    if missing:
        warnings.warn(f"fold {fold}: classes {sorted(missing)} absent from training data",
                      RuntimeWarning, stacklevel=3)


def cross_validate(fds: FuzzyDecisionSystem, selector=None, plan: FoldPlan | None = None,
                   k_neighbors: int = 5, *, select_once: bool = False,
                   classifier: Callable[[], Classifier] | None = None) -> EvalReport:
    """K-fold evaluation of a selector (callable), a fixed subset, or all features.

    By default the selector runs on each training fold only. ``select_once``
    selects on the whole system first and reuses that subset for every fold.
    """
    if plan is None:
        plan = make_fold_plan(fds.labels)
    if fds.n_samples < plan.k:
        raise ValueError("fewer samples than folds")
    make_clf = classifier or (lambda: KNNClassifier(k_neighbors))
    t0 = time.perf_counter()
    fixed = _resolve(selector, fds) if select_once else None
    report = EvalReport()
    for f, (train, test) in enumerate(plan.folds()):
        _check_classes(fds, train, f)
        subset = fixed if fixed is not None else _resolve(selector, fds.restrict(train))
        clf = make_clf().fit(fds.samples[np.ix_(train, subset)], fds.labels[train])
        pred = clf.predict(fds.samples[np.ix_(test, subset)])
        acc, prec, f1 = metrics(pred, fds.labels[test])
        report.accuracy.append(acc)
        report.precision.append(prec)
        report.f1.append(f1)
        report.subsets.append(list(subset))
    report.runtime = time.perf_counter() - t0
    return report


def cross_validate_prefixes(fds: FuzzyDecisionSystem, selector, max_features: int,
                            plan: FoldPlan | None = None, k_neighbors: int = 5) -> list[EvalReport]:
    """Evaluate the first 1..max_features features of an ordered selection.

    The selector runs once per training fold; entry ``i`` of the result is
    the report for subsets of size ``i + 1``. Greedy forward selection with
    threshold ``d`` returns exactly the length-``d`` prefix, so this is a
    cheap sweep over the threshold.
    """
    if plan is None:
        plan = make_fold_plan(fds.labels)
    t0 = time.perf_counter()
    reports = [EvalReport() for _ in range(max_features)]
    for f, (train, test) in enumerate(plan.folds()):
        _check_classes(fds, train, f)
        order = _resolve(selector, fds.restrict(train))
        for size in range(1, max_features + 1):
            subset = order[:size]
            clf = KNNClassifier(k_neighbors).fit(fds.samples[np.ix_(train, subset)], fds.labels[train])
            pred = clf.predict(fds.samples[np.ix_(test, subset)])
            acc, prec, f1 = metrics(pred, fds.labels[test])
            rep = reports[size - 1]
            rep.accuracy.append(acc)
            rep.precision.append(prec)
            rep.f1.append(f1)
            rep.subsets.append(list(subset))
    elapsed = time.perf_counter() - t0
    for rep in reports:
        rep.runtime = elapsed
    return reports


# --- rank statistics -------------------------------------------------------

class DegenerateStatisticError(ValueError):
    def __init__(self, message, tau_chi2=None):
        super().__init__(message)
        self.tau_chi2 = tau_chi2


@dataclass(frozen=True, eq=False)
class RankTable:
    ranks: np.ndarray  # n datasets x m methods, 1 = best

    @property
    def n(self) -> int:
        return self.ranks.shape[0]

    @property
    def m(self) -> int:
        return self.ranks.shape[1]

    @property
    def average_ranks(self) -> np.ndarray:
        return self.ranks.mean(axis=0)


def rank_methods(scores) -> RankTable:
    """Rank methods per dataset, highest score first, ties sharing mid-ranks."""
    S = np.asarray(scores, dtype=float)
    if S.ndim != 2 or np.isnan(S).any():
        raise ValueError("scores must be a complete n x m matrix")
    return RankTable(np.vstack([rankdata(-row, method="average") for row in S]))


@dataclass(frozen=True)
class FriedmanResult:
    tau_chi2: float
    tau_f: float
    average_ranks: tuple[float, ...]
    n: int
    m: int


def friedman(ranks) -> FriedmanResult:
    """Friedman chi-square statistic and its F-distributed refinement."""
    table = ranks if isinstance(ranks, RankTable) else RankTable(np.asarray(ranks, dtype=float))
    n, m = table.n, table.m
    if n < 2 or m < 2:
        raise ValueError("need at least 2 datasets and 2 methods")
    r = table.average_ranks
    chi2 = 12.0 * n / (m * (m + 1)) * (np.sum(r ** 2) - m * (m + 1) ** 2 / 4.0)
    denom = n * (m - 1) - chi2
    if abs(denom) < 1e-12:
        raise DegenerateStatisticError("tau_F undefined: n(m-1) - tau_chi2 is zero", float(chi2))
    tau_f = (n - 1) * chi2 / denom
    return FriedmanResult(float(chi2), float(tau_f), tuple(float(x) for x in r), n, m)


def critical_difference(q_alpha: float, m: int, n: int) -> float:
    """Post-hoc critical difference for ``m`` methods over ``n`` datasets."""
    if not q_alpha > 0:
        raise ValueError("q_alpha must be > 0")
    return float(q_alpha * np.sqrt(m * (m + 1) / (6.0 * n)))
