"""Fuzzy neighborhood relations and the local-consistency measure.

Also carries the lambda-cut rough-set primitives (granules, fuzzy
decisions, approximations, positive region). All fuzzy cardinalities are
sigma-counts.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dataset import FuzzyDecisionSystem


@dataclass(frozen=True)
class ConsistencyConfig:
    pi: float = 1.0
    lam: float = 0.2

    def __post_init__(self):
        if not self.pi > 0:
            raise ValueError("pi must be > 0")
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError("lambda must lie in [0, 1]")


def adaptive_radius(fds: FuzzyDecisionSystem, a: int, pi: float = 1.0) -> float:
    """Population standard deviation of feature ``a`` divided by ``pi``."""
    if not pi > 0:
        raise ValueError("pi must be > 0")
    return float(np.std(fds.samples[:, a]) / pi)


def similarity_matrix(values: np.ndarray, radius: float) -> np.ndarray:
    """``1 - |v_x - v_y|`` where the gap is within ``radius``, else 0."""
    v = np.asarray(values, dtype=float)
    gap = np.abs(v[:, None] - v[None, :])
    return np.where(gap <= radius, 1.0 - gap, 0.0)


def fuzzy_similarity(fds: FuzzyDecisionSystem, a: int, pi: float = 1.0) -> np.ndarray:
    return similarity_matrix(fds.samples[:, a], adaptive_radius(fds, a, pi))


def subset_relation(relations: Sequence[np.ndarray]) -> np.ndarray:
    """Pointwise minimum of per-feature relations."""
    if len(relations) == 0:
        raise ValueError("feature subset must be non-empty")
    out = np.array(relations[0], dtype=float)
    for R in relations[1:]:
        np.minimum(out, R, out=out)
    return out


class SimilarityStructure:
    """Per-feature radii plus lazily built, cached relation matrices.

    The cache is filled under a lock; reads of already-built matrices need
    no synchronization.
    """

    def __init__(self, fds: FuzzyDecisionSystem, pi: float = 1.0):
        if not pi > 0:
            raise ValueError("pi must be > 0")
        self.fds = fds
        self.pi = pi
        self.radii = np.std(fds.samples, axis=0) / pi
        self._cache: dict[int, np.ndarray] = {}
        self._lock = threading.Lock()

    def relation(self, a: int) -> np.ndarray:
        R = self._cache.get(a)
        if R is None:
            with self._lock:
                R = self._cache.get(a)
                if R is None:
                    R = similarity_matrix(self.fds.samples[:, a], self.radii[a])
                    R.setflags(write=False)
                    self._cache[a] = R
        return R

    def subset_relation(self, subset) -> np.ndarray:
        return subset_relation([self.relation(int(a)) for a in subset])


def same_class_mask(classes: Sequence[np.ndarray], n: int | None = None) -> np.ndarray:
    if n is None:
        n = sum(len(g) for g in classes)
    owner = np.empty(n, dtype=np.intp)
    for ci, g in enumerate(classes):
        owner[g] = ci
    return owner[:, None] == owner[None, :]


def local_consistency(relation: np.ndarray, classes: Sequence[np.ndarray],
                      mask: np.ndarray | None = None) -> float:
    """Mean share of each sample's neighborhood mass that carries its own label.

    ``mask`` (the same-class indicator matrix) can be passed in when the
    same partition is scored repeatedly.
    """
    R = np.asarray(relation, dtype=float)
    if mask is None:
        mask = same_class_mask(classes, R.shape[0])
    own = np.where(mask, R, 0.0).sum(axis=1)
    return float(np.mean(own / R.sum(axis=1)))


def lambda_granule(relation: np.ndarray, lam: float, x: int) -> np.ndarray:
    """Row ``x`` of the relation with entries below ``1 - lam`` zeroed."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lambda must lie in [0, 1]")
    row = np.asarray(relation, dtype=float)[x]
    return np.where(row >= 1.0 - lam, row, 0.0)


def fuzzy_decision(granule: np.ndarray, members) -> float:
    """Share of the granule's sigma-count falling inside the class ``members``."""
    g = np.asarray(granule, dtype=float)
    total = g.sum()
    if total <= 0:
        raise ValueError("granule has zero cardinality")
    return float(g[np.asarray(members, dtype=np.intp)].sum() / total)


def _outside(n: int, members) -> np.ndarray:
    out = np.ones(n, dtype=bool)
    out[np.asarray(members, dtype=np.intp)] = False
    return out


def lower_approximation(relation: np.ndarray, lam: float, members) -> set[int]:
    """Members whose lambda-granule puts no mass outside the class."""
    R = np.asarray(relation, dtype=float)
    outside = _outside(R.shape[0], members)
    return {int(x) for x in members
            if not np.any(lambda_granule(R, lam, x)[outside] > 0)}


def upper_approximation(relation: np.ndarray, lam: float, members) -> set[int]:
    """Members whose lambda-granule meets the class (restricted to the class itself)."""
    R = np.asarray(relation, dtype=float)
    idx = np.asarray(members, dtype=np.intp)
    return {int(x) for x in members if np.any(lambda_granule(R, lam, x)[idx] > 0)}


def positive_region(relation: np.ndarray, lam: float, classes: Sequence[np.ndarray]) -> set[int]:
    region: set[int] = set()
    for g in classes:
        region |= lower_approximation(relation, lam, g)
    return region
