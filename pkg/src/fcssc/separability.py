"""Global separability of a feature subset.

Samples get fuzzy memberships to the decision-class centroids (fuzzifier
fixed at 2). Intra-class cohesion (DIC) averages each class's own
memberships; inter-class separation (DIS) is one minus the mean
entropy-weighted overlap of class pairs. GS = DIC * DIS.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .dataset import FuzzyDecisionSystem

_ZERO_DIST = 1e-12
_ZERO_ENTROPY = 1e-12


def _subset_columns(fds: FuzzyDecisionSystem, subset) -> np.ndarray:
    idx = np.asarray(list(subset), dtype=np.intp)
    if idx.size == 0:
        raise ValueError("feature subset must be non-empty")
    return fds.samples[:, idx]


def class_centroids(fds: FuzzyDecisionSystem, subset) -> np.ndarray:
    """``c x |B|`` matrix of per-class feature means."""
    Xb = _subset_columns(fds, subset)
    return np.vstack([Xb[g].mean(axis=0) for g in fds.classes])


def class_distance(fds: FuzzyDecisionSystem, subset, k: int, i: int,
                   centroids: np.ndarray | None = None) -> float:
    """Euclidean distance from sample ``k`` to the centroid of class ``i``."""
    if centroids is None:
        centroids = class_centroids(fds, subset)
    Xb = _subset_columns(fds, subset)
    return float(np.sqrt(np.sum((Xb[k] - centroids[i]) ** 2)))


def memberships_from_distances(dist: np.ndarray) -> np.ndarray:
    """Row-wise fuzzy memberships with fuzzifier 2, from an ``N x c`` distance matrix.

    A sample sitting on a centroid (distance < 1e-12) is assigned crisply to
    the first such class.
    """
    dist = np.asarray(dist, dtype=float)
    n, c = dist.shape
    if c == 1:
        return np.ones((n, 1))
    U = np.empty_like(dist)
    hit = dist < _ZERO_DIST
    crisp = hit.any(axis=1)
    if crisp.any():
        U[crisp] = 0.0
        U[np.flatnonzero(crisp), np.argmax(hit[crisp], axis=1)] = 1.0
    soft = ~crisp
    if soft.any():
        d = dist[soft]
        inv = (d.min(axis=1, keepdims=True) / d) ** 2
        U[soft] = inv / inv.sum(axis=1, keepdims=True)
    return U


def fuzzy_class_memberships(fds: FuzzyDecisionSystem, subset) -> np.ndarray:
    """``N x c`` matrix of ``u_B(x_k, D_i)``; rows sum to 1."""
    Xb = _subset_columns(fds, subset)
    V = np.vstack([Xb[g].mean(axis=0) for g in fds.classes])
    diff = Xb[:, None, :] - V[None, :, :]
    dist = np.sqrt(np.einsum("kic,kic->ki", diff, diff))
    return memberships_from_distances(dist)


def dic_class(memberships: np.ndarray, classes: Sequence[np.ndarray], i: int) -> float:
    return float(memberships[classes[i], i].mean())


def dic(memberships: np.ndarray, classes: Sequence[np.ndarray]) -> float:
    c = len(classes)
    return float(sum(dic_class(memberships, classes, i) for i in range(c)) / c)


def pointwise_similarity(memberships: np.ndarray, i: int, j: int, k: int) -> float:
    return float(min(memberships[k, i], memberships[k, j]))


def sample_entropy(memberships: np.ndarray) -> np.ndarray:
    """Natural-log entropy per row, with ``0 log 0 = 0``."""
    U = np.asarray(memberships, dtype=float)
    safe = np.where(U > 0, U, 1.0)
    return -np.sum(U * np.log(safe), axis=1)


def entropy_weights(memberships: np.ndarray) -> np.ndarray:
    H = sample_entropy(memberships)
    top = H.max() if H.size else 0.0
    if top < _ZERO_ENTROPY:
        return np.zeros_like(H)
    return H / top


def class_similarity(memberships: np.ndarray, weights: np.ndarray, i: int, j: int) -> float:
    n, c = memberships.shape
    overlap = np.minimum(memberships[:, i], memberships[:, j])
    return float(c / n * np.dot(weights, overlap))


def dis(memberships: np.ndarray, classes: Sequence[np.ndarray] | None = None) -> float:
    """One minus the mean similarity over unordered class pairs, clamped to [0, 1].

    With a single class there is nothing to confuse and 1 is returned.
    """
    c = memberships.shape[1]
    if c < 2:
        return 1.0
    w = entropy_weights(memberships)
    pairs = list(combinations(range(c), 2))
    mean_sim = sum(class_similarity(memberships, w, i, j) for i, j in pairs) / len(pairs)
    return float(min(1.0, max(0.0, 1.0 - mean_sim)))


@dataclass(frozen=True)
class Separability:
    dic: float
    dis: float
    gs: float
    degenerate: bool = False  # single decision class: DIS fixed at 1


def global_separability(fds: FuzzyDecisionSystem, subset) -> Separability:
    U = fuzzy_class_memberships(fds, subset)
    cohesion = dic(U, fds.classes)
    separation = dis(U, fds.classes)
    return Separability(cohesion, separation, cohesion * separation,
                        degenerate=fds.n_classes < 2)
