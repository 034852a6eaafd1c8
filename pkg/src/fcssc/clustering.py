"""Fuzzy C-means over features, seeded with KMeans++.

Each feature column of the sample matrix is one object (an N-vector).
The fuzzy partition is hardened by membership argmax into disjoint
feature groups.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

_ZERO_DIST = 1e-12
_ZERO_MASS = 1e-12


def cluster_count(m_features: int) -> int:
    """``ceil(sqrt(M) * ln M)`` clamped to ``[1, M]``."""
    if m_features < 1:
        raise ValueError("need at least one feature")
    k = math.ceil(math.sqrt(m_features) * math.log(m_features))
    return min(max(1, k), m_features)


@dataclass(frozen=True)
class FcmConfig:
    k: int
    m: float = 2.0
    epsilon: float = 1e-6
    max_iters: int = 300
    seed: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not self.m > 1:
            raise ValueError("fuzzifier m must be > 1")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be > 0")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


@dataclass(frozen=True, eq=False)
class FcmState:
    centroids: np.ndarray       # K x N
    memberships: np.ndarray     # K x M, columns sum to 1
    objective: float
    iterations: int
    history: tuple[float, ...] = field(default=())


@dataclass(frozen=True)
class FeatureGroups:
    groups: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = [a for g in self.groups for a in g]
        if len(seen) != len(set(seen)):
            raise ValueError("groups overlap")
        if any(len(g) == 0 for g in self.groups):
            raise ValueError("empty group")

    @classmethod
    def singletons(cls, m_features: int) -> "FeatureGroups":
        return cls(tuple((a,) for a in range(m_features)))

    def __len__(self):
        return len(self.groups)

    @property
    def sizes(self) -> list[int]:
        return [len(g) for g in self.groups]

    def group_of(self) -> dict[int, int]:
        return {a: gi for gi, g in enumerate(self.groups) for a in g}


def _sq_dists(objects: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    """Squared Euclidean distances, shape ``(K, M)``."""
    diff = centroids[:, None, :] - objects[None, :, :]
    return np.einsum("kmn,kmn->km", diff, diff)


def kmeanspp_init(objects, k: int, seed: int = 0) -> np.ndarray:
    """KMeans++ seeding: first pick uniform, then proportional to D^2.

    Picks are distinct rows. When every remaining row has zero distance to
    the chosen set (duplicates), the next pick is uniform over the rows not
    yet chosen.
    """
    X = np.asarray(objects, dtype=float)
    n_obj = X.shape[0]
    if not 1 <= k <= n_obj:
        raise ValueError(f"k={k} must be between 1 and the number of objects ({n_obj})")
    rng = np.random.default_rng(seed)
    chosen = [int(rng.integers(n_obj))]
    d2 = np.sum((X - X[chosen[0]]) ** 2, axis=1)
    taken = np.zeros(n_obj, dtype=bool)
    taken[chosen[0]] = True
    for _ in range(1, k):
        w = np.where(taken, 0.0, d2)
        total = w.sum()
        if total > 0:
            p = w / total
        else:
            p = (~taken).astype(float) / (~taken).sum()
        nxt = int(rng.choice(n_obj, p=p))
        chosen.append(nxt)
        taken[nxt] = True
        d2 = np.minimum(d2, np.sum((X - X[nxt]) ** 2, axis=1))
    return X[chosen].copy()


def update_memberships(objects, centroids, m: float = 2.0) -> np.ndarray:
    X = np.asarray(objects, dtype=float)
    V = np.asarray(centroids, dtype=float)
    d = np.sqrt(_sq_dists(X, V))
    U = np.empty_like(d)
    hit = d < _ZERO_DIST
    crisp = hit.any(axis=0)
    if crisp.any():
        first = np.argmax(hit[:, crisp], axis=0)
        U[:, crisp] = 0.0
        U[first, np.flatnonzero(crisp)] = 1.0
    soft = ~crisp
    if soft.any():
        # 1 / sum_j (d_i/d_j)^p == r_i^-p / sum_j r_j^-p with r = d / min(d) >= 1
        ds = d[:, soft]
        inv = (ds / ds.min(axis=0)) ** (-2.0 / (m - 1.0))
        U[:, soft] = inv / inv.sum(axis=0)
    return U


def update_centroids(objects, memberships, m: float = 2.0) -> np.ndarray:
    """Weighted means with weights ``u^m``; near-empty clusters are reseeded.

    A cluster with ``sum u^m < 1e-12`` moves to the object farthest from its
    nearest (already valid) centroid.
    """
    X = np.asarray(objects, dtype=float)
    W = np.asarray(memberships, dtype=float) ** m
    mass = W.sum(axis=1)
    V = np.zeros((W.shape[0], X.shape[1]))
    ok = mass >= _ZERO_MASS
    V[ok] = (W[ok] @ X) / mass[ok, None]
    for i in np.flatnonzero(~ok):
        if ok.any():
            nearest = _sq_dists(X, V[ok]).min(axis=0)
            V[i] = X[int(np.argmax(nearest))]
        else:
            V[i] = X[0]
        ok[i] = True
    return V


def fcm_objective(objects, centroids, memberships, m: float = 2.0) -> float:
    X = np.asarray(objects, dtype=float)
    U = np.asarray(memberships, dtype=float)
    return float(np.sum(U ** m * _sq_dists(X, np.asarray(centroids, dtype=float))))


def run_fcm(objects, config: FcmConfig, on_iteration=None) -> FcmState:
    """Alternate membership and centroid updates until the objective settles.

    One iteration computes memberships from the current centroids, then
    centroids from those memberships, then ``J``. Stops once
    ``|J_prev - J| < epsilon`` or after ``max_iters`` iterations.
    ``on_iteration(memberships, centroids, J)`` is called after each one.
    """
    X = np.asarray(objects, dtype=float)
    V = kmeanspp_init(X, config.k, config.seed)
    history: list[float] = []
    U = None
    for _ in range(config.max_iters):
        U = update_memberships(X, V, config.m)
        V = update_centroids(X, U, config.m)
        J = fcm_objective(X, V, U, config.m)
        history.append(J)
        if on_iteration is not None:
            on_iteration(U, V, J)
        if len(history) > 1 and abs(history[-2] - J) < config.epsilon:
            break
    return FcmState(V, U, history[-1], len(history), tuple(history))


def harden_groups(state: FcmState) -> FeatureGroups:
    """Assign each feature to its highest-membership cluster (ties: lowest
    cluster index) and drop clusters that end up empty."""
    owner = np.argmax(state.memberships, axis=0)
    groups = []
    for i in range(state.memberships.shape[0]):
        members = np.flatnonzero(owner == i)
        if members.size:
            groups.append(tuple(int(a) for a in members))
    return FeatureGroups(tuple(groups))


def cluster_features(samples, k: int | None = None, *, m: float = 2.0,
                     epsilon: float = 1e-6, max_iters: int = 300,
                     seed: int = 0) -> tuple[FeatureGroups, FcmState]:
    """Stage one of the selector: group the columns of ``samples``."""
    X = np.asarray(samples, dtype=float).T
    if k is None:
        k = cluster_count(X.shape[0])
    state = run_fcm(X, FcmConfig(k=k, m=m, epsilon=epsilon, max_iters=max_iters, seed=seed))
    return harden_groups(state), state
