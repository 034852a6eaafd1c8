"""Clustering-aware greedy forward selection.

Features are scored by the fused criterion
``gamma = beta * GS + (1 - beta) * LC`` and added one at a time by largest
marginal gain; once a feature is taken its whole feature group is dropped
from the candidate pool.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Literal

import numpy as np

from .clustering import FeatureGroups, cluster_features
from .consistency import SimilarityStructure, local_consistency, same_class_mask
from .dataset import FuzzyDecisionSystem
from .separability import global_separability

HIGH_DIM = 100
HIGH_DIM_DELTA = 50


@dataclass(frozen=True)
class SelectorConfig:
    beta: float = 0.5
    delta: int | None = None
    clustering: Literal["auto", "on", "off"] = "auto"
    k: int | None = None
    pi: float = 1.0
    seed: int = 0
    fcm_m: float = 2.0
    fcm_epsilon: float = 1e-6
    fcm_max_iters: int = 300

    def __post_init__(self):
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError("beta must lie in [0, 1]")
        if self.delta is not None and self.delta < 1:
            raise ValueError("delta must be >= 1")
        if self.clustering not in ("auto", "on", "off"):
            raise ValueError("clustering must be 'auto', 'on' or 'off'")
        if self.k is not None and self.k < 1:
            raise ValueError("k must be >= 1")
        if not self.pi > 0:
            raise ValueError("pi must be > 0")

    def use_clustering(self, m_features: int) -> bool:
        if self.clustering == "auto":
            return m_features > HIGH_DIM
        return self.clustering == "on"

    def resolved_delta(self, m_features: int) -> int:
        if self.delta is not None:
            return self.delta
        return m_features if m_features <= HIGH_DIM else HIGH_DIM_DELTA


@dataclass(frozen=True)
class Score:
    gs: float
    lc: float
    gamma: float
    dic: float = 0.0
    dis: float = 0.0


EMPTY_SCORE = Score(0.0, 0.0, 0.0)


class Criterion:
    """Scores feature subsets of one decision system; caches relations."""

    def __init__(self, fds: FuzzyDecisionSystem, beta: float = 0.5, pi: float = 1.0):
        if not 0.0 <= beta <= 1.0:
            raise ValueError("beta must lie in [0, 1]")
        self.fds = fds
        self.beta = beta
        self.structure = SimilarityStructure(fds, pi)
        self._mask = same_class_mask(fds.classes, fds.n_samples)

    def _combine(self, subset, relation: np.ndarray) -> Score:
        sep = global_separability(self.fds, subset)
        lc = local_consistency(relation, self.fds.classes, self._mask)
        g = self.beta * sep.gs + (1.0 - self.beta) * lc
        return Score(sep.gs, lc, g, sep.dic, sep.dis)

    def score(self, subset) -> Score:
        subset = [int(a) for a in subset]
        if not subset:
            return EMPTY_SCORE
        return self._combine(subset, self.structure.subset_relation(subset))

    def score_extension(self, base: list[int], base_relation: np.ndarray | None, a: int) -> Score:
        """Score ``base + [a]`` reusing the relation already built for ``base``."""
        Ra = self.structure.relation(a)
        R = Ra if base_relation is None else np.minimum(base_relation, Ra)
        return self._combine(base + [a], R)


def gamma(fds: FuzzyDecisionSystem, subset, beta: float = 0.5, pi: float = 1.0) -> Score:
    return Criterion(fds, beta, pi).score(subset)


def significance(fds: FuzzyDecisionSystem, a: int, reduct, beta: float = 0.5,
                 pi: float = 1.0) -> float:
    reduct = [int(b) for b in reduct]
    if a in reduct:
        raise ValueError(f"feature {a} is already in the reduct")
    crit = Criterion(fds, beta, pi)
    return crit.score(reduct + [a]).gamma - crit.score(reduct).gamma


@dataclass(frozen=True)
class StepRecord:
    step: int
    evaluated: int
    chosen: int
    group: int
    gs: float
    lc: float
    gamma: float
    sig: float
    candidate_sigs: dict[int, float] = field(default_factory=dict)


@dataclass(frozen=True)
class SelectionTrace:
    selected: tuple[int, ...]
    steps: tuple[StepRecord, ...]
    groups: FeatureGroups
    groups_consumed: tuple[int, ...]
    total_evaluations: int
    clustering: bool
    beta: float
    delta: int

    def to_dict(self, feature_names=None) -> dict:
        d = {
            "selected": list(self.selected),
            "groups": [list(g) for g in self.groups.groups],
            "groups_consumed": list(self.groups_consumed),
            "total_evaluations": self.total_evaluations,
            "clustering": self.clustering,
            "beta": self.beta,
            "delta": self.delta,
            "steps": [],
        }
        for s in self.steps:
            rec = asdict(s)
            rec["candidate_sigs"] = {str(k): v for k, v in s.candidate_sigs.items()}
            d["steps"].append(rec)
        if feature_names is not None:
            d["selected_names"] = [feature_names[a] for a in self.selected]
        return d


def evaluation_budget(group_sizes, delta: int) -> int:
    """Worst-case number of SIG evaluations: ``M + (M - l1) + (M - l1 - l2) + ...``
    over ``min(K, delta)`` steps, with sizes sorted ascending."""
    sizes = sorted(int(s) for s in group_sizes)
    remaining = sum(sizes)
    total = 0
    for s in range(min(len(sizes), delta)):
        total += remaining
        remaining -= sizes[s]
    return total


def fcssc(fds: FuzzyDecisionSystem, config: SelectorConfig = SelectorConfig(),
          groups: FeatureGroups | None = None) -> SelectionTrace:
    """Run feature clustering (if enabled) followed by greedy selection.

    ``groups`` overrides the clustering stage. Ties on gain go to the lowest
    feature index; negative gains are still taken.
    """
    M = fds.n_features
    delta = config.resolved_delta(M)
    if groups is not None:
        use_clu = len(groups) < M
    else:
        use_clu = config.use_clustering(M)
        if use_clu:
            groups, _ = cluster_features(fds.samples, config.k, m=config.fcm_m,
                                         epsilon=config.fcm_epsilon,
                                         max_iters=config.fcm_max_iters, seed=config.seed)
        else:
            groups = FeatureGroups.singletons(M)
    if sorted(a for g in groups.groups for a in g) != list(range(M)):
        raise ValueError("groups must partition all feature indices")
    owner = groups.group_of()
    alive = set(range(len(groups)))

    crit = Criterion(fds, config.beta, config.pi)
    reduct: list[int] = []
    base_rel = None
    base_gamma = 0.0
    steps: list[StepRecord] = []
    consumed: list[int] = []
    total = 0

    while alive and len(reduct) < delta:
        candidates = sorted(a for gi in alive for a in groups.groups[gi])
        best = None
        sigs: dict[int, float] = {}
        for a in candidates:
            sc = crit.score_extension(reduct, base_rel, a)
            sigs[a] = sc.gamma - base_gamma
            if best is None or sc.gamma > best[1].gamma:
                best = (a, sc)
        total += len(candidates)
        a, sc = best
        reduct.append(a)
        Ra = crit.structure.relation(a)
        base_rel = Ra.copy() if base_rel is None else np.minimum(base_rel, Ra)
        gi = owner[a]
        alive.discard(gi)
        consumed.append(gi)
        steps.append(StepRecord(len(steps), len(candidates), a, gi, sc.gs, sc.lc,
                                sc.gamma, sc.gamma - base_gamma, sigs))
        base_gamma = sc.gamma

    return SelectionTrace(tuple(reduct), tuple(steps), groups, tuple(consumed),
                          total, use_clu, config.beta, delta)
