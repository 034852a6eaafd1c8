"""Two-stage feature selection: fuzzy C-means feature clustering followed by
greedy forward search on a fused separability / consistency criterion."""

from .clustering import FcmConfig, FcmState, FeatureGroups, cluster_count, cluster_features, run_fcm
from .dataset import FuzzyDecisionSystem, RawTable, load_bundled, load_dataset
from .evaluation import EvalReport, FoldPlan, KNNClassifier, cross_validate, friedman, make_fold_plan
from .selection import SelectionTrace, SelectorConfig, fcssc, gamma, significance

__version__ = "0.1.0"

__all__ = [
    "FcmConfig", "FcmState", "FeatureGroups", "cluster_count", "cluster_features", "run_fcm",
    "FuzzyDecisionSystem", "RawTable", "load_bundled", "load_dataset",
    "EvalReport", "FoldPlan", "KNNClassifier", "cross_validate", "friedman", "make_fold_plan",
    "SelectionTrace", "SelectorConfig", "fcssc", "gamma", "significance",
]
