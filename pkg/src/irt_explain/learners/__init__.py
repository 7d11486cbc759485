from .bayes import BernoulliNB, GaussianNB
from .linear import LogisticRegression
from .neighbors import KNeighbors
from .pool import (
    DEFAULT_KNN_KS,
    DEFAULT_RF_TREE_COUNTS,
    FOREST_HYPERPARAMS,
    PoolConfig,
    TrainedPool,
    predict_pool,
    train_pool,
)
from .tree import DecisionTree, RandomForest

__all__ = [
    "BernoulliNB",
    "GaussianNB",
    "LogisticRegression",
    "KNeighbors",
    "DecisionTree",
    "RandomForest",
    "PoolConfig",
    "TrainedPool",
    "train_pool",
    "predict_pool",
    "DEFAULT_RF_TREE_COUNTS",
    "DEFAULT_KNN_KS",
    "FOREST_HYPERPARAMS",
]
