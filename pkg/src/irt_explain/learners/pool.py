"""The classifier pool that generates response-matrix rows.

The default pool is 123 random forests (tree counts 1..120 plus a second
3-, 5- and 100-tree forest), four kNN models, both naive Bayes variants,
one unpruned CART tree and one logistic regression: 131 members. Each
member's randomness is seeded from (pool seed, member id), so results do
not depend on training order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..data import LabeledDataset
from ..errors import ValidationError
from ..seeding import derive_seed
from .bayes import BernoulliNB, GaussianNB
from .linear import LogisticRegression
from .neighbors import KNeighbors
from .tree import DecisionTree, RandomForest

DEFAULT_RF_TREE_COUNTS = tuple(range(1, 121)) + (3, 5, 100)
DEFAULT_KNN_KS = (2, 3, 5, 8)

# Forest policy recorded in run metadata: bootstrap sample size equals the
# training-set size and trees grow without a depth limit.
FOREST_HYPERPARAMS = {
    "bootstrap_size": "n_train",
    "max_depth": None,
    "feature_subsample": "sqrt",
    "split_criterion": "gini",
}


@dataclass(frozen=True)
class PoolConfig:
    rf_tree_counts: tuple[int, ...] = DEFAULT_RF_TREE_COUNTS
    knn_ks: tuple[int, ...] = DEFAULT_KNN_KS
    include_gaussian_nb: bool = True
    include_bernoulli_nb: bool = True
    include_tree: bool = True
    include_logistic: bool = True
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "rf_tree_counts", tuple(self.rf_tree_counts))
        object.__setattr__(self, "knn_ks", tuple(self.knn_ks))
        if any(t < 1 for t in self.rf_tree_counts):
            raise ValidationError("forest tree counts must be positive")
        if any(k < 1 for k in self.knn_ks):
            raise ValidationError("kNN k values must be >= 1")

    def member_ids(self) -> list[str]:
        """Stable member ids; repeated configurations get an occurrence suffix."""
        ids: list[str] = []
        seen: dict[str, int] = {}

        def add(base: str) -> None:
            seen[base] = seen.get(base, 0) + 1
            ids.append(base if seen[base] == 1 else f"{base}_{seen[base]}")

        for count in self.rf_tree_counts:
            add(f"rf_t{count}")
        for k in self.knn_ks:
            add(f"knn_k{k}")
        if self.include_gaussian_nb:
            add("gaussian_nb")
        if self.include_bernoulli_nb:
            add("bernoulli_nb")
        if self.include_tree:
            add("cart")
        if self.include_logistic:
            add("logreg")
        if not ids:
            raise ValidationError("pool config requests no members")
        return ids


@dataclass
class TrainedPool:
    members: list[tuple[str, object]]
    provenance: PoolConfig
    n_features: int = field(default=0)

    def member_ids(self) -> list[str]:
        return [mid for mid, _ in self.members]


def _member_rng_seq(pool_seed: int, member_id: str) -> np.random.SeedSequence:
    return np.random.SeedSequence(derive_seed(pool_seed, member_id))


def train_pool(train: LabeledDataset, config: PoolConfig) -> TrainedPool:
    """Train every configured member on the full train split."""
    if train.n_instances == 0:
        raise ValidationError("empty training set")
    X, y = train.features, train.labels
    members: list[tuple[str, object]] = []
    for member_id in config.member_ids():
        seq = _member_rng_seq(config.seed, member_id)
        if member_id.startswith("rf_t"):
            count = int(member_id[4:].split("_")[0])
            model: object = RandomForest(n_trees=count, seed_sequence=seq).fit(X, y)
        elif member_id.startswith("knn_k"):
            k = int(member_id[5:].split("_")[0])
            if k > train.n_instances:
                raise ValidationError(
                    f"k={k} exceeds the {train.n_instances} training instances"
                )
            model = KNeighbors(k=k).fit(X, y)
        elif member_id.startswith("gaussian_nb"):
            model = GaussianNB().fit(X, y)
        elif member_id.startswith("bernoulli_nb"):
            model = BernoulliNB().fit(X, y)
        elif member_id.startswith("cart"):
            model = DecisionTree().fit(X, y)
        else:
            model = LogisticRegression().fit(X, y)
        members.append((member_id, model))
    return TrainedPool(members=members, provenance=config, n_features=train.n_features)


def predict_pool(pool: TrainedPool, test: LabeledDataset) -> np.ndarray:
    """Predictions of every member on the test set: members x instances."""
    if test.n_features != pool.n_features:
        raise ValidationError(
            f"test has {test.n_features} features, pool was trained on {pool.n_features}"
        )
    rows = [model.predict(test.features) for _, model in pool.members]
    return np.vstack(rows).astype(np.int64)
