"""CART decision trees and bagged forests on numeric features.

Trees are grown unpruned with Gini impurity. Split ties break toward the
lowest feature index, then the lowest threshold, so training is fully
deterministic given the node's candidate features.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class _Node:
    feature: int = -1
    threshold: float = 0.0
    left: "_Node | None" = None
    right: "_Node | None" = None
    label: int = 0

    @property
    def is_leaf(self) -> bool:
        return self.left is None


def _majority(y: np.ndarray) -> int:
    ones = int(y.sum())
    return 1 if ones * 2 > y.size else 0


def _best_split(X: np.ndarray, y: np.ndarray, features: np.ndarray):
    """Lowest-cost (weighted Gini) split over the given feature subset.

    Returns (feature, threshold) or None when no feature admits a split.
    """
    n = y.size
    best_cost = np.inf
    best: tuple[int, float] | None = None
    for f in features:
        x = X[:, f]
        order = np.argsort(x, kind="stable")
        xs = x[order]
        ys = y[order]
        cut = np.flatnonzero(xs[1:] > xs[:-1])
        if cut.size == 0:
            continue
        ones = np.cumsum(ys)
        total_ones = ones[-1]
        n_left = cut + 1
        n_right = n - n_left
        ones_left = ones[cut]
        ones_right = total_ones - ones_left
        p_left = ones_left / n_left
        p_right = ones_right / n_right
        gini_left = 1.0 - p_left**2 - (1.0 - p_left) ** 2
        gini_right = 1.0 - p_right**2 - (1.0 - p_right) ** 2
        cost = (n_left * gini_left + n_right * gini_right) / n
        j = int(np.argmin(cost))
        if cost[j] < best_cost:
            best_cost = float(cost[j])
            pos = cut[j]
            best = (int(f), float((xs[pos] + xs[pos + 1]) / 2.0))
    return best


class DecisionTree:
    """Unpruned CART classifier for binary labels.

    ``max_features`` enables per-node feature subsampling (used by forests);
    None considers every feature at every node.
    """

    def __init__(self, max_features: int | None = None, rng: np.random.Generator | None = None):
        self.max_features = max_features
        self.rng = rng
        self.root: _Node | None = None
        self.n_features_ = 0

    def fit(self, X: np.ndarray, y: np.ndarray) -> "DecisionTree":
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        self.n_features_ = X.shape[1]
        self.root = self._grow(X, y)
        return self

    def _candidate_features(self) -> np.ndarray:
        d = self.n_features_
        if self.max_features is None or self.max_features >= d:
            return np.arange(d)
        chosen = self.rng.choice(d, size=self.max_features, replace=False)
        return np.sort(chosen)

    def _grow(self, X: np.ndarray, y: np.ndarray) -> _Node:
        if y.size == 0:
            return _Node(label=0)
        ones = int(y.sum())
        if ones == 0 or ones == y.size:
            return _Node(label=int(y[0]))
        split = _best_split(X, y, self._candidate_features())
        if split is None and self.max_features is not None:
            # sampled features were all constant on this node; retry with every feature
            split = _best_split(X, y, np.arange(self.n_features_))
        if split is None:
            return _Node(label=_majority(y))
        feature, threshold = split
        mask = X[:, feature] <= threshold
        node = _Node(feature=feature, threshold=threshold)
        node.left = self._grow(X[mask], y[mask])
        node.right = self._grow(X[~mask], y[~mask])
        node.label = _majority(y)
        return node

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        out = np.empty(X.shape[0], dtype=np.int64)
        self._route(self.root, X, np.arange(X.shape[0]), out)
        return out

    def _route(self, node: _Node, X: np.ndarray, idx: np.ndarray, out: np.ndarray) -> None:
        if idx.size == 0:
            return
        if node.is_leaf:
            out[idx] = node.label
            return
        mask = X[idx, node.feature] <= node.threshold
        self._route(node.left, X, idx[mask], out)
        self._route(node.right, X, idx[~mask], out)


class RandomForest:
    """Bagged CART trees with sqrt(d) per-node feature subsampling.

    Bootstrap samples are of size n; trees grow without a depth limit.
    Majority vote over trees; ties go to class 0.
    """

    def __init__(self, n_trees: int, seed_sequence: np.random.SeedSequence):
        self.n_trees = n_trees
        self.seed_sequence = seed_sequence
        self.trees: list[DecisionTree] = []

    def fit(self, X: np.ndarray, y: np.ndarray) -> "RandomForest":
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        n, d = X.shape
        mtry = max(1, int(np.sqrt(d)))
        self.trees = []
        for child in self.seed_sequence.spawn(self.n_trees):
            rng = np.random.default_rng(child)
            sample = rng.integers(0, n, size=n)
            tree = DecisionTree(max_features=mtry, rng=rng)
            tree.fit(X[sample], y[sample])
            self.trees.append(tree)
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        votes = np.zeros(np.asarray(X).shape[0], dtype=np.int64)
        for tree in self.trees:
            votes += tree.predict(X)
        return (votes * 2 > self.n_trees).astype(np.int64)
