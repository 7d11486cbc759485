"""k-nearest-neighbour classification with Euclidean distance."""

from __future__ import annotations

import numpy as np

from ..errors import ValidationError


class KNeighbors:
    """Majority vote among the k nearest training points.

    Vote ties (possible for even k) break toward the class of the single
    nearest neighbour. Distance ties resolve by training index.
    """

    def __init__(self, k: int):
        if k < 1:
            raise ValidationError(f"k must be >= 1, got {k}")
        self.k = k
        self._X: np.ndarray | None = None
        self._y: np.ndarray | None = None

    def fit(self, X: np.ndarray, y: np.ndarray) -> "KNeighbors":
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        if self.k > X.shape[0]:
            raise ValidationError(
                f"k={self.k} exceeds the {X.shape[0]} training instances"
            )
        self._X = X
        self._y = y
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        d2 = ((X[:, None, :] - self._X[None, :, :]) ** 2).sum(axis=2)
        order = np.argsort(d2, axis=1, kind="stable")[:, : self.k]
        votes = self._y[order]
        ones = votes.sum(axis=1)
        out = np.where(ones * 2 > self.k, 1, 0)
        tie = ones * 2 == self.k
        if tie.any():
            out[tie] = self._y[order[tie, 0]]
        return out.astype(np.int64)
