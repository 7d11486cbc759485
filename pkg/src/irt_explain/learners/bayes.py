"""Naive Bayes classifiers: Gaussian and median-binarized Bernoulli."""

from __future__ import annotations

import numpy as np

_VAR_FLOOR_SCALE = 1e-9


class GaussianNB:
    """Per-class Gaussian likelihoods with a small variance floor."""

    def fit(self, X: np.ndarray, y: np.ndarray) -> "GaussianNB":
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        self.classes_ = np.array([0, 1])
        self.theta_ = np.vstack([X[y == c].mean(axis=0) for c in self.classes_])
        var = np.vstack([X[y == c].var(axis=0) for c in self.classes_])
        floor = _VAR_FLOOR_SCALE * max(float(X.var(axis=0).max()), 1.0)
        self.var_ = var + floor
        counts = np.array([(y == c).sum() for c in self.classes_], dtype=np.float64)
        self.log_prior_ = np.log(counts / counts.sum())
        return self

    def _joint_log_likelihood(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        jll = np.empty((X.shape[0], 2))
        for i in range(2):
            log_det = np.sum(np.log(2.0 * np.pi * self.var_[i]))
            sq = ((X - self.theta_[i]) ** 2 / self.var_[i]).sum(axis=1)
            jll[:, i] = self.log_prior_[i] - 0.5 * (log_det + sq)
        return jll

    def predict(self, X: np.ndarray) -> np.ndarray:
        return np.argmax(self._joint_log_likelihood(X), axis=1).astype(np.int64)


class BernoulliNB:
    """Bernoulli NB over features binarized at the per-feature training median."""

    def __init__(self, alpha: float = 1.0):
        self.alpha = alpha

    def fit(self, X: np.ndarray, y: np.ndarray) -> "BernoulliNB":
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        self.median_ = np.median(X, axis=0)
        B = (X > self.median_).astype(np.float64)
        self.classes_ = np.array([0, 1])
        counts = np.array([(y == c).sum() for c in self.classes_], dtype=np.float64)
        self.log_prior_ = np.log(counts / counts.sum())
        prob = np.vstack(
            [
                (B[y == c].sum(axis=0) + self.alpha) / (counts[i] + 2.0 * self.alpha)
                for i, c in enumerate(self.classes_)
            ]
        )
        self.log_prob_ = np.log(prob)
        self.log_neg_prob_ = np.log1p(-prob)
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        B = (np.asarray(X, dtype=np.float64) > self.median_).astype(np.float64)
        jll = np.empty((B.shape[0], 2))
        for i in range(2):
            jll[:, i] = (
                self.log_prior_[i]
                + B @ self.log_prob_[i]
                + (1.0 - B) @ self.log_neg_prob_[i]
            )
        return np.argmax(jll, axis=1).astype(np.int64)
