"""L2-regularized logistic regression trained by full-batch gradient descent."""

from __future__ import annotations

import numpy as np
from scipy.special import expit


class LogisticRegression:
    """Gradient-descent logistic regression on standardized features.

    The step size is fixed at 1/L, where L bounds the Lipschitz constant of
    the penalized-loss gradient, so the training loss never increases
    between epochs. The intercept is not penalized.
    """

    def __init__(self, penalty: float = 1e-2, epochs: int = 500):
        self.penalty = penalty
        self.epochs = epochs
        self.loss_history_: list[float] = []

    def _design(self, X: np.ndarray) -> np.ndarray:
        Z = (np.asarray(X, dtype=np.float64) - self.mean_) / self.scale_
        return np.hstack([Z, np.ones((Z.shape[0], 1))])

    def _loss(self, Z: np.ndarray, y: np.ndarray, w: np.ndarray) -> float:
        margins = Z @ w
        # log(1 + exp(-m*ypm)) computed stably via logaddexp
        ypm = 2.0 * y - 1.0
        loss = np.logaddexp(0.0, -ypm * margins).mean()
        return float(loss + 0.5 * self.penalty * (w[:-1] @ w[:-1]))

    def fit(self, X: np.ndarray, y: np.ndarray) -> "LogisticRegression":
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        self.mean_ = X.mean(axis=0)
        scale = X.std(axis=0)
        self.scale_ = np.where(scale > 0, scale, 1.0)
        Z = self._design(X)
        n = Z.shape[0]
        smax = np.linalg.norm(Z, 2)
        lipschitz = smax**2 / (4.0 * n) + self.penalty
        step = 1.0 / lipschitz
        w = np.zeros(Z.shape[1])
        self.loss_history_ = [self._loss(Z, y, w)]
        for _ in range(self.epochs):
            p = expit(Z @ w)
            grad = Z.T @ (p - y) / n
            grad[:-1] += self.penalty * w[:-1]
            w = w - step * grad
            self.loss_history_.append(self._loss(Z, y, w))
        self.coef_ = w
        return self

    def predict(self, X: np.ndarray) -> np.ndarray:
        margins = self._design(X) @ self.coef_
        return (margins > 0).astype(np.int64)
