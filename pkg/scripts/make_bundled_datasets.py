"""Regenerates the CSV datasets bundled with the package.

Run from the repository root:

    python scripts/make_bundled_datasets.py

Both files are deterministic; re-running must reproduce them exactly.
"""

from __future__ import annotations

import os
import sys

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from irt_explain.data import LabeledDataset, write_dataset  # noqa: E402

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "src", "irt_explain", "data")


def make_toy(seed: int = 20240501) -> LabeledDataset:
    """40x4 two-blob dataset: two informative features, two noise features."""
    rng = np.random.default_rng(seed)
    n0, n1 = 22, 18
    X0 = rng.normal(loc=[-1.1, -0.9, 0.0, 0.0], scale=[0.8, 0.8, 1.0, 1.0], size=(n0, 4))
    X1 = rng.normal(loc=[1.0, 1.2, 0.0, 0.0], scale=[0.8, 0.8, 1.0, 1.0], size=(n1, 4))
    X = np.vstack([X0, X1])
    y = np.array([0] * n0 + [1] * n1)
    order = rng.permutation(n0 + n1)
    X, y = X[order], y[order]
    flip = rng.choice(n0 + n1, size=2, replace=False)
    y[flip] = 1 - y[flip]
    return LabeledDataset(
        name="toy",
        features=np.round(X, 6),
        labels=y,
        feature_names=("f0", "f1", "f2", "f3"),
    )


def make_noisy_blobs(seed: int = 20240502) -> LabeledDataset:
    """240x6 blobs with 12% flipped labels.

    The flipped instances are what strong classifiers miss on the test side,
    which is what gives them negative discrimination in the fitted model.
    """
    rng = np.random.default_rng(seed)
    n0, n1 = 140, 100
    loc0 = [-1.0, -1.0, -1.0, 0.0, 0.0, 0.0]
    loc1 = [1.0, 1.0, 1.0, 0.0, 0.0, 0.0]
    X0 = rng.normal(loc=loc0, scale=1.0, size=(n0, 6))
    X1 = rng.normal(loc=loc1, scale=1.0, size=(n1, 6))
    X = np.vstack([X0, X1])
    y = np.array([0] * n0 + [1] * n1)
    order = rng.permutation(n0 + n1)
    X, y = X[order], y[order]
    n_flip = int(round(0.12 * (n0 + n1)))
    flip = rng.choice(n0 + n1, size=n_flip, replace=False)
    y[flip] = 1 - y[flip]
    return LabeledDataset(
        name="noisy_blobs",
        features=np.round(X, 6),
        labels=y,
        feature_names=tuple(f"f{i}" for i in range(6)),
    )


if __name__ == "__main__":
    os.makedirs(OUT_DIR, exist_ok=True)
    write_dataset(make_toy(), os.path.join(OUT_DIR, "toy.csv"))
    write_dataset(make_noisy_blobs(), os.path.join(OUT_DIR, "noisy_blobs.csv"))
    print(f"wrote toy.csv and noisy_blobs.csv to {OUT_DIR}")
