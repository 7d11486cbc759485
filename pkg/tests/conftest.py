from __future__ import annotations

import numpy as np
import pytest

from irt_explain import LabeledDataset


@pytest.fixture
def blobs_dataset() -> LabeledDataset:
    """Small separable two-blob dataset for learner tests."""
    rng = np.random.default_rng(42)
    n = 30
    X0 = rng.normal(loc=[-1.5, -1.5], scale=0.6, size=(n, 2))
    X1 = rng.normal(loc=[1.5, 1.5], scale=0.6, size=(n, 2))
    return LabeledDataset(
        name="blobs",
        features=np.vstack([X0, X1]),
        labels=np.array([0] * n + [1] * n),
        feature_names=("x", "y"),
    )
