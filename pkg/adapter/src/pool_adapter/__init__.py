"""scikit-learn pool adapter for the IRT explainer's response-matrix format."""

__version__ = "0.1.0"

from .adapter import (
    TARGET_MEMBER,
    AdapterConfig,
    AdapterError,
    fetch_dataset,
    run_pool,
)

__all__ = ["AdapterConfig", "AdapterError", "fetch_dataset", "run_pool", "TARGET_MEMBER"]
