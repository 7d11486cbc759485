"""Explains black-box classifiers with 3PL item response theory.

A pool of classifiers answers a test set; their 0/1 correctness matrix is
fitted with the three-parameter logistic model; the estimated item
parameters and the target model's ability turn into per-instance
reliability verdicts and dataset-level diagnostics.
"""

__version__ = "0.1.0"

from .analysis import (
    DatasetSummary,
    FeatureCorrelation,
    InstanceVerdict,
    ModelDiagnostics,
    PercentileProfile,
    PlotSeries,
    Thresholds,
    confusion_counts,
    feature_correlations,
    mcc,
    model_diagnostics,
    percentile_profile,
    plot_series,
    summarize_items,
    verdicts,
)
from .data import (
    LabeledDataset,
    SplitPair,
    majority_class,
    read_dataset,
    stratified_split,
    write_dataset,
)
from .errors import (
    AlignmentError,
    DegenerateClassError,
    InsufficientDataError,
    IrtExplainError,
    LabelError,
    ValidationError,
)
from .irt import (
    AbilityEstimate,
    FitConfig,
    FitResult,
    ItemParams,
    estimate_abilities,
    fit_3pl,
    icc,
    icc_gradient,
    log_likelihood,
    read_abilities,
    read_items,
    write_abilities,
    write_items,
)
from .learners import PoolConfig, TrainedPool, predict_pool, train_pool
from .matrix import (
    ARTIFICIAL_IDS,
    ResponseMatrix,
    artificial_rows,
    assemble_matrix,
    read_matrix,
    responses_from_predictions,
    write_matrix,
)
from .report import build_report, dump_report, load_schema
from .simulate import (
    RecoveryReport,
    SimSpec,
    decile_calibration,
    read_theta,
    score_recovery,
    simulate,
    write_theta,
)

__all__ = [
    "__version__",
    "AbilityEstimate",
    "AlignmentError",
    "ARTIFICIAL_IDS",
    "DatasetSummary",
    "DegenerateClassError",
    "FeatureCorrelation",
    "FitConfig",
    "FitResult",
    "InstanceVerdict",
    "InsufficientDataError",
    "IrtExplainError",
    "ItemParams",
    "LabelError",
    "LabeledDataset",
    "ModelDiagnostics",
    "PercentileProfile",
    "PlotSeries",
    "PoolConfig",
    "RecoveryReport",
    "ResponseMatrix",
    "SimSpec",
    "SplitPair",
    "Thresholds",
    "TrainedPool",
    "ValidationError",
    "artificial_rows",
    "assemble_matrix",
    "build_report",
    "confusion_counts",
    "decile_calibration",
    "dump_report",
    "estimate_abilities",
    "feature_correlations",
    "fit_3pl",
    "icc",
    "icc_gradient",
    "load_schema",
    "log_likelihood",
    "majority_class",
    "mcc",
    "model_diagnostics",
    "percentile_profile",
    "plot_series",
    "predict_pool",
    "read_abilities",
    "read_dataset",
    "read_items",
    "read_matrix",
    "read_theta",
    "responses_from_predictions",
    "score_recovery",
    "simulate",
    "stratified_split",
    "summarize_items",
    "train_pool",
    "verdicts",
    "write_abilities",
    "write_dataset",
    "write_items",
    "write_matrix",
    "write_theta",
]
