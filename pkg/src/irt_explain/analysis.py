"""Explainability outputs from fitted item parameters and model predictions.

Items are test instances; the target model is one respondent. Reliability
of a prediction is the 3PL success probability at the model's ability:
at or above the cutoff counts as reliable. "WNG" metrics recompute accuracy
and MCC after dropping items with negative discrimination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import rankdata

from .data import LabeledDataset
from .errors import AlignmentError, InsufficientDataError, ValidationError
from .irt import ItemParams, icc

FLAG_NEGATIVE_DISCRIMINATION = "negative_discrimination"
FLAG_DIFFICULT_BEYOND_ABILITY = "difficult_beyond_ability"
FLAG_HIGH_GUESSING = "high_guessing"

HISTOGRAM_BIN_WIDTH = 0.25
ICC_CURVE_POINTS = 201


@dataclass(frozen=True)
class Thresholds:
    discrimination_high: float = 0.0
    difficulty_high: float = 0.0
    guessing_high: float = 0.2
    reliability_cutoff: float = 0.5

    def __post_init__(self) -> None:
        if not 0.0 <= self.guessing_high <= 1.0:
            raise ValidationError("guessing threshold must lie in [0, 1]")
        if not 0.0 < self.reliability_cutoff < 1.0:
            raise ValidationError("reliability cutoff must lie in (0, 1)")


@dataclass(frozen=True)
class InstanceVerdict:
    item_id: str
    success_probability: float
    reliable: bool
    flags: tuple[str, ...]
    item: ItemParams


@dataclass(frozen=True)
class DatasetSummary:
    pct_high_discrimination: float
    pct_high_difficulty: float
    pct_high_guessing: float
    total_items: int
    per_class: dict[int, dict[str, int]] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "pct_high_discrimination": self.pct_high_discrimination,
            "pct_high_difficulty": self.pct_high_difficulty,
            "pct_high_guessing": self.pct_high_guessing,
            "total_items": self.total_items,
            "per_class": {str(k): v for k, v in sorted(self.per_class.items())},
        }


@dataclass(frozen=True)
class ModelDiagnostics:
    accuracy_total: float
    mcc_total: float
    ability: float
    accuracy_wng: float
    mcc_wng: float
    error_overlap_negative_discrimination: float
    no_errors: bool

    def as_dict(self) -> dict:
        return {
            "accuracy_total": self.accuracy_total,
            "mcc_total": self.mcc_total,
            "ability": self.ability,
            "accuracy_wng": self.accuracy_wng,
            "mcc_wng": self.mcc_wng,
            "error_overlap_negative_discrimination": self.error_overlap_negative_discrimination,
            "no_errors": self.no_errors,
        }


def summarize_items(items, labels, thresholds: Thresholds = Thresholds()) -> DatasetSummary:
    """Share of items beyond each parameter threshold, with per-class counts."""
    items = list(items)
    if not items:
        raise ValidationError("empty item set")
    labels = np.asarray(labels)
    if labels.shape[0] != len(items):
        raise AlignmentError(f"{len(items)} items vs {labels.shape[0]} labels")
    a = np.array([it.a for it in items])
    b = np.array([it.b for it in items])
    c = np.array([it.c for it in items])
    high_a = a > thresholds.discrimination_high
    high_b = b > thresholds.difficulty_high
    high_c = c >= thresholds.guessing_high
    per_class: dict[int, dict[str, int]] = {}
    for cls in np.unique(labels):
        mask = labels == cls
        per_class[int(cls)] = {
            "items": int(mask.sum()),
            "high_discrimination": int((high_a & mask).sum()),
            "high_difficulty": int((high_b & mask).sum()),
            "high_guessing": int((high_c & mask).sum()),
        }
    n = len(items)
    return DatasetSummary(
        pct_high_discrimination=100.0 * high_a.sum() / n,
        pct_high_difficulty=100.0 * high_b.sum() / n,
        pct_high_guessing=100.0 * high_c.sum() / n,
        total_items=n,
        per_class=per_class,
    )


def verdicts(
    item_ids, items, theta: float, thresholds: Thresholds = Thresholds()
) -> list[InstanceVerdict]:
    """Per-instance reliability verdicts at the model's ability."""
    item_ids = list(item_ids)
    items = list(items)
    if len(item_ids) != len(items):
        raise AlignmentError(f"{len(item_ids)} ids for {len(items)} items")
    if not math.isfinite(theta):
        raise ValidationError("theta must be finite")
    out = []
    for item_id, item in zip(item_ids, items):
        p = icc(theta, item)
        flags = []
        if item.a < 0:
            flags.append(FLAG_NEGATIVE_DISCRIMINATION)
        if item.b > theta:
            flags.append(FLAG_DIFFICULT_BEYOND_ABILITY)
        if item.c >= thresholds.guessing_high:
            flags.append(FLAG_HIGH_GUESSING)
        out.append(
            InstanceVerdict(
                item_id=item_id,
                success_probability=p,
                reliable=p >= thresholds.reliability_cutoff,
                flags=tuple(flags),
                item=item,
            )
        )
    return out


def mcc(tp: int, tn: int, fp: int, fn: int) -> float:
    """Matthews correlation; 0 when any marginal is empty (the usual convention)."""
    if min(tp, tn, fp, fn) < 0:
        raise ValidationError("confusion counts must be non-negative")
    if tp + tn + fp + fn == 0:
        raise ValidationError("confusion counts are all zero")
    denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn)
    if denom == 0:
        return 0.0
    return (tp * tn - fp * fn) / math.sqrt(denom)


def confusion_counts(predictions, truth) -> tuple[int, int, int, int]:
    predictions = np.asarray(predictions)
    truth = np.asarray(truth)
    if predictions.shape != truth.shape:
        raise AlignmentError("predictions and truth differ in length")
    tp = int(np.sum((predictions == 1) & (truth == 1)))
    tn = int(np.sum((predictions == 0) & (truth == 0)))
    fp = int(np.sum((predictions == 1) & (truth == 0)))
    fn = int(np.sum((predictions == 0) & (truth == 1)))
    return tp, tn, fp, fn


def model_diagnostics(model_row, predictions, truth, items, theta: float) -> ModelDiagnostics:
    """Total and without-negative-discrimination metrics plus the error overlap.

    The overlap is the share of the model's errors that fall on items with
    negative discrimination; 0 with ``no_errors`` set when the model is
    perfect on the test set.
    """
    model_row = np.asarray(model_row)
    predictions = np.asarray(predictions)
    truth = np.asarray(truth)
    items = list(items)
    n = len(items)
    if not (model_row.shape[0] == predictions.shape[0] == truth.shape[0] == n):
        raise AlignmentError(
            f"lengths disagree: row {model_row.shape[0]}, predictions "
            f"{predictions.shape[0]}, truth {truth.shape[0]}, items {n}"
        )
    a = np.array([it.a for it in items])
    keep = a >= 0
    if not keep.any():
        raise InsufficientDataError("every item has negative discrimination")
    accuracy_total = float(model_row.mean())
    mcc_total = mcc(*confusion_counts(predictions, truth))
    accuracy_wng = float(model_row[keep].mean())
    mcc_wng = mcc(*confusion_counts(predictions[keep], truth[keep]))
    wrong = model_row == 0
    n_wrong = int(wrong.sum())
    if n_wrong == 0:
        overlap = 0.0
    else:
        overlap = float(np.sum(wrong & (a < 0)) / n_wrong)
    return ModelDiagnostics(
        accuracy_total=accuracy_total,
        mcc_total=mcc_total,
        ability=float(theta),
        accuracy_wng=accuracy_wng,
        mcc_wng=mcc_wng,
        error_overlap_negative_discrimination=overlap,
        no_errors=n_wrong == 0,
    )


@dataclass(frozen=True)
class FeatureCorrelation:
    feature: str
    corr_a: float
    corr_b: float
    corr_c: float
    constant: bool
    corr_negative_discrimination: float | None = None

    def as_dict(self) -> dict:
        out = {
            "feature": self.feature,
            "corr_a": self.corr_a,
            "corr_b": self.corr_b,
            "corr_c": self.corr_c,
            "constant": self.constant,
        }
        if self.corr_negative_discrimination is not None:
            out["corr_negative_discrimination"] = self.corr_negative_discrimination
        return out


def _corr(x: np.ndarray, y: np.ndarray, method: str) -> tuple[float, bool]:
    # ptp instead of std: a vector of identical floats can have a tiny
    # nonzero std from summation round-off
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        return 0.0, True
    if method == "spearman":
        x = rankdata(x)
        y = rankdata(y)
    return float(np.corrcoef(x, y)[0, 1]), False


def feature_correlations(
    test: LabeledDataset,
    items,
    subset: str = "all",
    model_row=None,
    method: str = "pearson",
    include_negative_indicator: bool = False,
) -> list[FeatureCorrelation]:
    """Correlate each feature with each item parameter over a chosen subset.

    ``subset`` is one of "all", "errors_only" (needs ``model_row``) or
    "negative_a_only". Constant columns report 0 with the constant flag.
    """
    items = list(items)
    if len(items) != test.n_instances:
        raise AlignmentError(
            f"{len(items)} items for {test.n_instances} test instances"
        )
    if method not in ("pearson", "spearman"):
        raise ValidationError(f"unknown correlation method {method!r}")
    a = np.array([it.a for it in items])
    b = np.array([it.b for it in items])
    c = np.array([it.c for it in items])
    if subset == "all":
        mask = np.ones(len(items), dtype=bool)
    elif subset == "errors_only":
        if model_row is None:
            raise ValidationError("errors_only filter needs the model's response row")
        model_row = np.asarray(model_row)
        if model_row.shape[0] != len(items):
            raise AlignmentError("model row length does not match items")
        mask = model_row == 0
    elif subset == "negative_a_only":
        mask = a < 0
    else:
        raise ValidationError(f"unknown subset {subset!r}")
    if int(mask.sum()) < 3:
        raise InsufficientDataError(
            f"subset {subset!r} keeps {int(mask.sum())} instances; need at least 3"
        )
    neg_indicator = (a < 0).astype(np.float64)
    out = []
    for col, name in enumerate(test.feature_names):
        x = test.features[mask, col]
        ra, _ = _corr(x, a[mask], method)
        rb, _ = _corr(x, b[mask], method)
        rc, _ = _corr(x, c[mask], method)
        corr_neg = None
        if include_negative_indicator:
            corr_neg, _ = _corr(x, neg_indicator[mask], method)
        out.append(
            FeatureCorrelation(
                feature=name,
                corr_a=ra,
                corr_b=rb,
                corr_c=rc,
                constant=bool(np.ptp(x) == 0),
                corr_negative_discrimination=corr_neg,
            )
        )
    return out


@dataclass(frozen=True)
class PercentileProfile:
    feature: str
    percentile: float
    value: float
    fraction_below_half_max: float
    per_class: dict[int, float]

    def as_dict(self) -> dict:
        return {
            "feature": self.feature,
            "percentile": self.percentile,
            "value": self.value,
            "fraction_below_half_max": self.fraction_below_half_max,
            "per_class": {str(k): v for k, v in sorted(self.per_class.items())},
        }


def percentile_profile(
    test: LabeledDataset, feature: str | int, percentile: float
) -> PercentileProfile:
    """Empirical percentile of a feature and how much of it sits below half its max."""
    if not 0.0 < percentile < 100.0:
        raise ValidationError("percentile must lie in (0, 100)")
    if isinstance(feature, str):
        if feature not in test.feature_names:
            raise ValidationError(f"unknown feature {feature!r}")
        col = test.feature_names.index(feature)
    else:
        col = int(feature)
    name = test.feature_names[col]
    x = test.features[:, col]
    if x.size == 0:
        raise ValidationError("empty feature column")
    half_max = float(x.max()) / 2.0
    per_class = {
        int(cls): float(np.mean(x[test.labels == cls] < half_max))
        for cls in np.unique(test.labels)
    }
    return PercentileProfile(
        feature=name,
        percentile=percentile,
        value=float(np.percentile(x, percentile)),
        fraction_below_half_max=float(np.mean(x < half_max)),
        per_class=per_class,
    )


@dataclass(frozen=True)
class PlotSeries:
    histograms: dict
    scatter: list[dict]
    probability_by_instance: list[dict]
    icc_curves: dict

    def as_dict(self) -> dict:
        return {
            "histograms": self.histograms,
            "scatter": self.scatter,
            "probability_by_instance": self.probability_by_instance,
            "icc_curves": self.icc_curves,
        }


def _param_bin_edges(name: str, c_max: float) -> np.ndarray:
    if name == "guessing":
        lo, hi = 0.0, c_max
    else:
        lo, hi = -4.0, 4.0
    n_bins = int(round((hi - lo) / HISTOGRAM_BIN_WIDTH))
    return np.linspace(lo, hi, n_bins + 1)


def plot_series(
    item_ids,
    items,
    theta: float,
    labels,
    icc_pair: tuple[str, str] | None = None,
    c_max: float = 0.5,
) -> PlotSeries:
    """Numeric series behind the report figures.

    Histograms use 0.25-wide bins over each parameter's clamp range, split
    by class. The probability series is ordered by descending
    discrimination (ties by item id). ICC curves are sampled on a 201-point
    ability grid for one item pair, by default the extremes of
    discrimination.
    """
    item_ids = list(item_ids)
    items = list(items)
    labels = np.asarray(labels)
    if not (len(item_ids) == len(items) == labels.shape[0]):
        raise AlignmentError(
            f"ids {len(item_ids)}, items {len(items)}, labels {labels.shape[0]}"
        )
    a = np.array([it.a for it in items])
    values = {
        "discrimination": a,
        "difficulty": np.array([it.b for it in items]),
        "guessing": np.array([it.c for it in items]),
    }
    histograms: dict = {}
    for name, vec in values.items():
        edges = _param_bin_edges(name, c_max)
        per_class = {}
        for cls in np.unique(labels):
            counts, _ = np.histogram(
                np.clip(vec[labels == cls], edges[0], edges[-1]), bins=edges
            )
            per_class[str(int(cls))] = counts.tolist()
        histograms[name] = {"bin_edges": edges.tolist(), "per_class": per_class}

    scatter = [
        {
            "item_id": item_id,
            "discrimination": float(it.a),
            "difficulty": float(it.b),
            "guessing": float(it.c),
            "label": int(lbl),
        }
        for item_id, it, lbl in zip(item_ids, items, labels)
    ]

    order = sorted(range(len(items)), key=lambda i: (-items[i].a, item_ids[i]))
    probability_by_instance = [
        {
            "item_id": item_ids[i],
            "discrimination": float(items[i].a),
            "probability": icc(theta, items[i]),
        }
        for i in order
    ]

    if icc_pair is None:
        hi_id = item_ids[int(np.argmax(a))]
        lo_id = item_ids[int(np.argmin(a))]
        icc_pair = (hi_id, lo_id)
    grid = np.linspace(-4.0, 4.0, ICC_CURVE_POINTS)
    curves: dict = {"theta_grid": grid.tolist(), "items": {}}
    for pid in icc_pair:
        if pid not in item_ids:
            raise ValidationError(f"unknown item id {pid!r} for the ICC pair")
        item = items[item_ids.index(pid)]
        curves["items"][pid] = {
            "discrimination": float(item.a),
            "difficulty": float(item.b),
            "guessing": float(item.c),
            "probabilities": [icc(float(t), item) for t in grid],
        }
    return PlotSeries(
        histograms=histograms,
        scatter=scatter,
        probability_by_instance=probability_by_instance,
        icc_curves=curves,
    )
