"""Assembles the explanation report consumed by downstream tooling.

The report is a single JSON document with a versioned schema; the schema
itself ships with the package (``data/report_schema.json``).
"""

from __future__ import annotations

import json
from importlib import resources

import numpy as np

from . import __version__
from .analysis import (
    ModelDiagnostics,
    Thresholds,
    feature_correlations,
    model_diagnostics,
    percentile_profile,
    plot_series,
    summarize_items,
    verdicts,
)
from .data import LabeledDataset
from .errors import InsufficientDataError
from .irt import AbilityEstimate
from .matrix import responses_from_predictions

SCHEMA_VERSION = 1
CORRELATION_HIGHLIGHT = 0.4
PROFILE_PERCENTILE = 90.0


def load_schema() -> dict:
    with resources.files("irt_explain").joinpath("data/report_schema.json").open(
        "r", encoding="utf-8"
    ) as fh:
        return json.load(fh)


def _correlation_block(test, items, model_row, method):
    tables: dict = {}
    for subset in ("all", "errors_only", "negative_a_only"):
        try:
            rows = feature_correlations(
                test,
                items,
                subset=subset,
                model_row=model_row if subset == "errors_only" else None,
                method=method,
                include_negative_indicator=True,
            )
            tables[subset] = [r.as_dict() for r in rows]
        except InsufficientDataError as exc:
            tables[subset] = {"unavailable": str(exc)}
    return tables


def _percentile_profiles(test, tables) -> list[dict]:
    """Profile the features that correlate strongly on the errors-only table."""
    rows = tables.get("errors_only")
    if not isinstance(rows, list):
        return []
    chosen = []
    for row in rows:
        strengths = [abs(row["corr_a"]), abs(row["corr_b"]), abs(row["corr_c"])]
        if row.get("corr_negative_discrimination") is not None:
            strengths.append(abs(row["corr_negative_discrimination"]))
        if max(strengths) >= CORRELATION_HIGHLIGHT:
            chosen.append(row["feature"])
    return [
        percentile_profile(test, feature, PROFILE_PERCENTILE).as_dict()
        for feature in chosen
    ]


def build_report(
    *,
    dataset_name: str,
    respondent_id: str,
    ability: AbilityEstimate,
    item_ids,
    items,
    test: LabeledDataset,
    predictions,
    thresholds: Thresholds = Thresholds(),
    correlation_method: str = "pearson",
    degenerate_items=(),
    metadata: dict | None = None,
) -> dict:
    """Build the full explanation report for one target respondent."""
    predictions = np.asarray(predictions)
    model_row = responses_from_predictions(predictions, test.labels)
    theta = ability.theta
    verdict_rows = verdicts(item_ids, items, theta, thresholds)
    summary = summarize_items(items, test.labels, thresholds)
    diagnostics: ModelDiagnostics = model_diagnostics(
        model_row, predictions, test.labels, items, theta
    )
    tables = _correlation_block(test, items, model_row, correlation_method)
    series = plot_series(item_ids, items, theta, test.labels)
    meta = {
        "tool_version": __version__,
        "dataset": dataset_name,
        "respondent": respondent_id,
        "ability_degenerate": ability.degenerate,
        "thresholds": {
            "discrimination_high": thresholds.discrimination_high,
            "difficulty_high": thresholds.difficulty_high,
            "guessing_high": thresholds.guessing_high,
            "reliability_cutoff": thresholds.reliability_cutoff,
        },
        "degenerate_items": list(degenerate_items),
        "n_items": len(list(item_ids)),
    }
    if metadata:
        meta.update(metadata)
    return {
        "schema_version": SCHEMA_VERSION,
        "dataset_summary": summary.as_dict(),
        "model_diagnostics": diagnostics.as_dict(),
        "verdicts": [
            {
                "item_id": v.item_id,
                "success_probability": v.success_probability,
                "reliable": v.reliable,
                "flags": list(v.flags),
                "item": {
                    "discrimination": v.item.a,
                    "difficulty": v.item.b,
                    "guessing": v.item.c,
                },
            }
            for v in verdict_rows
        ],
        "correlations": {
            "method": correlation_method,
            "highlight_threshold": CORRELATION_HIGHLIGHT,
            "tables": tables,
            "percentile_profiles": _percentile_profiles(test, tables),
        },
        "plot_series": series.as_dict(),
        "metadata": meta,
    }


def dump_report(report: dict, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
