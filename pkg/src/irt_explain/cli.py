"""Command-line pipeline: pool -> fit -> explain, plus simulate and rerun.

Every stage writes a run manifest next to its outputs; ``rerun`` replays a
manifest. All randomness flows from one --seed, with per-stage seeds
derived by stable hashing, so serial runs are reproducible byte for byte.
Manifest timestamps honor SOURCE_DATE_EPOCH.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .analysis import Thresholds
from .data import majority_class, read_dataset, write_dataset
from .errors import IrtExplainError, ValidationError
from .irt import (
    FitConfig,
    fit_3pl,
    read_abilities,
    read_items,
    write_abilities,
    write_items,
)
from .learners import (
    DEFAULT_KNN_KS,
    DEFAULT_RF_TREE_COUNTS,
    FOREST_HYPERPARAMS,
    PoolConfig,
    predict_pool,
    train_pool,
)
from .matrix import (
    artificial_rows,
    assemble_matrix,
    read_matrix,
    responses_from_predictions,
    write_matrix,
)
from .report import build_report, dump_report
from .seeding import derive_seed
from .simulate import (
    SimSpec,
    decile_calibration,
    read_theta,
    score_recovery,
    simulate,
    write_theta,
)

OUT_DIR_ENV = "IRT_EXPLAIN_OUT"
EXIT_VALIDATION = 2
EXIT_NONCONVERGENCE = 3
DEFAULT_RESPONDENT = "rf_t100"


def _timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        moment = datetime.fromtimestamp(int(epoch), tz=timezone.utc)
    else:
        moment = datetime.now(tz=timezone.utc)
    return moment.isoformat(timespec="seconds")


def _relative_input(path: str, out_dir: str) -> str:
    """Record paths inside the output directory relative to it."""
    abs_path = os.path.abspath(path)
    abs_out = os.path.abspath(out_dir)
    if abs_path.startswith(abs_out + os.sep):
        return os.path.relpath(abs_path, abs_out)
    return path


def _write_manifest(out_dir: str, subcommand: str, inputs: dict, seed: int, config: dict) -> str:
    manifest = {
        "schema_version": 1,
        "subcommand": subcommand,
        "inputs": {k: _relative_input(v, out_dir) for k, v in inputs.items()},
        "output_dir": ".",
        "seed": seed,
        "config": config,
        "tool_version": __version__,
        "timestamp": _timestamp(),
    }
    path = os.path.join(out_dir, f"run_manifest_{subcommand.replace('-', '_')}.json")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def _write_prediction_table(respondent_ids, item_ids, rows, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["respondent", *item_ids])
        for rid, row in zip(respondent_ids, rows):
            writer.writerow([rid, *(str(int(v)) for v in row)])


def _parse_counts(text: str) -> tuple[int, ...]:
    """Parse '1-120,3,5,100' into an explicit tuple of tree counts."""
    counts: list[int] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "-" in chunk[1:]:
            lo_text, hi_text = chunk.split("-", 1)
            lo, hi = int(lo_text), int(hi_text)
            if hi < lo:
                raise ValidationError(f"bad count range {chunk!r}")
            counts.extend(range(lo, hi + 1))
        else:
            counts.append(int(chunk))
    if not counts:
        raise ValidationError(f"no tree counts in {text!r}")
    return tuple(counts)


def run_pool(
    dataset_path: str,
    out_dir: str,
    label_col: str = "label",
    seed: int = 0,
    train_frac: float = 0.7,
    rf_counts: tuple[int, ...] = DEFAULT_RF_TREE_COUNTS,
    knn_ks: tuple[int, ...] = DEFAULT_KNN_KS,
    include_gaussian_nb: bool = True,
    include_bernoulli_nb: bool = True,
    include_tree: bool = True,
    include_logistic: bool = True,
) -> None:
    """Train the pool, collect responses and write matrix + split + predictions."""
    from .data import stratified_split

    os.makedirs(out_dir, exist_ok=True)
    dataset = read_dataset(dataset_path, label_col=label_col, name=os.path.basename(dataset_path))
    split = stratified_split(dataset, train_frac, derive_seed(seed, "split"))
    config = PoolConfig(
        rf_tree_counts=rf_counts,
        knn_ks=knn_ks,
        include_gaussian_nb=include_gaussian_nb,
        include_bernoulli_nb=include_bernoulli_nb,
        include_tree=include_tree,
        include_logistic=include_logistic,
        seed=derive_seed(seed, "pool"),
    )
    pool = train_pool(split.train, config)
    predictions = predict_pool(pool, split.test)
    truth = split.test.labels
    rows = [
        (member_id, responses_from_predictions(pred, truth))
        for member_id, pred in zip(pool.member_ids(), predictions)
    ]
    train_major = majority_class(split.train.labels)
    art = artificial_rows(
        truth,
        train_major,
        (derive_seed(seed, "rand1"), derive_seed(seed, "rand2"), derive_seed(seed, "rand3")),
    )
    rows.extend(art)

    width = max(4, len(str(truth.size)))
    item_ids = tuple(f"i{idx:0{width}d}" for idx in split.test_indices)
    matrix = assemble_matrix(rows, item_ids=item_ids)
    write_matrix(matrix, os.path.join(out_dir, "matrix.csv"))

    # artificial respondents imply predictions too: truth where the response
    # is 1, the complement where it is 0
    art_predictions = [np.where(row == 1, truth, 1 - truth) for _, row in art]
    _write_prediction_table(
        matrix.respondent_ids,
        item_ids,
        list(predictions) + art_predictions,
        os.path.join(out_dir, "predictions.csv"),
    )
    write_dataset(split.test, os.path.join(out_dir, "test.csv"), label_col=label_col)
    with open(os.path.join(out_dir, "split.json"), "w", encoding="utf-8", newline="") as fh:
        json.dump(
            {
                "train_indices": split.train_indices.tolist(),
                "test_indices": split.test_indices.tolist(),
                "train_fraction": train_frac,
                "seed": seed,
                "train_majority_class": train_major,
            },
            fh,
            indent=2,
            sort_keys=True,
        )
        fh.write("\n")
    _write_manifest(
        out_dir,
        "pool",
        inputs={"dataset": dataset_path},
        seed=seed,
        config={
            "label_col": label_col,
            "train_fraction": train_frac,
            "rf_tree_counts": list(rf_counts),
            "knn_ks": list(knn_ks),
            "include_gaussian_nb": include_gaussian_nb,
            "include_bernoulli_nb": include_bernoulli_nb,
            "include_tree": include_tree,
            "include_logistic": include_logistic,
            "forest": FOREST_HYPERPARAMS,
            "n_members": len(pool.members),
        },
    )


def run_fit(
    matrix_path: str,
    out_dir: str,
    seed: int = 0,
    quadrature_points: int = 61,
    max_iterations: int = 200,
    epsilon: float = 1e-5,
    c_max: float = 0.5,
    workers: int = 0,
    truth_items_path: str | None = None,
    truth_theta_path: str | None = None,
) -> bool:
    """Fit the 3PL model to a matrix CSV; returns the converged flag."""
    os.makedirs(out_dir, exist_ok=True)
    matrix = read_matrix(matrix_path)
    config = FitConfig(
        quadrature_points=quadrature_points,
        max_em_iterations=max_iterations,
        convergence_epsilon=epsilon,
        c_max=c_max,
        seed=derive_seed(seed, "fit"),
        workers=workers,
    )
    result = fit_3pl(matrix, config)
    write_items(matrix.item_ids, result.items, os.path.join(out_dir, "items.csv"))
    write_abilities(
        matrix.respondent_ids, result.abilities, os.path.join(out_dir, "abilities.csv")
    )
    log = {
        "iterations": result.iterations,
        "converged": result.converged,
        "final_penalized_log_likelihood": result.log_likelihood,
        "ll_history": list(result.ll_history),
        "degenerate_items": list(result.degenerate_items),
        "n_respondents": matrix.n_respondents,
        "n_items": matrix.n_items,
    }
    if truth_items_path or truth_theta_path:
        if not (truth_items_path and truth_theta_path):
            raise ValidationError("--truth-items and --truth-theta go together")
        _, true_items = read_items(truth_items_path)
        _, true_thetas = read_theta(truth_theta_path)
        recovery = score_recovery(true_items, true_thetas, result)
        with open(os.path.join(out_dir, "recovery.json"), "w", encoding="utf-8", newline="") as fh:
            json.dump(recovery.as_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
        log["recovery"] = recovery.as_dict()
    with open(os.path.join(out_dir, "fit_log.json"), "w", encoding="utf-8", newline="") as fh:
        json.dump(log, fh, indent=2, sort_keys=True)
        fh.write("\n")
    _write_manifest(
        out_dir,
        "fit",
        inputs={
            k: v
            for k, v in {
                "matrix": matrix_path,
                "truth_items": truth_items_path,
                "truth_theta": truth_theta_path,
            }.items()
            if v
        },
        seed=seed,
        config={
            "quadrature_points": quadrature_points,
            "max_em_iterations": max_iterations,
            "convergence_epsilon": epsilon,
            "c_max": c_max,
            "workers": workers,
        },
    )
    return result.converged


def run_explain(
    items_path: str,
    abilities_path: str,
    respondent: str,
    test_path: str,
    predictions_path: str,
    out_dir: str,
    label_col: str = "label",
    reliability_cutoff: float = 0.5,
    guessing_high: float = 0.2,
    correlation_method: str = "pearson",
    pool_manifest_path: str | None = None,
    fit_log_path: str | None = None,
) -> None:
    """Build report.json, verdicts.csv and the figures for one respondent."""
    os.makedirs(out_dir, exist_ok=True)
    item_ids, items = read_items(items_path)
    respondent_ids, abilities = read_abilities(abilities_path)
    if respondent not in respondent_ids:
        raise ValidationError(
            f"unknown respondent {respondent!r}; available: {', '.join(respondent_ids)}"
        )
    ability = abilities[respondent_ids.index(respondent)]
    test = read_dataset(test_path, label_col=label_col, name=os.path.basename(test_path))
    pred_table = read_matrix(predictions_path)
    if pred_table.item_ids != item_ids:
        raise ValidationError("predictions and item-parameter files disagree on item ids")
    if respondent not in pred_table.respondent_ids:
        raise ValidationError(
            f"respondent {respondent!r} missing from predictions; available: "
            f"{', '.join(pred_table.respondent_ids)}"
        )
    if test.n_instances != len(item_ids):
        raise ValidationError(
            f"test set has {test.n_instances} instances but {len(item_ids)} items fitted"
        )
    predictions = pred_table.row(respondent)
    thresholds = Thresholds(
        reliability_cutoff=reliability_cutoff, guessing_high=guessing_high
    )
    metadata: dict = {"seed_note": "stage seeds derive from the run seed by stable hashing"}
    degenerate_items: tuple = ()
    if fit_log_path and os.path.exists(fit_log_path):
        with open(fit_log_path, "r", encoding="utf-8") as fh:
            fit_log = json.load(fh)
        degenerate_items = tuple(fit_log.get("degenerate_items", ()))
        metadata["fit"] = {
            "iterations": fit_log.get("iterations"),
            "converged": fit_log.get("converged"),
        }
    if pool_manifest_path and os.path.exists(pool_manifest_path):
        with open(pool_manifest_path, "r", encoding="utf-8") as fh:
            pool_manifest = json.load(fh)
        metadata["pool"] = {
            "seed": pool_manifest.get("seed"),
            "config": pool_manifest.get("config"),
        }
    report = build_report(
        dataset_name=test.name,
        respondent_id=respondent,
        ability=ability,
        item_ids=item_ids,
        items=items,
        test=test,
        predictions=predictions,
        thresholds=thresholds,
        correlation_method=correlation_method,
        degenerate_items=degenerate_items,
        metadata=metadata,
    )
    dump_report(report, os.path.join(out_dir, "report.json"))
    with open(os.path.join(out_dir, "verdicts.csv"), "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            [
                "item_id",
                "discrimination",
                "difficulty",
                "guessing",
                "success_probability",
                "reliable",
                "flags",
            ]
        )
        for v in report["verdicts"]:
            writer.writerow(
                [
                    v["item_id"],
                    format(v["item"]["discrimination"], ".17g"),
                    format(v["item"]["difficulty"], ".17g"),
                    format(v["item"]["guessing"], ".17g"),
                    format(v["success_probability"], ".17g"),
                    str(v["reliable"]).lower(),
                    "|".join(v["flags"]),
                ]
            )
    from .plots import render_all

    render_all(report["plot_series"], report["model_diagnostics"]["ability"], os.path.join(out_dir, "figures"))
    _write_manifest(
        out_dir,
        "explain",
        inputs={
            k: v
            for k, v in {
                "items": items_path,
                "abilities": abilities_path,
                "test": test_path,
                "predictions": predictions_path,
                "pool_manifest": pool_manifest_path,
                "fit_log": fit_log_path,
            }.items()
            if v
        },
        seed=0,
        config={
            "respondent": respondent,
            "label_col": label_col,
            "reliability_cutoff": reliability_cutoff,
            "guessing_high": guessing_high,
            "correlation_method": correlation_method,
        },
    )


def run_simulate(
    out_dir: str,
    seed: int = 0,
    n_respondents: int = 150,
    n_items: int = 100,
    a_range: tuple[float, float] = (-2.0, 2.5),
    abs_a_min: float = 0.3,
    b_range: tuple[float, float] = (-2.5, 2.5),
    c_range: tuple[float, float] = (0.0, 0.3),
    check_calibration: bool = False,
) -> bool:
    """Generate a synthetic matrix plus its true parameters."""
    os.makedirs(out_dir, exist_ok=True)
    spec = SimSpec(
        n_respondents=n_respondents,
        n_items=n_items,
        a_range=a_range,
        abs_a_min=abs_a_min,
        b_range=b_range,
        c_range=c_range,
        seed=derive_seed(seed, "simulate"),
    )
    items, thetas, matrix = simulate(spec)
    write_matrix(matrix, os.path.join(out_dir, "matrix.csv"))
    write_items(matrix.item_ids, items, os.path.join(out_dir, "true_items.csv"))
    write_theta(matrix.respondent_ids, thetas, os.path.join(out_dir, "true_theta.csv"))
    calibration_ok = True
    if check_calibration:
        calibration = decile_calibration(items, thetas, matrix)
        calibration_ok = calibration["within_bounds"]
        with open(os.path.join(out_dir, "calibration.json"), "w", encoding="utf-8", newline="") as fh:
            json.dump(calibration, fh, indent=2, sort_keys=True)
            fh.write("\n")
    _write_manifest(
        out_dir,
        "simulate",
        inputs={},
        seed=seed,
        config={
            "n_respondents": n_respondents,
            "n_items": n_items,
            "a_range": list(a_range),
            "abs_a_min": abs_a_min,
            "b_range": list(b_range),
            "c_range": list(c_range),
            "check_calibration": check_calibration,
        },
    )
    return calibration_ok


def run_all(
    dataset_path: str,
    out_dir: str,
    label_col: str = "label",
    seed: int = 0,
    train_frac: float = 0.7,
    respondent: str = DEFAULT_RESPONDENT,
    rf_counts: tuple[int, ...] = DEFAULT_RF_TREE_COUNTS,
    knn_ks: tuple[int, ...] = DEFAULT_KNN_KS,
    quadrature_points: int = 61,
    max_iterations: int = 200,
    epsilon: float = 1e-5,
    workers: int = 0,
) -> bool:
    """The full pipeline; writes exactly what the composed stages would."""
    run_pool(
        dataset_path,
        out_dir,
        label_col=label_col,
        seed=seed,
        train_frac=train_frac,
        rf_counts=rf_counts,
        knn_ks=knn_ks,
    )
    converged = run_fit(
        os.path.join(out_dir, "matrix.csv"),
        out_dir,
        seed=seed,
        quadrature_points=quadrature_points,
        max_iterations=max_iterations,
        epsilon=epsilon,
        workers=workers,
    )
    run_explain(
        os.path.join(out_dir, "items.csv"),
        os.path.join(out_dir, "abilities.csv"),
        respondent,
        os.path.join(out_dir, "test.csv"),
        os.path.join(out_dir, "predictions.csv"),
        out_dir,
        label_col=label_col,
        pool_manifest_path=os.path.join(out_dir, "run_manifest_pool.json"),
        fit_log_path=os.path.join(out_dir, "fit_log.json"),
    )
    _write_manifest(
        out_dir,
        "run-all",
        inputs={"dataset": dataset_path},
        seed=seed,
        config={
            "label_col": label_col,
            "train_fraction": train_frac,
            "respondent": respondent,
            "rf_tree_counts": list(rf_counts),
            "knn_ks": list(knn_ks),
            "quadrature_points": quadrature_points,
            "max_em_iterations": max_iterations,
            "convergence_epsilon": epsilon,
            "workers": workers,
        },
    )
    return converged


def run_from_manifest(manifest_path: str, out_dir: str) -> bool:
    """Replay a recorded run into a fresh output directory."""
    with open(manifest_path, "r", encoding="utf-8") as fh:
        manifest = json.load(fh)
    base = os.path.dirname(os.path.abspath(manifest_path))

    def resolve(key: str) -> str:
        value = manifest["inputs"][key]
        return value if os.path.isabs(value) else os.path.join(base, value)

    sub = manifest["subcommand"]
    seed = manifest["seed"]
    cfg = manifest["config"]
    if sub == "pool":
        run_pool(
            resolve("dataset"),
            out_dir,
            label_col=cfg["label_col"],
            seed=seed,
            train_frac=cfg["train_fraction"],
            rf_counts=tuple(cfg["rf_tree_counts"]),
            knn_ks=tuple(cfg["knn_ks"]),
            include_gaussian_nb=cfg["include_gaussian_nb"],
            include_bernoulli_nb=cfg["include_bernoulli_nb"],
            include_tree=cfg["include_tree"],
            include_logistic=cfg["include_logistic"],
        )
        return True
    if sub == "fit":
        return run_fit(
            resolve("matrix"),
            out_dir,
            seed=seed,
            quadrature_points=cfg["quadrature_points"],
            max_iterations=cfg["max_em_iterations"],
            epsilon=cfg["convergence_epsilon"],
            c_max=cfg["c_max"],
            workers=cfg["workers"],
            truth_items_path=resolve("truth_items") if "truth_items" in manifest["inputs"] else None,
            truth_theta_path=resolve("truth_theta") if "truth_theta" in manifest["inputs"] else None,
        )
    if sub == "explain":
        run_explain(
            resolve("items"),
            resolve("abilities"),
            cfg["respondent"],
            resolve("test"),
            resolve("predictions"),
            out_dir,
            label_col=cfg["label_col"],
            reliability_cutoff=cfg["reliability_cutoff"],
            guessing_high=cfg["guessing_high"],
            correlation_method=cfg["correlation_method"],
            pool_manifest_path=resolve("pool_manifest") if "pool_manifest" in manifest["inputs"] else None,
            fit_log_path=resolve("fit_log") if "fit_log" in manifest["inputs"] else None,
        )
        return True
    if sub == "simulate":
        return run_simulate(
            out_dir,
            seed=seed,
            n_respondents=cfg["n_respondents"],
            n_items=cfg["n_items"],
            a_range=tuple(cfg["a_range"]),
            abs_a_min=cfg["abs_a_min"],
            b_range=tuple(cfg["b_range"]),
            c_range=tuple(cfg["c_range"]),
            check_calibration=cfg["check_calibration"],
        )
    if sub == "run-all":
        return run_all(
            resolve("dataset"),
            out_dir,
            label_col=cfg["label_col"],
            seed=seed,
            train_frac=cfg["train_fraction"],
            respondent=cfg["respondent"],
            rf_counts=tuple(cfg["rf_tree_counts"]),
            knn_ks=tuple(cfg["knn_ks"]),
            quadrature_points=cfg["quadrature_points"],
            max_iterations=cfg["max_em_iterations"],
            epsilon=cfg["convergence_epsilon"],
            workers=cfg["workers"],
        )
    raise ValidationError(f"manifest has unknown subcommand {sub!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irt-explain",
        description="Explain classifier reliability with 3PL item response theory.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--out-dir",
            default=os.environ.get(OUT_DIR_ENV, "."),
            help=f"output directory (default: ${OUT_DIR_ENV} or '.')",
        )
        p.add_argument("--seed", type=int, default=0, help="master seed for the run")
        p.add_argument("--serial", action="store_true", help="force the serial reference path")
        p.add_argument("--workers", type=int, default=0, help="parallel workers (0 = serial)")
        p.add_argument("--strict", action="store_true", help="treat non-convergence as an error")

    p_pool = sub.add_parser("pool", help="train the classifier pool and build the response matrix")
    p_pool.add_argument("dataset", help="dataset CSV (features + label column)")
    p_pool.add_argument("--label-col", default="label")
    p_pool.add_argument("--train-frac", type=float, default=0.7)
    p_pool.add_argument("--rf-counts", default=None, help="e.g. '1-120,3,5,100'")
    p_pool.add_argument("--knn-ks", default=None, help="e.g. '2,3,5,8'")
    p_pool.add_argument("--no-gaussian-nb", action="store_true")
    p_pool.add_argument("--no-bernoulli-nb", action="store_true")
    p_pool.add_argument("--no-tree", action="store_true")
    p_pool.add_argument("--no-logistic", action="store_true")
    common(p_pool)

    p_fit = sub.add_parser("fit", help="fit the 3PL model to a response matrix")
    p_fit.add_argument("matrix", help="response matrix CSV")
    p_fit.add_argument("--quad-points", type=int, default=61)
    p_fit.add_argument("--max-iter", type=int, default=200)
    p_fit.add_argument("--epsilon", type=float, default=1e-5)
    p_fit.add_argument("--c-max", type=float, default=0.5)
    p_fit.add_argument("--truth-items", default=None, help="true item CSV for recovery scoring")
    p_fit.add_argument("--truth-theta", default=None, help="true theta CSV for recovery scoring")
    common(p_fit)

    p_explain = sub.add_parser("explain", help="build the reliability report for one respondent")
    p_explain.add_argument("--items", required=True)
    p_explain.add_argument("--abilities", required=True)
    p_explain.add_argument("--respondent", required=True)
    p_explain.add_argument("--test", required=True, help="test-split dataset CSV")
    p_explain.add_argument("--predictions", required=True, help="per-respondent predictions CSV")
    p_explain.add_argument("--label-col", default="label")
    p_explain.add_argument("--cutoff", type=float, default=0.5)
    p_explain.add_argument("--guessing-high", type=float, default=0.2)
    p_explain.add_argument("--correlation", choices=("pearson", "spearman"), default="pearson")
    p_explain.add_argument("--pool-manifest", default=None)
    p_explain.add_argument("--fit-log", default=None)
    common(p_explain)

    p_sim = sub.add_parser("simulate", help="generate a synthetic response matrix with truth")
    p_sim.add_argument("--respondents", type=int, default=150)
    p_sim.add_argument("--items", type=int, default=100)
    p_sim.add_argument("--a-range", type=float, nargs=2, default=(-2.0, 2.5))
    p_sim.add_argument("--abs-a-min", type=float, default=0.3)
    p_sim.add_argument("--b-range", type=float, nargs=2, default=(-2.5, 2.5))
    p_sim.add_argument("--c-range", type=float, nargs=2, default=(0.0, 0.3))
    p_sim.add_argument("--check-calibration", action="store_true")
    common(p_sim)

    p_all = sub.add_parser("run-all", help="pool + fit + explain in one go")
    p_all.add_argument("dataset")
    p_all.add_argument("--label-col", default="label")
    p_all.add_argument("--train-frac", type=float, default=0.7)
    p_all.add_argument("--respondent", default=DEFAULT_RESPONDENT)
    p_all.add_argument("--rf-counts", default=None, help="e.g. '1-120,3,5,100'")
    p_all.add_argument("--knn-ks", default=None, help="e.g. '2,3,5,8'")
    p_all.add_argument("--quad-points", type=int, default=61)
    p_all.add_argument("--max-iter", type=int, default=200)
    p_all.add_argument("--epsilon", type=float, default=1e-5)
    common(p_all)

    p_rerun = sub.add_parser("rerun", help="replay a run manifest")
    p_rerun.add_argument("manifest")
    common(p_rerun)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    workers = 0 if getattr(args, "serial", False) else getattr(args, "workers", 0)
    try:
        if args.subcommand == "pool":
            run_pool(
                args.dataset,
                args.out_dir,
                label_col=args.label_col,
                seed=args.seed,
                train_frac=args.train_frac,
                rf_counts=_parse_counts(args.rf_counts) if args.rf_counts else DEFAULT_RF_TREE_COUNTS,
                knn_ks=tuple(int(k) for k in args.knn_ks.split(",")) if args.knn_ks else DEFAULT_KNN_KS,
                include_gaussian_nb=not args.no_gaussian_nb,
                include_bernoulli_nb=not args.no_bernoulli_nb,
                include_tree=not args.no_tree,
                include_logistic=not args.no_logistic,
            )
        elif args.subcommand == "fit":
            converged = run_fit(
                args.matrix,
                args.out_dir,
                seed=args.seed,
                quadrature_points=args.quad_points,
                max_iterations=args.max_iter,
                epsilon=args.epsilon,
                c_max=args.c_max,
                workers=workers,
                truth_items_path=args.truth_items,
                truth_theta_path=args.truth_theta,
            )
            if not converged:
                print("warning: EM did not converge within the iteration limit", file=sys.stderr)
                if args.strict:
                    return EXIT_NONCONVERGENCE
        elif args.subcommand == "explain":
            run_explain(
                args.items,
                args.abilities,
                args.respondent,
                args.test,
                args.predictions,
                args.out_dir,
                label_col=args.label_col,
                reliability_cutoff=args.cutoff,
                guessing_high=args.guessing_high,
                correlation_method=args.correlation,
                pool_manifest_path=args.pool_manifest,
                fit_log_path=args.fit_log,
            )
        elif args.subcommand == "simulate":
            ok = run_simulate(
                args.out_dir,
                seed=args.seed,
                n_respondents=args.respondents,
                n_items=args.items,
                a_range=tuple(args.a_range),
                abs_a_min=args.abs_a_min,
                b_range=tuple(args.b_range),
                c_range=tuple(args.c_range),
                check_calibration=args.check_calibration,
            )
            if not ok:
                print("warning: decile calibration outside the 3-sigma bound", file=sys.stderr)
                if args.strict:
                    return EXIT_NONCONVERGENCE
        elif args.subcommand == "run-all":
            converged = run_all(
                args.dataset,
                args.out_dir,
                label_col=args.label_col,
                seed=args.seed,
                train_frac=args.train_frac,
                respondent=args.respondent,
                rf_counts=_parse_counts(args.rf_counts) if args.rf_counts else DEFAULT_RF_TREE_COUNTS,
                knn_ks=tuple(int(k) for k in args.knn_ks.split(",")) if args.knn_ks else DEFAULT_KNN_KS,
                quadrature_points=args.quad_points,
                max_iterations=args.max_iter,
                epsilon=args.epsilon,
                workers=workers,
            )
            if not converged:
                print("warning: EM did not converge within the iteration limit", file=sys.stderr)
                if args.strict:
                    return EXIT_NONCONVERGENCE
        elif args.subcommand == "rerun":
            ok = run_from_manifest(args.manifest, args.out_dir)
            if not ok and args.strict:
                return EXIT_NONCONVERGENCE
    except IrtExplainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return 0


if __name__ == "__main__":
    sys.exit(main())
