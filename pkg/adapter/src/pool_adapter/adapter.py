"""scikit-learn classifier pool emitting response matrices for the IRT explainer.

Mirrors the native pool's file contracts exactly (matrix CSV, predictions
CSV, dataset CSV) without importing it: the wire format is the interface.
The pool is 120 random forests with 1..120 trees plus Gaussian/Bernoulli
naive Bayes, kNN with k in {2,3,5,8}, a decision tree, an SVM and an MLP —
129 real respondents, then the seven artificial reference rows.
"""

from __future__ import annotations

import csv
import hashlib
import json
import os
import platform
import warnings
from dataclasses import dataclass

import numpy as np
import pandas as pd
import sklearn
from sklearn.ensemble import RandomForestClassifier
from sklearn.naive_bayes import BernoulliNB, GaussianNB
from sklearn.neighbors import KNeighborsClassifier
from sklearn.neural_network import MLPClassifier
from sklearn.svm import SVC
from sklearn.tree import DecisionTreeClassifier

__all__ = ["AdapterConfig", "AdapterError", "fetch_dataset", "run_pool", "TARGET_MEMBER"]

TARGET_MEMBER = "rf_t100"
ARTIFICIAL_IDS = ("optimal", "pessimal", "majority", "minority", "rand1", "rand2", "rand3")


class AdapterError(Exception):
    pass


def _derive_seed(master: int, label: str) -> int:
    digest = hashlib.sha256(f"{master}:{label}".encode("utf-8")).digest()
    return int.from_bytes(digest[:4], "big")


@dataclass(frozen=True)
class AdapterConfig:
    dataset: str  # OpenML id ("openml:31") or local CSV path
    seed: int = 0
    label_col: str = "label"
    train_fraction: float = 0.7
    rf_tree_counts: tuple[int, ...] = tuple(range(1, 121))
    knn_ks: tuple[int, ...] = (2, 3, 5, 8)
    include_svm: bool = True
    include_mlp: bool = True
    # the paper's listing names RF with 3/5/default trees in its second set;
    # they duplicate members of the first set, so they are off by default
    include_duplicate_forests: bool = False
    cv10: bool = False

    def member_ids(self) -> list[str]:
        ids = [f"rf_t{t}" for t in self.rf_tree_counts]
        ids += ["gaussian_nb", "bernoulli_nb"]
        ids += [f"knn_k{k}" for k in self.knn_ks]
        ids += ["cart"]
        if self.include_duplicate_forests:
            ids += ["rf_t3_std", "rf_t5_std", "rf_std"]
        if self.include_svm:
            ids.append("svm")
        if self.include_mlp:
            ids.append("mlp")
        return ids


def fetch_dataset(source: str, out_path: str, label_col: str = "label") -> int:
    """Materialize a dataset as a numeric CSV with the label column last.

    ``source`` is either ``openml:<data_id>`` (downloaded with scikit-learn)
    or a local CSV path. Categorical features are one-hot encoded; labels
    map to {0, 1} by sorted order of the distinct values. Returns the row
    count.
    """
    if source.startswith("openml:"):
        from sklearn.datasets import fetch_openml

        bunch = fetch_openml(data_id=int(source.split(":", 1)[1]), as_frame=True)
        frame = bunch.frame
        target = bunch.target.name
    else:
        frame = pd.read_csv(source)
        if label_col not in frame.columns:
            raise AdapterError(f"{source}: no {label_col!r} column")
        target = label_col

    y_raw = frame[target]
    classes = sorted(map(str, y_raw.unique()))
    if len(classes) != 2:
        raise AdapterError(f"{source}: expected 2 classes, found {len(classes)}")
    y = y_raw.astype(str).map({classes[0]: 0, classes[1]: 1})

    X = frame.drop(columns=[target])
    X = pd.get_dummies(X, dtype=float)
    if X.isna().any().any():
        X = X.fillna(X.median(numeric_only=True))

    out = X.copy()
    out["label"] = y.to_numpy()
    out.to_csv(out_path, index=False, lineterminator="\n")
    return len(out)


def _stratified_indices(y: np.ndarray, train_fraction: float, seed: int):
    """Same rounding rule as the core explainer: per-class floors, largest
    fractional part gets the remainder, ties toward the lower class index."""
    classes, counts = np.unique(y, return_counts=True)
    total = y.size
    target = int(np.floor(train_fraction * total + 0.5))
    floors = {int(c): int(np.floor(train_fraction * n)) for c, n in zip(classes, counts)}
    remainder = target - sum(floors.values())
    order = sorted(
        zip(classes, counts),
        key=lambda item: (-(train_fraction * item[1] - floors[int(item[0])]), item[0]),
    )
    for cls, _ in order[: max(remainder, 0)]:
        floors[int(cls)] += 1
    rng = np.random.default_rng(seed)
    train_parts, test_parts = [], []
    for cls, n in zip(classes, counts):
        members = np.flatnonzero(y == cls)
        members = members[rng.permutation(members.size)]
        k = floors[int(cls)]
        if k == 0 or k == n:
            raise AdapterError(f"class {cls} would be empty on one split side")
        train_parts.append(members[:k])
        test_parts.append(members[k:])
    return np.sort(np.concatenate(train_parts)), np.sort(np.concatenate(test_parts))


def _build_model(member_id: str, seed: int):
    if member_id.startswith("rf_t"):
        trees = int(member_id[4:].split("_")[0])
        return RandomForestClassifier(n_estimators=trees, random_state=seed)
    if member_id == "rf_std":
        return RandomForestClassifier(random_state=seed)
    if member_id == "gaussian_nb":
        return GaussianNB()
    if member_id == "bernoulli_nb":
        return BernoulliNB()
    if member_id.startswith("knn_k"):
        return KNeighborsClassifier(n_neighbors=int(member_id[5:]))
    if member_id == "cart":
        return DecisionTreeClassifier(random_state=seed)
    if member_id == "svm":
        return SVC(random_state=seed)
    if member_id == "mlp":
        return MLPClassifier(random_state=seed)
    raise AdapterError(f"unknown member {member_id!r}")


def _artificial_rows(truth: np.ndarray, train_majority: int, seeds) -> list:
    majority = (truth == train_majority).astype(int)
    rows = [
        ("optimal", np.ones(truth.size, dtype=int)),
        ("pessimal", np.zeros(truth.size, dtype=int)),
        ("majority", majority),
        ("minority", 1 - majority),
    ]
    for name, seed in zip(("rand1", "rand2", "rand3"), seeds):
        rng = np.random.default_rng(seed)
        rows.append((name, rng.integers(0, 2, size=truth.size)))
    return rows


def _write_table(path, header_first: str, item_ids, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([header_first, *item_ids])
        for rid, row in rows:
            writer.writerow([rid, *(str(int(v)) for v in row)])


def run_pool(config: AdapterConfig, out_dir: str) -> dict:
    """Train the pool, write matrix.csv / predictions.csv / sidecar, return the sidecar."""
    os.makedirs(out_dir, exist_ok=True)
    dataset_csv = os.path.join(out_dir, "dataset.csv")
    n_rows = fetch_dataset(config.dataset, dataset_csv, label_col=config.label_col)

    frame = pd.read_csv(dataset_csv)
    y = frame["label"].to_numpy(dtype=int)
    X = frame.drop(columns=["label"]).to_numpy(dtype=float)
    train_idx, test_idx = _stratified_indices(
        y, config.train_fraction, _derive_seed(config.seed, "split")
    )
    X_train, y_train = X[train_idx], y[train_idx]
    X_test, y_test = X[test_idx], y[test_idx]

    item_ids = [f"i{int(i):04d}" for i in test_idx]
    member_rows = []
    target_predictions = None
    skipped: list[dict] = []
    members_meta: dict[str, dict] = {}
    cv_scores: dict[str, float] = {}
    for member_id in config.member_ids():
        try:
            model = _build_model(member_id, _derive_seed(config.seed, member_id))
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                model.fit(X_train, y_train)
                predictions = np.asarray(model.predict(X_test), dtype=int)
                if config.cv10:
                    from sklearn.model_selection import StratifiedKFold, cross_val_score

                    folds = min(10, int(np.bincount(y_train).min()))
                    cv = StratifiedKFold(
                        n_splits=folds, shuffle=True,
                        random_state=_derive_seed(config.seed, f"cv:{member_id}"),
                    )
                    cv_scores[member_id] = float(
                        cross_val_score(model, X_train, y_train, cv=cv).mean()
                    )
        except Exception as exc:  # member failures are logged, not fatal
            skipped.append({"member": member_id, "error": f"{type(exc).__name__}: {exc}"})
            continue
        member_rows.append((member_id, (predictions == y_test).astype(int)))
        members_meta[member_id] = model.get_params()
        if member_id == TARGET_MEMBER:
            target_predictions = predictions

    truth_rows = _artificial_rows(
        y_test,
        int(np.bincount(y_train).argmax()),
        tuple(_derive_seed(config.seed, f"rand{k}") for k in (1, 2, 3)),
    )
    _write_table(
        os.path.join(out_dir, "matrix.csv"), "respondent", item_ids,
        member_rows + truth_rows,
    )
    prediction_rows = [(TARGET_MEMBER, target_predictions)] if target_predictions is not None else []
    _write_table(
        os.path.join(out_dir, "predictions.csv"), "respondent", item_ids, prediction_rows
    )

    sidecar = {
        "schema_version": 1,
        "dataset": config.dataset,
        "rows": n_rows,
        "seed": config.seed,
        "train_fraction": config.train_fraction,
        "respondents": len(member_rows) + len(truth_rows),
        "real_members": len(member_rows),
        "skipped": skipped,
        "target_member": TARGET_MEMBER,
        "cv10_scores": cv_scores,
        "versions": {
            "python": platform.python_version(),
            "scikit-learn": sklearn.__version__,
            "numpy": np.__version__,
            "pandas": pd.__version__,
        },
        "member_hyperparameters": {
            k: {p: repr(v) for p, v in sorted(params.items())}
            for k, params in members_meta.items()
        },
    }
    with open(os.path.join(out_dir, "pool_sidecar.json"), "w", encoding="utf-8", newline="") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return sidecar
