"""Labeled datasets and stratified train/test splitting.

A dataset is a dense numeric feature matrix with binary class labels.
Splits are stratified per class with a deterministic rounding rule so a
fixed seed always yields the same partition.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateClassError, LabelError, ValidationError


def _frozen(array: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(array)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class LabeledDataset:
    """Numeric feature matrix plus binary class labels.

    Rows are instances, columns are named features. Labels must be the
    class indices 0 and 1 and both classes must be present.
    """

    name: str
    features: np.ndarray
    labels: np.ndarray
    feature_names: tuple[str, ...]

    def __post_init__(self) -> None:
        features = _frozen(np.asarray(self.features, dtype=np.float64))
        labels = _frozen(np.asarray(self.labels, dtype=np.int64))
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        if features.ndim != 2:
            raise ValidationError(f"features must be 2-D, got shape {features.shape}")
        if labels.ndim != 1 or features.shape[0] != labels.shape[0]:
            raise ValidationError(
                f"feature rows ({features.shape[0]}) and labels ({labels.shape[0]}) disagree"
            )
        if features.shape[1] != len(self.feature_names):
            raise ValidationError(
                f"{features.shape[1]} feature columns but {len(self.feature_names)} names"
            )
        if not np.all(np.isfinite(features)):
            bad = np.argwhere(~np.isfinite(features))[0]
            raise ValidationError(
                f"non-finite feature value at row {bad[0]}, column "
                f"{self.feature_names[bad[1]]!r}"
            )
        present = set(np.unique(labels).tolist())
        if present != {0, 1}:
            raise LabelError(
                f"labels must contain exactly the classes 0 and 1, found {sorted(present)}"
            )

    @property
    def n_instances(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def class_counts(self) -> dict[int, int]:
        values, counts = np.unique(self.labels, return_counts=True)
        return {int(v): int(c) for v, c in zip(values, counts)}

    def subset(self, indices: np.ndarray, name: str | None = None) -> "LabeledDataset":
        return LabeledDataset(
            name=name or self.name,
            features=self.features[indices],
            labels=self.labels[indices],
            feature_names=self.feature_names,
        )


@dataclass(frozen=True)
class SplitPair:
    """A stratified train/test partition of one dataset.

    The index arrays refer to rows of the source dataset; they are kept so
    the split can be serialized and reproduced exactly.
    """

    train: LabeledDataset
    test: LabeledDataset
    seed: int
    train_fraction: float
    train_indices: np.ndarray = field(repr=False, default=None)
    test_indices: np.ndarray = field(repr=False, default=None)

    def __post_init__(self) -> None:
        object.__setattr__(self, "train_indices", _frozen(np.asarray(self.train_indices, dtype=np.int64)))
        object.__setattr__(self, "test_indices", _frozen(np.asarray(self.test_indices, dtype=np.int64)))


def _train_counts(class_sizes: list[tuple[int, int]], train_fraction: float) -> dict[int, int]:
    """Per-class train counts: floor(frac*n_k), remainders by largest fractional part.

    The number of remainder units tops the total up to round(frac*n).
    Fractional-part ties go to the lower class index.
    """
    total = sum(n for _, n in class_sizes)
    target = int(np.floor(train_fraction * total + 0.5))
    floors = {cls: int(np.floor(train_fraction * n)) for cls, n in class_sizes}
    remainder = target - sum(floors.values())
    order = sorted(
        class_sizes,
        key=lambda item: (-(train_fraction * item[1] - floors[item[0]]), item[0]),
    )
    for cls, _ in order[: max(remainder, 0)]:
        floors[cls] += 1
    return floors


def stratified_split(
    dataset: LabeledDataset, train_fraction: float, seed: int
) -> SplitPair:
    """Partition a dataset into stratified train/test sides.

    Deterministic for a fixed seed. Raises if any class would end up empty
    on either side, or if a class has fewer than 2 instances.
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValidationError(f"train_fraction must be in (0, 1), got {train_fraction}")
    counts = dataset.class_counts()
    for cls, n in counts.items():
        if n < 2:
            raise DegenerateClassError(
                f"class {cls} has {n} instance(s); at least 2 are required to split"
            )
    class_sizes = sorted(counts.items())
    train_counts = _train_counts(class_sizes, train_fraction)
    for cls, n in class_sizes:
        n_train = train_counts[cls]
        if n_train == 0 or n_train == n:
            side = "train" if n_train == 0 else "test"
            raise DegenerateClassError(
                f"split would leave class {cls} empty on the {side} side "
                f"(train_fraction={train_fraction}, class size {n})"
            )
    rng = np.random.default_rng(seed)
    train_idx: list[np.ndarray] = []
    test_idx: list[np.ndarray] = []
    for cls, _ in class_sizes:
        members = np.flatnonzero(dataset.labels == cls)
        members = members[rng.permutation(members.size)]
        k = train_counts[cls]
        train_idx.append(members[:k])
        test_idx.append(members[k:])
    train_indices = np.sort(np.concatenate(train_idx))
    test_indices = np.sort(np.concatenate(test_idx))
    return SplitPair(
        train=dataset.subset(train_indices, name=f"{dataset.name}[train]"),
        test=dataset.subset(test_indices, name=f"{dataset.name}[test]"),
        seed=seed,
        train_fraction=train_fraction,
        train_indices=train_indices,
        test_indices=test_indices,
    )


def majority_class(labels: np.ndarray) -> int:
    """Most frequent class; ties break toward class index 0."""
    labels = np.asarray(labels)
    n1 = int(np.sum(labels == 1))
    n0 = labels.size - n1
    return 1 if n1 > n0 else 0


def read_dataset(path, label_col: str = "label", name: str | None = None) -> LabeledDataset:
    """Load a dataset CSV: a header of feature names plus one label column."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValidationError(f"{path}: empty file") from None
        if label_col not in header:
            raise ValidationError(f"{path}: label column {label_col!r} not in header")
        label_pos = header.index(label_col)
        feature_names = tuple(h for i, h in enumerate(header) if i != label_pos)
        rows: list[list[float]] = []
        labels: list[int] = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise ValidationError(
                    f"{path}: line {lineno} has {len(row)} cells, expected {len(header)}"
                )
            values = []
            for col, cell in zip(header, row):
                try:
                    value = float(cell)
                except ValueError:
                    raise ValidationError(
                        f"{path}: line {lineno}, column {col!r}: not numeric: {cell!r}"
                    ) from None
                if col == label_col:
                    if value not in (0.0, 1.0):
                        raise LabelError(
                            f"{path}: line {lineno}: label must be 0 or 1, got {cell!r}"
                        )
                    labels.append(int(value))
                else:
                    values.append(value)
            rows.append(values)
    if not rows:
        raise ValidationError(f"{path}: no data rows")
    return LabeledDataset(
        name=name or str(path),
        features=np.array(rows, dtype=np.float64),
        labels=np.array(labels, dtype=np.int64),
        feature_names=feature_names,
    )


def write_dataset(dataset: LabeledDataset, path, label_col: str = "label") -> None:
    """Write a dataset in the CSV layout accepted by :func:`read_dataset`."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(list(dataset.feature_names) + [label_col])
        for row, label in zip(dataset.features, dataset.labels):
            writer.writerow([_format_float(v) for v in row] + [str(int(label))])


def _format_float(value: float) -> str:
    return format(float(value), ".17g")
