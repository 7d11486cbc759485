"""Binary respondent-by-item response matrices.

Each row is one classifier, each column one test instance, each cell a 0/1
correctness indicator. Includes the seven artificial respondents that anchor
the ability scale, and the CSV wire format.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .data import _frozen
from .errors import AlignmentError, ValidationError

ARTIFICIAL_IDS = ("optimal", "pessimal", "majority", "minority", "rand1", "rand2", "rand3")


@dataclass(frozen=True, eq=False)
class ResponseMatrix:
    """Dichotomous response table: respondents x items."""

    respondent_ids: tuple[str, ...]
    item_ids: tuple[str, ...]
    cells: np.ndarray

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ResponseMatrix):
            return NotImplemented
        return (
            self.respondent_ids == other.respondent_ids
            and self.item_ids == other.item_ids
            and np.array_equal(self.cells, other.cells)
        )

    def __post_init__(self) -> None:
        object.__setattr__(self, "respondent_ids", tuple(self.respondent_ids))
        object.__setattr__(self, "item_ids", tuple(self.item_ids))
        cells = _frozen(np.asarray(self.cells, dtype=np.int8))
        object.__setattr__(self, "cells", cells)
        if cells.ndim != 2:
            raise ValidationError(f"cells must be 2-D, got shape {cells.shape}")
        if cells.shape != (len(self.respondent_ids), len(self.item_ids)):
            raise ValidationError(
                f"cells shape {cells.shape} does not match "
                f"{len(self.respondent_ids)} respondents x {len(self.item_ids)} items"
            )
        if len(set(self.respondent_ids)) != len(self.respondent_ids):
            raise ValidationError("duplicate respondent id")
        if len(set(self.item_ids)) != len(self.item_ids):
            raise ValidationError("duplicate item id")
        bad = (cells != 0) & (cells != 1)
        if bad.any():
            r, c = np.argwhere(bad)[0]
            raise ValidationError(
                f"cell at respondent {self.respondent_ids[r]!r}, item "
                f"{self.item_ids[c]!r} is not 0 or 1"
            )

    @property
    def n_respondents(self) -> int:
        return self.cells.shape[0]

    @property
    def n_items(self) -> int:
        return self.cells.shape[1]

    def row(self, respondent_id: str) -> np.ndarray:
        try:
            idx = self.respondent_ids.index(respondent_id)
        except ValueError:
            raise KeyError(respondent_id) from None
        return self.cells[idx]


def responses_from_predictions(predicted, truth) -> np.ndarray:
    """0/1 correctness row: entry i is 1 iff predicted[i] == truth[i]."""
    predicted = np.asarray(predicted)
    truth = np.asarray(truth)
    if predicted.shape != truth.shape:
        raise AlignmentError(
            f"predicted has length {predicted.shape}, truth {truth.shape}"
        )
    return (predicted == truth).astype(np.int8)


def artificial_rows(
    truth, train_majority_class: int, random_seeds: tuple[int, int, int]
) -> list[tuple[str, np.ndarray]]:
    """The seven reference respondents: optimal, pessimal, majority, minority, rand1-3.

    The majority row answers with the training-set majority class everywhere;
    random rows flip a fair coin per item.
    """
    truth = np.asarray(truth)
    if truth.size == 0:
        raise ValidationError("truth must be non-empty")
    if len(random_seeds) != 3:
        raise ValidationError("exactly 3 random seeds are required")
    majority = (truth == train_majority_class).astype(np.int8)
    rows = [
        ("optimal", np.ones(truth.size, dtype=np.int8)),
        ("pessimal", np.zeros(truth.size, dtype=np.int8)),
        ("majority", majority),
        ("minority", (1 - majority).astype(np.int8)),
    ]
    for name, seed in zip(("rand1", "rand2", "rand3"), random_seeds):
        rng = np.random.default_rng(seed)
        rows.append((name, rng.integers(0, 2, size=truth.size).astype(np.int8)))
    return rows


def assemble_matrix(rows, item_ids=None) -> ResponseMatrix:
    """Stack (id, row) pairs into a ResponseMatrix, preserving insertion order."""
    rows = list(rows)
    if not rows:
        raise ValidationError("no respondent rows; estimation needs at least 2")
    ids = [rid for rid, _ in rows]
    lengths = {len(np.asarray(r)) for _, r in rows}
    if len(lengths) != 1:
        raise ValidationError(f"ragged rows: lengths {sorted(lengths)}")
    n_items = lengths.pop()
    if item_ids is None:
        width = max(4, len(str(n_items)))
        item_ids = tuple(f"i{k:0{width}d}" for k in range(n_items))
    return ResponseMatrix(
        respondent_ids=tuple(ids),
        item_ids=tuple(item_ids),
        cells=np.vstack([np.asarray(r, dtype=np.int8) for _, r in rows]),
    )


def write_matrix(matrix: ResponseMatrix, path) -> None:
    """Write the matrix CSV: header `respondent,<item ids...>`, cells 0/1, LF endings."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["respondent", *matrix.item_ids])
        for rid, row in zip(matrix.respondent_ids, matrix.cells):
            writer.writerow([rid, *(str(int(v)) for v in row)])


def read_matrix(path) -> ResponseMatrix:
    """Parse a matrix CSV, rejecting anything that is not a clean 0/1 table."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValidationError(f"{path}: empty file") from None
        if not header or header[0] != "respondent":
            raise ValidationError(
                f"{path}: first header cell must be 'respondent', got "
                f"{header[0]!r}" if header else f"{path}: missing header"
            )
        item_ids = tuple(header[1:])
        if len(set(item_ids)) != len(item_ids):
            dupes = sorted({i for i in item_ids if item_ids.count(i) > 1})
            raise ValidationError(f"{path}: duplicated item id(s) in header: {dupes}")
        respondent_ids: list[str] = []
        cells: list[list[int]] = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise ValidationError(
                    f"{path}: line {lineno} has {len(row)} cells, expected {len(header)}"
                )
            respondent_ids.append(row[0])
            parsed = []
            for item_id, cell in zip(item_ids, row[1:]):
                if cell not in ("0", "1"):
                    raise ValidationError(
                        f"{path}: line {lineno}, item {item_id!r}: cell must be "
                        f"0 or 1, got {cell!r}"
                    )
                parsed.append(int(cell))
            cells.append(parsed)
    if not respondent_ids:
        raise ValidationError(f"{path}: no respondent rows")
    return ResponseMatrix(
        respondent_ids=tuple(respondent_ids),
        item_ids=item_ids,
        cells=np.array(cells, dtype=np.int8),
    )
