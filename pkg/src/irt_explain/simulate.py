"""Synthetic response generation for validating the estimator.

Draws true item parameters and abilities, samples a response matrix cell by
cell from the 3PL success probability, and scores how well a fit recovers
the truth. Per-respondent child seeds keep generation deterministic even if
rows were produced in parallel.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .errors import AlignmentError, ValidationError
from .irt import C_MAX_DEFAULT, FitResult, ItemParams
from .matrix import ResponseMatrix

_PARAM_BOX = 4.0


@dataclass(frozen=True)
class SimSpec:
    n_respondents: int = 150
    n_items: int = 100
    a_range: tuple[float, float] = (-2.0, 2.5)
    abs_a_min: float = 0.3
    b_range: tuple[float, float] = (-2.5, 2.5)
    c_range: tuple[float, float] = (0.0, 0.3)
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_respondents < 1 or self.n_items < 1:
            raise ValidationError("simulation needs at least one respondent and item")
        for lo, hi, label in (
            (*self.a_range, "a"),
            (*self.b_range, "b"),
        ):
            if not (-_PARAM_BOX <= lo <= hi <= _PARAM_BOX):
                raise ValidationError(
                    f"{label} range {lo}..{hi} must stay within +-{_PARAM_BOX}"
                )
        c_lo, c_hi = self.c_range
        if not (0.0 <= c_lo <= c_hi <= C_MAX_DEFAULT):
            raise ValidationError(
                f"c range {c_lo}..{c_hi} must stay within [0, {C_MAX_DEFAULT}]"
            )
        if self.abs_a_min < 0:
            raise ValidationError("abs_a_min must be non-negative")


def simulate(spec: SimSpec) -> tuple[tuple[ItemParams, ...], np.ndarray, ResponseMatrix]:
    """Draw (true items, true thetas, response matrix) for the given spec."""
    root = np.random.SeedSequence(spec.seed)
    item_seq, theta_seq, cell_seq = root.spawn(3)
    item_rng = np.random.default_rng(item_seq)

    a = item_rng.uniform(*spec.a_range, size=spec.n_items)
    if spec.abs_a_min > 0:
        for _ in range(1000):
            weak = np.abs(a) < spec.abs_a_min
            if not weak.any():
                break
            a[weak] = item_rng.uniform(*spec.a_range, size=int(weak.sum()))
        else:
            raise ValidationError(
                f"could not draw discriminations with |a| >= {spec.abs_a_min} "
                f"from range {spec.a_range}"
            )
    b = item_rng.uniform(*spec.b_range, size=spec.n_items)
    c = item_rng.uniform(*spec.c_range, size=spec.n_items)
    items = tuple(ItemParams(a=float(ai), b=float(bi), c=float(ci)) for ai, bi, ci in zip(a, b, c))

    theta_rng = np.random.default_rng(theta_seq)
    thetas = theta_rng.standard_normal(spec.n_respondents)

    cells = np.empty((spec.n_respondents, spec.n_items), dtype=np.int8)
    for j, child in enumerate(cell_seq.spawn(spec.n_respondents)):
        rng = np.random.default_rng(child)
        p = c + (1.0 - c) * expit(a * (thetas[j] - b))
        cells[j] = (rng.random(spec.n_items) < p).astype(np.int8)

    width = max(4, len(str(spec.n_items)))
    matrix = ResponseMatrix(
        respondent_ids=tuple(f"sim{j:0{width}d}" for j in range(spec.n_respondents)),
        item_ids=tuple(f"i{k:0{width}d}" for k in range(spec.n_items)),
        cells=cells,
    )
    return items, thetas, matrix


def _pearson(x: np.ndarray, y: np.ndarray) -> float:
    if x.size < 2 or np.ptp(x) == 0 or np.ptp(y) == 0:
        return 0.0
    return float(np.corrcoef(x, y)[0, 1])


@dataclass(frozen=True)
class RecoveryReport:
    corr_a: float
    corr_b_informative: float
    corr_theta: float
    sign_agreement_a: float
    rmse_c: float
    b_informative_floor: float
    sign_floor: float

    def as_dict(self) -> dict:
        return {
            "corr_a": self.corr_a,
            "corr_b_informative": self.corr_b_informative,
            "corr_theta": self.corr_theta,
            "sign_agreement_a": self.sign_agreement_a,
            "rmse_c": self.rmse_c,
            "b_informative_floor": self.b_informative_floor,
            "sign_floor": self.sign_floor,
        }


def score_recovery(
    true_items,
    true_thetas,
    fitted: FitResult,
    b_informative_floor: float = 0.5,
    sign_floor: float = 0.75,
) -> RecoveryReport:
    """Correlations, sign agreement and RMSE between truth and a fit.

    ``corr_b_informative`` restricts the difficulty correlation to items
    whose true |a| is at least ``b_informative_floor``; difficulty is barely
    identified when an item hardly discriminates.
    """
    true_items = list(true_items)
    true_thetas = np.asarray(true_thetas, dtype=np.float64)
    if len(true_items) != len(fitted.items):
        raise AlignmentError(
            f"{len(true_items)} true items vs {len(fitted.items)} fitted"
        )
    if true_thetas.shape[0] != len(fitted.abilities):
        raise AlignmentError(
            f"{true_thetas.shape[0]} true thetas vs {len(fitted.abilities)} fitted"
        )
    ta = np.array([it.a for it in true_items])
    tb = np.array([it.b for it in true_items])
    tc = np.array([it.c for it in true_items])
    fa = np.array([it.a for it in fitted.items])
    fb = np.array([it.b for it in fitted.items])
    fc = np.array([it.c for it in fitted.items])
    ftheta = np.array([ab.theta for ab in fitted.abilities])

    informative = np.abs(ta) >= b_informative_floor
    strong = np.abs(ta) >= sign_floor
    sign_agreement = (
        float(np.mean(np.sign(ta[strong]) == np.sign(fa[strong]))) if strong.any() else 1.0
    )
    return RecoveryReport(
        corr_a=_pearson(ta, fa),
        corr_b_informative=_pearson(tb[informative], fb[informative]),
        corr_theta=_pearson(true_thetas, ftheta),
        sign_agreement_a=sign_agreement,
        rmse_c=float(np.sqrt(np.mean((tc - fc) ** 2))),
        b_informative_floor=b_informative_floor,
        sign_floor=sign_floor,
    )


def decile_calibration(true_items, true_thetas, matrix: ResponseMatrix) -> dict:
    """Compare cell means against true probabilities within probability deciles.

    Returns per-decile observed/expected means and a bound of three binomial
    standard deviations; ``within_bounds`` should hold for any honest draw.
    """
    a = np.array([it.a for it in true_items])
    b = np.array([it.b for it in true_items])
    c = np.array([it.c for it in true_items])
    thetas = np.asarray(true_thetas, dtype=np.float64)
    p = c + (1.0 - c) * expit(np.outer(thetas, a) - a * b)
    u = matrix.cells.astype(np.float64)
    edges = np.quantile(p, np.linspace(0.0, 1.0, 11))
    deciles = []
    ok = True
    for lo, hi in zip(edges[:-1], edges[1:]):
        mask = (p >= lo) & (p <= hi if hi == edges[-1] else p < hi)
        m = int(mask.sum())
        if m == 0:
            continue
        expected = float(p[mask].mean())
        observed = float(u[mask].mean())
        sigma = float(np.sqrt(np.sum(p[mask] * (1.0 - p[mask]))) / m)
        within = abs(observed - expected) <= 3.0 * sigma
        ok &= within
        deciles.append(
            {
                "count": m,
                "expected_mean": expected,
                "observed_mean": observed,
                "bound_3sigma": 3.0 * sigma,
                "within": within,
            }
        )
    return {"deciles": deciles, "within_bounds": bool(ok)}


def write_theta(respondent_ids, thetas, path) -> None:
    """True-ability companion CSV: `respondent,theta`."""
    respondent_ids = list(respondent_ids)
    thetas = np.asarray(thetas, dtype=np.float64)
    if len(respondent_ids) != thetas.shape[0]:
        raise AlignmentError(f"{len(respondent_ids)} ids for {thetas.shape[0]} thetas")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["respondent", "theta"])
        for rid, theta in zip(respondent_ids, thetas):
            writer.writerow([rid, format(float(theta), ".17g")])


def read_theta(path) -> tuple[tuple[str, ...], np.ndarray]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["respondent", "theta"]:
            raise ValidationError(f"{path}: unexpected theta CSV header: {header}")
        ids: list[str] = []
        thetas: list[float] = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != 2:
                raise ValidationError(f"{path}: line {lineno}: expected 2 cells")
            try:
                thetas.append(float(row[1]))
            except ValueError:
                raise ValidationError(
                    f"{path}: line {lineno}: non-numeric theta"
                ) from None
            ids.append(row[0])
    return tuple(ids), np.array(thetas, dtype=np.float64)
