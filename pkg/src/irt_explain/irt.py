"""Three-parameter logistic IRT: item characteristic curves and MML-EM fitting.

The success probability of respondent ability ``theta`` on an item with
discrimination ``a``, difficulty ``b`` and guessing ``c`` is

    P = c + (1 - c) / (1 + exp(-a * (theta - b)))

Item parameters are estimated by marginal maximum likelihood with an EM
loop: the E-step places each respondent's posterior over a fixed ability
grid under a standard-normal population, and the M-step improves each
item's penalized expected log-likelihood by damped Fisher-scoring steps.
Because the M-step only ever accepts improvements, the penalized marginal
log-likelihood is non-decreasing across iterations; the fit enforces this
every iteration.

Negative discrimination is deliberately representable (the prior on ``a``
is a plain normal, not log-scale): items where weak respondents outscore
strong ones are the analysis's main signal.
"""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit, logsumexp

from .errors import AlignmentError, ValidationError
from .matrix import ResponseMatrix

C_MAX_DEFAULT = 0.5
DEGENERATE_NONE = "none"
DEGENERATE_ALL_CORRECT = "all_correct"
DEGENERATE_ALL_WRONG = "all_wrong"

# Guessing stays strictly inside its box so the beta prior remains finite.
_C_REL_MARGIN = 1e-4
_MSTEP_MAX_INNER = 10
# The per-item objective is bimodal in the sign of a; early iterations also
# ascend from sign-reflected starts so items can settle into the right
# orientation. Keeping the best candidate is still a generalized-EM move.
_MSTEP_REFLECT_ITERS = 30
# The EM surrogate can rank a mirrored solution below the current one even
# when the true marginal likelihood prefers it; a periodic sweep re-tests
# each item's mirror against the exact penalized marginal and accepts only
# improvements, so ascent still holds.
_SWEEP_EVERY = 20
_ASCENT_TOL = 1e-9


@dataclass(frozen=True)
class ItemParams:
    """Discrimination, difficulty and guessing for one item."""

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.a) and np.isfinite(self.b) and np.isfinite(self.c)):
            raise ValidationError(f"item parameters must be finite: {self}")
        if not 0.0 <= self.c <= C_MAX_DEFAULT:
            raise ValidationError(
                f"guessing must lie in [0, {C_MAX_DEFAULT}], got {self.c}"
            )


@dataclass(frozen=True)
class AbilityEstimate:
    """EAP ability for one respondent, with a constant-row flag."""

    theta: float
    degenerate: str = DEGENERATE_NONE

    def __post_init__(self) -> None:
        if not np.isfinite(self.theta):
            raise ValidationError("ability must be finite")
        if self.degenerate not in (
            DEGENERATE_NONE,
            DEGENERATE_ALL_CORRECT,
            DEGENERATE_ALL_WRONG,
        ):
            raise ValidationError(f"unknown degeneracy flag {self.degenerate!r}")


@dataclass(frozen=True)
class FitConfig:
    quadrature_points: int = 61
    theta_grid_range: tuple[float, float] = (-4.0, 4.0)
    max_em_iterations: int = 200
    convergence_epsilon: float = 1e-5
    prior_a_mean: float = 1.0
    prior_a_sd: float = 2.0
    prior_b_mean: float = 0.0
    prior_b_sd: float = 2.0
    prior_c_alpha: float = 2.0
    prior_c_beta: float = 8.0
    c_max: float = C_MAX_DEFAULT
    seed: int = 0
    workers: int = 0

    def __post_init__(self) -> None:
        if self.quadrature_points < 11:
            raise ValidationError("at least 11 quadrature points are required")
        if self.convergence_epsilon <= 0:
            raise ValidationError("convergence epsilon must be positive")
        if not 0 < self.c_max <= C_MAX_DEFAULT:
            raise ValidationError(f"c_max must lie in (0, {C_MAX_DEFAULT}]")
        lo, hi = self.theta_grid_range
        if not lo < hi:
            raise ValidationError(f"bad ability grid range {self.theta_grid_range}")

    def grid(self) -> np.ndarray:
        lo, hi = self.theta_grid_range
        return np.linspace(lo, hi, self.quadrature_points)

    def log_weights(self) -> np.ndarray:
        nodes = self.grid()
        logw = -0.5 * nodes**2
        return logw - logsumexp(logw)


@dataclass(frozen=True)
class FitResult:
    items: tuple[ItemParams, ...]
    abilities: tuple[AbilityEstimate, ...]
    log_likelihood: float
    ll_history: tuple[float, ...]
    iterations: int
    converged: bool
    degenerate_items: tuple[str, ...] = field(default=())


def icc(theta: float, item: ItemParams) -> float:
    """Success probability of Eq.-style 3PL at ability ``theta``.

    The midpoint theta == b returns (1 + c) / 2 exactly.
    """
    z = item.a * (theta - item.b)
    if z == 0.0:
        return 0.5 * (1.0 + item.c)
    return float(item.c + (1.0 - item.c) * expit(z))


def icc_gradient(theta: float, item: ItemParams) -> tuple[float, float, float, float]:
    """Partial derivatives of the 3PL probability: (dP/da, dP/db, dP/dc, dP/dtheta)."""
    z = item.a * (theta - item.b)
    sp = expit(z)
    sm = expit(-z)
    slope = (1.0 - item.c) * sp * sm
    d_a = slope * (theta - item.b)
    d_b = -slope * item.a
    d_theta = slope * item.a
    d_c = sm
    return (float(d_a), float(d_b), float(d_c), float(d_theta))


def _prob_grid(nodes: np.ndarray, a, b, c):
    """P and 1-P on the ability grid for every item; shapes (Q, n_items)."""
    z = np.outer(nodes, a) - a * b
    sp = expit(z)
    sm = expit(-z)
    p = c + (1.0 - c) * sp
    q = (1.0 - c) * sm
    return p, q, sp, sm


def log_likelihood(matrix: ResponseMatrix, items, thetas) -> float:
    """Plain response log-likelihood at fixed item parameters and abilities."""
    items = list(items)
    thetas = np.asarray(thetas, dtype=np.float64)
    if len(items) != matrix.n_items:
        raise AlignmentError(
            f"{len(items)} items for a matrix with {matrix.n_items} columns"
        )
    if thetas.shape != (matrix.n_respondents,):
        raise AlignmentError(
            f"{thetas.shape[0]} abilities for {matrix.n_respondents} respondents"
        )
    a = np.array([it.a for it in items])
    b = np.array([it.b for it in items])
    c = np.array([it.c for it in items])
    p, q, _, _ = _prob_grid(thetas, a, b, c)
    u = matrix.cells.astype(np.float64)
    return float(np.sum(u * np.log(p) + (1.0 - u) * np.log(q)))


def _log_prior(a: float, b: float, c: float, cfg: FitConfig) -> float:
    t = c / cfg.c_max
    lp = -0.5 * ((a - cfg.prior_a_mean) / cfg.prior_a_sd) ** 2
    lp += -0.5 * ((b - cfg.prior_b_mean) / cfg.prior_b_sd) ** 2
    lp += (cfg.prior_c_alpha - 1.0) * np.log(t) + (cfg.prior_c_beta - 1.0) * np.log1p(-t)
    return float(lp)


def _prior_grad_curv(a: float, b: float, c: float, cfg: FitConfig):
    t = c / cfg.c_max
    ga = -(a - cfg.prior_a_mean) / cfg.prior_a_sd**2
    gb = -(b - cfg.prior_b_mean) / cfg.prior_b_sd**2
    gc = ((cfg.prior_c_alpha - 1.0) / t - (cfg.prior_c_beta - 1.0) / (1.0 - t)) / cfg.c_max
    ha = -1.0 / cfg.prior_a_sd**2
    hb = -1.0 / cfg.prior_b_sd**2
    hc = -(
        (cfg.prior_c_alpha - 1.0) / t**2 + (cfg.prior_c_beta - 1.0) / (1.0 - t) ** 2
    ) / cfg.c_max**2
    return np.array([ga, gb, gc]), np.array([ha, hb, hc])


def _item_bounds(cfg: FitConfig):
    lo, hi = cfg.theta_grid_range
    c_lo = cfg.c_max * _C_REL_MARGIN
    c_hi = cfg.c_max * (1.0 - _C_REL_MARGIN)
    return np.array([lo, lo, c_lo]), np.array([hi, hi, c_hi])


def _log_prior_vec(params: np.ndarray, cfg: FitConfig) -> np.ndarray:
    a, b, c = params[:, 0], params[:, 1], params[:, 2]
    t = c / cfg.c_max
    lp = -0.5 * ((a - cfg.prior_a_mean) / cfg.prior_a_sd) ** 2
    lp = lp - 0.5 * ((b - cfg.prior_b_mean) / cfg.prior_b_sd) ** 2
    return lp + (cfg.prior_c_alpha - 1.0) * np.log(t) + (cfg.prior_c_beta - 1.0) * np.log1p(-t)


def _batch_objective(params: np.ndarray, nodes, nbar, rbar, cfg: FitConfig) -> np.ndarray:
    """Penalized expected log-likelihood per item; params (I, 3), rbar (Q, I)."""
    a, b, c = params[:, 0], params[:, 1], params[:, 2]
    z = np.outer(nodes, a) - a * b
    sp = expit(z)
    sm = expit(-z)
    p = c + (1.0 - c) * sp
    q = (1.0 - c) * sm
    data = np.sum(rbar * np.log(p) + (nbar[:, None] - rbar) * np.log(q), axis=0)
    return data + _log_prior_vec(params, cfg)


def _batch_grad_info(params: np.ndarray, nodes, nbar, rbar, cfg: FitConfig):
    """Per-item gradient (I, 3) and Fisher + prior curvature (I, 3, 3)."""
    a, b, c = params[:, 0], params[:, 1], params[:, 2]
    t = c / cfg.c_max
    z = np.outer(nodes, a) - a * b
    sp = expit(z)
    sm = expit(-z)
    p = c + (1.0 - c) * sp
    q = (1.0 - c) * sm
    slope = (1.0 - c) * sp * sm
    d_a = slope * (nodes[:, None] - b)
    d_b = -slope * a
    d_c = sm
    pq = p * q
    resid = (rbar - nbar[:, None] * p) / pq
    grad = np.stack(
        [
            np.sum(resid * d_a, axis=0) - (a - cfg.prior_a_mean) / cfg.prior_a_sd**2,
            np.sum(resid * d_b, axis=0) - (b - cfg.prior_b_mean) / cfg.prior_b_sd**2,
            np.sum(resid * d_c, axis=0)
            + ((cfg.prior_c_alpha - 1.0) / t - (cfg.prior_c_beta - 1.0) / (1.0 - t))
            / cfg.c_max,
        ],
        axis=1,
    )
    curv_a = 1.0 / cfg.prior_a_sd**2
    curv_b = 1.0 / cfg.prior_b_sd**2
    curv_c = (
        (cfg.prior_c_alpha - 1.0) / t**2 + (cfg.prior_c_beta - 1.0) / (1.0 - t) ** 2
    ) / cfg.c_max**2
    weight = nbar[:, None] / pq
    n_items = params.shape[0]
    info = np.empty((n_items, 3, 3))
    derivs = (d_a, d_b, d_c)
    for r in range(3):
        for s in range(r, 3):
            info[:, r, s] = np.sum(weight * derivs[r] * derivs[s], axis=0)
            info[:, s, r] = info[:, r, s]
    info[:, 0, 0] += curv_a
    info[:, 1, 1] += curv_b
    info[:, 2, 2] += curv_c
    return grad, info


def _solve_batch(info: np.ndarray, grad: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.solve(info, grad[:, :, None])[:, :, 0]
    except np.linalg.LinAlgError:
        ridged = info + 1e-9 * np.eye(3)
        return np.linalg.solve(ridged, grad[:, :, None])[:, :, 0]


def _batch_ascend(x0: np.ndarray, nodes, nbar, rbar, cfg: FitConfig) -> np.ndarray:
    """Damped Fisher-scoring ascent, all items at once.

    Two phases: improvement-gated steps with per-item backtracking (these
    carry the ascent guarantee), then a short gradient-gated polish whose
    steps are so small they pin each optimum to ~1e-13 without measurably
    moving the objective; the polish is what makes row/column permutations
    reproduce parameters to well under 1e-9.
    """
    lo, hi = _item_bounds(cfg)
    x = x0.copy()
    fx = _batch_objective(x, nodes, nbar, rbar, cfg)
    frozen = np.zeros(x.shape[0], dtype=bool)
    for _ in range(_MSTEP_MAX_INNER):
        grad, info = _batch_grad_info(x, nodes, nbar, rbar, cfg)
        active = ~frozen & (np.abs(grad).max(axis=1) >= 1e-8)
        if not active.any():
            break
        direction = _solve_batch(info, grad)
        step = np.ones(x.shape[0])
        remaining = active.copy()
        for _ in range(25):
            if not remaining.any():
                break
            cand = x.copy()
            cand[remaining] = np.clip(
                x[remaining] + step[remaining, None] * direction[remaining], lo, hi
            )
            f_cand = _batch_objective(cand, nodes, nbar, rbar, cfg)
            accepted = remaining & (f_cand > fx)
            x[accepted] = cand[accepted]
            fx[accepted] = f_cand[accepted]
            remaining &= ~accepted
            step[remaining] *= 0.5
        frozen |= remaining  # no improving step found for these items
    # per-item polish state so an item's step count never depends on its
    # batch neighbours (keeps chunked/threaded runs identical to serial)
    polishing = np.ones(x.shape[0], dtype=bool)
    for _ in range(20):
        if not polishing.any():
            break
        grad, info = _batch_grad_info(x, nodes, nbar, rbar, cfg)
        direction = _solve_batch(info, grad)
        small = np.abs(direction).max(axis=1) <= 1e-6
        polishing &= small
        todo = polishing.copy()
        if not todo.any():
            break
        cand = np.clip(x[todo] + direction[todo], lo, hi)
        settled = np.abs(cand - x[todo]).max(axis=1) < 1e-13
        x[todo] = cand
        done = np.flatnonzero(todo)[settled]
        polishing[done] = False
    return x


def _mstep_batch(
    x0: np.ndarray, nodes, nbar, rbar, cfg: FitConfig, reflect: bool
) -> np.ndarray:
    """Maximize every item's penalized expected log-likelihood.

    Never returns a point below its input objective, which keeps the outer
    EM loop monotone. With ``reflect``, ascent also starts from sign-flipped
    discriminations and the best candidate wins per item.
    """
    best = _batch_ascend(x0, nodes, nbar, rbar, cfg)
    if reflect:
        lo, hi = _item_bounds(cfg)
        f_best = _batch_objective(best, nodes, nbar, rbar, cfg)
        for start in (
            np.column_stack([-x0[:, 0], x0[:, 1], x0[:, 2]]),
            np.column_stack([-x0[:, 0], -x0[:, 1], x0[:, 2]]),
        ):
            cand = _batch_ascend(np.clip(start, lo, hi), nodes, nbar, rbar, cfg)
            f_cand = _batch_objective(cand, nodes, nbar, rbar, cfg)
            win = f_cand > f_best
            best[win] = cand[win]
            f_best[win] = f_cand[win]
    return best


def _item_objective(x: np.ndarray, nodes, nbar, rbar, cfg: FitConfig) -> float:
    return float(_batch_objective(x[None, :], nodes, nbar, rbar[:, None], cfg)[0])


def _ascend_item(x0: np.ndarray, nodes, nbar, rbar, cfg: FitConfig) -> np.ndarray:
    return _batch_ascend(x0[None, :], nodes, nbar, rbar[:, None], cfg)[0]


def _marginal_ll(u: np.ndarray, params: np.ndarray, nodes, logw) -> float:
    p_grid, q_grid, _, _ = _prob_grid(nodes, params[:, 0], params[:, 1], params[:, 2])
    ll = u @ np.log(p_grid).T + (1.0 - u) @ np.log(q_grid).T + logw
    return float(np.sum(logsumexp(ll, axis=1)))


def _orientation_sweep(
    params: np.ndarray, u: np.ndarray, nodes, logw, nbar, rbar, cfg: FitConfig
) -> np.ndarray:
    """Greedy per-item mirror test against the exact penalized marginal."""
    params = params.copy()
    lo, hi = _item_bounds(cfg)
    priors = np.array([_log_prior(*row, cfg) for row in params])
    current = _marginal_ll(u, params, nodes, logw) + priors.sum()
    for i in range(params.shape[0]):
        a, b, c = params[i]
        mirror = np.clip(np.array([-a, -b, c]), lo, hi)
        cand = _ascend_item(mirror, nodes, nbar, rbar[:, i], cfg)
        if np.allclose(cand, params[i]):
            continue
        trial = params.copy()
        trial[i] = cand
        cand_prior = _log_prior(*cand, cfg)
        pen = _marginal_ll(u, trial, nodes, logw) + priors.sum() - priors[i] + cand_prior
        if pen > current + 1e-10:
            params = trial
            priors[i] = cand_prior
            current = pen
    return params


def _estep(u: np.ndarray, log_p: np.ndarray, log_q: np.ndarray, logw: np.ndarray):
    """Posterior grid weights per respondent and the marginal log-likelihood."""
    ll = u @ log_p.T + (1.0 - u) @ log_q.T  # (n_resp, Q)
    ll = ll + logw
    norm = logsumexp(ll, axis=1)
    gamma = np.exp(ll - norm[:, None])
    return gamma, float(np.sum(norm))


def _initial_params(u: np.ndarray, cfg: FitConfig):
    """Moment-style start: slopes from item-total correlations, difficulty from
    the success logit scaled by the starting slope.

    The signed slope start matters: beginning every item at the same positive
    discrimination lets truly-decreasing items settle into mirrored local
    optima that the EM loop cannot escape later.
    """
    n_resp, n_items = u.shape
    wrong = n_resp - u.sum(axis=0)
    q_smoothed = (wrong + 0.5) / (n_resp + 1.0)
    logit_q = np.log(q_smoothed / (1.0 - q_smoothed))

    total = u.sum(axis=1)
    col_centered = u - u.mean(axis=0)
    rest = total[:, None] - u
    rest_centered = rest - rest.mean(axis=0)
    cov = (col_centered * rest_centered).sum(axis=0)
    denom = np.sqrt((col_centered**2).sum(axis=0) * (rest_centered**2).sum(axis=0))
    r = np.divide(cov, denom, out=np.zeros(n_items), where=denom > 0)
    a0 = np.where(denom > 0, np.clip(3.0 * r, -3.0, 3.0), 1.0)
    slope = np.sign(a0) * np.maximum(np.abs(a0), 0.7)
    slope = np.where(slope == 0, 1.0, slope)
    b0 = np.clip(logit_q / (0.7 * slope), -3.0, 3.0)

    rng = np.random.default_rng(cfg.seed)
    jitter = rng.uniform(-1e-3, 1e-3, size=(3, n_items))
    c0 = np.full(n_items, 0.1)
    params = np.vstack([a0 + jitter[0], b0 + jitter[1], c0 + jitter[2]]).T
    lo, hi = _item_bounds(cfg)
    return np.clip(params, lo, hi)


def fit_3pl(matrix: ResponseMatrix, config: FitConfig = FitConfig()) -> FitResult:
    """Fit the 3PL model by marginal maximum likelihood EM.

    Deterministic for a fixed config; ``workers`` > 0 parallelizes the
    per-item M-step without changing the result.
    """
    if matrix.n_respondents < 2 or matrix.n_items < 2:
        raise ValidationError(
            f"estimation needs at least 2 respondents and 2 items, got "
            f"{matrix.n_respondents}x{matrix.n_items}"
        )
    u = matrix.cells.astype(np.float64)
    nodes = config.grid()
    logw = config.log_weights()
    params = _initial_params(u, config)
    history: list[float] = []
    converged = False
    iterations = 0

    def penalized(marginal: float, p: np.ndarray) -> float:
        prior = sum(_log_prior(*row, config) for row in p)
        return marginal + prior

    for it in range(config.max_em_iterations):
        p_grid, q_grid, _, _ = _prob_grid(nodes, params[:, 0], params[:, 1], params[:, 2])
        gamma, marginal = _estep(u, np.log(p_grid), np.log(q_grid), logw)
        history.append(penalized(marginal, params))
        if len(history) > 1 and history[-1] < history[-2] - _ASCENT_TOL:
            raise RuntimeError(
                f"EM ascent violated at iteration {it}: "
                f"{history[-2]!r} -> {history[-1]!r}"
            )
        nbar = gamma.sum(axis=0)
        rbar = gamma.T @ u  # (Q, n_items)
        reflect = it < _MSTEP_REFLECT_ITERS

        if config.workers > 0:
            # chunk the item axis; per-item arithmetic is unaffected by the
            # chunking, so threaded results match the serial ones exactly
            chunks = np.array_split(np.arange(matrix.n_items), config.workers)
            chunks = [c for c in chunks if c.size]
            with ThreadPoolExecutor(max_workers=config.workers) as pool:
                parts = list(
                    pool.map(
                        lambda idx: _mstep_batch(
                            params[idx], nodes, nbar, rbar[:, idx], config, reflect
                        ),
                        chunks,
                    )
                )
            new_params = np.vstack(parts)
        else:
            new_params = _mstep_batch(params, nodes, nbar, rbar, config, reflect)
        if (it + 1) % _SWEEP_EVERY == 0:
            new_params = _orientation_sweep(
                new_params, u, nodes, logw, nbar, rbar, config
            )
        delta = float(np.mean(np.abs(new_params - params)))
        params = new_params
        iterations = it + 1
        if delta < config.convergence_epsilon:
            converged = True
            break

    p_grid, q_grid, _, _ = _prob_grid(nodes, params[:, 0], params[:, 1], params[:, 2])
    gamma, marginal = _estep(u, np.log(p_grid), np.log(q_grid), logw)
    history.append(penalized(marginal, params))
    if history[-1] < history[-2] - _ASCENT_TOL:
        raise RuntimeError("EM ascent violated on the final evaluation")

    items = tuple(ItemParams(a=float(r[0]), b=float(r[1]), c=float(r[2])) for r in params)
    abilities = _abilities_from_posterior(matrix, gamma, nodes)
    col_sums = matrix.cells.sum(axis=0)
    degenerate = tuple(
        item_id
        for item_id, s in zip(matrix.item_ids, col_sums)
        if s == 0 or s == matrix.n_respondents
    )
    return FitResult(
        items=items,
        abilities=abilities,
        log_likelihood=history[-1],
        ll_history=tuple(history),
        iterations=iterations,
        converged=converged,
        degenerate_items=degenerate,
    )


def _abilities_from_posterior(
    matrix: ResponseMatrix, gamma: np.ndarray, nodes: np.ndarray
) -> tuple[AbilityEstimate, ...]:
    eap = gamma @ nodes
    row_sums = matrix.cells.sum(axis=1)
    flags = []
    for s in row_sums:
        if s == 0:
            flags.append(DEGENERATE_ALL_WRONG)
        elif s == matrix.n_items:
            flags.append(DEGENERATE_ALL_CORRECT)
        else:
            flags.append(DEGENERATE_NONE)
    return tuple(
        AbilityEstimate(theta=float(t), degenerate=f) for t, f in zip(eap, flags)
    )


def estimate_abilities(
    matrix: ResponseMatrix, items, config: FitConfig = FitConfig()
) -> tuple[AbilityEstimate, ...]:
    """EAP abilities (posterior mean over the grid) at fixed item parameters."""
    items = list(items)
    if len(items) != matrix.n_items:
        raise AlignmentError(
            f"{len(items)} items for a matrix with {matrix.n_items} columns"
        )
    nodes = config.grid()
    logw = config.log_weights()
    a = np.array([it.a for it in items])
    b = np.array([it.b for it in items])
    c = np.array([it.c for it in items])
    p_grid, q_grid, _, _ = _prob_grid(nodes, a, b, c)
    u = matrix.cells.astype(np.float64)
    gamma, _ = _estep(u, np.log(p_grid), np.log(q_grid), logw)
    return _abilities_from_posterior(matrix, gamma, nodes)


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def write_items(item_ids, items, path) -> None:
    """Item-parameter CSV: `item,discrimination,difficulty,guessing`."""
    item_ids = list(item_ids)
    items = list(items)
    if len(item_ids) != len(items):
        raise AlignmentError(f"{len(item_ids)} ids for {len(items)} items")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["item", "discrimination", "difficulty", "guessing"])
        for item_id, item in zip(item_ids, items):
            writer.writerow([item_id, _fmt(item.a), _fmt(item.b), _fmt(item.c)])


def read_items(path) -> tuple[tuple[str, ...], tuple[ItemParams, ...]]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["item", "discrimination", "difficulty", "guessing"]:
            raise ValidationError(f"{path}: unexpected item CSV header: {header}")
        ids: list[str] = []
        items: list[ItemParams] = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != 4:
                raise ValidationError(f"{path}: line {lineno}: expected 4 cells")
            try:
                values = [float(v) for v in row[1:]]
            except ValueError:
                raise ValidationError(
                    f"{path}: line {lineno}: non-numeric parameter"
                ) from None
            ids.append(row[0])
            items.append(ItemParams(a=values[0], b=values[1], c=values[2]))
    return tuple(ids), tuple(items)


def write_abilities(respondent_ids, abilities, path) -> None:
    """Ability CSV: `respondent,ability,degenerate`."""
    respondent_ids = list(respondent_ids)
    abilities = list(abilities)
    if len(respondent_ids) != len(abilities):
        raise AlignmentError(
            f"{len(respondent_ids)} ids for {len(abilities)} abilities"
        )
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["respondent", "ability", "degenerate"])
        for rid, ability in zip(respondent_ids, abilities):
            writer.writerow([rid, _fmt(ability.theta), ability.degenerate])


def read_abilities(path) -> tuple[tuple[str, ...], tuple[AbilityEstimate, ...]]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["respondent", "ability", "degenerate"]:
            raise ValidationError(f"{path}: unexpected ability CSV header: {header}")
        ids: list[str] = []
        abilities: list[AbilityEstimate] = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != 3:
                raise ValidationError(f"{path}: line {lineno}: expected 3 cells")
            try:
                theta = float(row[1])
            except ValueError:
                raise ValidationError(
                    f"{path}: line {lineno}: non-numeric ability"
                ) from None
            ids.append(row[0])
            abilities.append(AbilityEstimate(theta=theta, degenerate=row[2]))
    return tuple(ids), tuple(abilities)
