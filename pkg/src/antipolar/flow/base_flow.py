import logging
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.optimize import minimize, nnls
from scipy.spatial.distance import pdist

from ..config import ToleranceConfig
from ..errors import DegeneratePoints, NotFullDimensional, NumericalDegeneracy
from ..geometry import PointCloud, hull_facets, origin_margin, unit_project_rows

logger = logging.getLogger(__name__)

SIN_FLOOR = 1e-12
WEIGHT_FLOOR = 1e-12
# pairs of a polished configuration this close (in angle) to its diameter are maximal
CONTACT_EPS = 1e-6
# every vertex of an anti-self-polar 4-polytope has a whole facet of diameter partners
MIN_CONTACTS = 4


class FlowOutcome(str, Enum):
    CONVERGED = "converged"
    COLLAPSED = "collapsed"
    MAX_ITERS = "max_iters"


class FlowConfig(BaseModel):
    """
    Every schedule decision of the diameter flow.

    Each iteration tries the step step / beta along the negative gradient and halves it
    (at most line_search times) until the smoothed diameter does not increase. beta starts
    at beta0 and is multiplied by beta_growth every beta_window iterations until it reaches
    beta_max. Once the pairs within active_eps of the diameter stay the same for
    stable_window iterations at beta_max, the configuration is polished and its
    stationarity measured against grad_tol.

    A random start that collapses, fails the polish or ends with a vertex that has fewer
    than four diameter partners is replaced by a fresh draw, at most `restarts` times.
    max_iters bounds the iterations of a single start.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=5)
    seed: int = Field(default=0, ge=0, lt=2**64)
    max_iters: int = Field(default=5000, gt=0)
    step: float = Field(default=0.5, gt=0)
    beta0: float = Field(default=50.0, ge=1)
    beta_max: float = Field(default=12800.0, ge=1)
    beta_growth: float = Field(default=2.0, gt=1)
    beta_window: int = Field(default=200, gt=0)
    grad_tol: float = Field(default=1e-3, gt=0)
    active_eps: float = Field(default=1e-3, gt=0)
    stable_window: int = Field(default=200, gt=0)
    line_search: int = Field(default=30, ge=0)
    collapse_margin: float = Field(default=1e-3, gt=0)
    check_every: int = Field(default=100, gt=0)
    init_attempts: int = Field(default=1000, gt=0)
    init_margin: float = Field(default=0.05, ge=0)
    restarts: int = Field(default=4, ge=0)
    polish: bool = True
    polish_maxiter: int = Field(default=500, gt=0)

    @model_validator(mode="after")
    def _beta_order(self):
        if self.beta_max < self.beta0:
            raise ValueError("beta_max must be at least beta0")
        return self


class FlowState(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    points: PointCloud
    iter: int
    D: float
    grad_norm: float
    beta: float
    polished: bool = False
    starts: int = 1
    # vertices with fewer than MIN_CONTACTS diameter partners
    loose: List[int] = Field(default_factory=list)
    # (D, beta, smoothed diameter) per iteration, over every start
    history: List[Tuple[float, float, float]] = Field(default_factory=list, exclude=True, repr=False)
    # index into history where each start begins
    start_offsets: List[int] = Field(default_factory=list, exclude=True, repr=False)


def pair_angles(points: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(i, j, theta_ij) over all pairs i < j, theta = arccos(<x_i, x_j>)."""
    i, j = np.triu_indices(len(points), k=1)
    inner = np.clip(np.einsum("ij,ij->i", points[i], points[j]), -1.0, 1.0)
    return i, j, np.arccos(inner)


def _log_sum_exp(theta: np.ndarray, beta: float) -> Tuple[float, np.ndarray, float]:
    top = theta.max()
    weights = np.exp(beta * (theta - top))
    total = weights.sum()
    return float(top + np.log(total) / beta), weights, total


def smoothed_value(points: np.ndarray, beta: float) -> float:
    """The smoothed diameter alone, for line searches."""
    _, _, theta = pair_angles(np.asarray(points, dtype=float))
    return _log_sum_exp(theta, beta)[0]


def smoothed_diameter(points: np.ndarray, beta: float) -> Tuple[float, np.ndarray]:
    """
    Log-sum-exp smoothing of the spherical diameter and its tangent gradient.

    value = (1/beta) log sum_{i<j} exp(beta theta_ij), which lies in
    [max theta, max theta + log(C(n, 2)) / beta] and does not increase with beta. The
    gradient of theta_ij at x_i is -(x_j - <x_i, x_j> x_i) / sin theta_ij; contributions
    are combined with the softmax weights and projected onto the tangent space at each point.
    """
    points = np.asarray(points, dtype=float)
    i, j = np.triu_indices(len(points), k=1)
    inner = np.clip(np.einsum("ij,ij->i", points[i], points[j]), -1.0, 1.0)
    theta = np.arccos(inner)

    value, weights, total = _log_sum_exp(theta, beta)
    weights /= total

    sines = np.sqrt(np.maximum(1.0 - inner**2, 0.0))
    active = weights > WEIGHT_FLOOR
    if np.any(sines[active] < SIN_FLOOR):
        raise NumericalDegeneracy("an active pair is coincident or antipodal (sin theta underflow)")

    coef = np.zeros_like(weights)
    coef[active] = weights[active] / sines[active]

    n = len(points)
    c = np.zeros((n, n))
    c[i, j] = coef
    c[j, i] = coef
    g = np.zeros((n, n))
    g[i, j] = inner
    g[j, i] = inner

    grad = -(c @ points) + (c * g).sum(axis=1)[:, None] * points
    grad -= np.einsum("ij,ij->i", grad, points)[:, None] * points
    return value, grad


def contact_pairs(points: np.ndarray, eps: float = CONTACT_EPS) -> Tuple[np.ndarray, np.ndarray]:
    """Pairs whose angle is within eps of the diameter."""
    i, j, theta = pair_angles(points)
    keep = theta >= theta.max() - eps
    return i[keep], j[keep]


def contact_degrees(points: np.ndarray, eps: float = CONTACT_EPS) -> np.ndarray:
    i, j = contact_pairs(points, eps)
    return np.bincount(np.concatenate([i, j]), minlength=len(points))


def subgradient_norm(points: np.ndarray, eps: float = CONTACT_EPS) -> float:
    """
    Stationarity of the (non-smooth) diameter: the distance from zero to the convex hull
    of the tangent gradients of the maximal pairs. It vanishes at a local minimum.

    The convex weights come from a non-negative least-squares solve of the gradient
    system augmented by a heavily weighted row asking them to sum to one.
    """
    points = np.asarray(points, dtype=float)
    n = len(points)
    i, j = contact_pairs(points, eps)
    columns = np.zeros((len(i), n, 4))
    for col, (a, b) in enumerate(zip(i, j)):
        inner = float(points[a] @ points[b])
        sine = np.sqrt(max(1.0 - inner**2, 0.0))
        if sine < SIN_FLOOR:
            raise NumericalDegeneracy("a maximal pair is coincident or antipodal")
        columns[col, a] = -(points[b] - inner * points[a]) / sine
        columns[col, b] = -(points[a] - inner * points[b]) / sine
    gradients = columns.reshape(len(i), 4 * n).T

    rho = 1e3
    system = np.vstack([gradients, np.full((1, len(i)), rho)])
    target = np.zeros(4 * n + 1)
    target[-1] = rho
    weights, _ = nnls(system, target)
    return float(np.linalg.norm(gradients @ weights) / weights.sum())


def interior_margin(points: np.ndarray, tol: ToleranceConfig) -> float:
    """Smallest facet support of the hull, or -inf when no full-dimensional hull exists."""
    try:
        return origin_margin(hull_facets(points, tol))
    except (NotFullDimensional, DegeneratePoints):
        return -np.inf


def random_start(rng: np.random.Generator, config: FlowConfig, tol: ToleranceConfig) -> np.ndarray:
    """Uniform points on S^3, redrawn until the origin sits at least init_margin inside their hull."""
    floor = max(config.init_margin, tol.eps_geom)
    for attempt in range(config.init_attempts):
        points = unit_project_rows(rng.standard_normal((config.n, 4)))
        if interior_margin(points, tol) > floor:
            if attempt:
                logger.debug(f"initial configuration accepted after {attempt + 1} draws")
            return points
    logger.warning(f"no start with origin margin above {floor:g} in {config.init_attempts} draws; flow will collapse")
    return points


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based Philox stream keyed by the seed."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def _collapsed(points: np.ndarray, config: FlowConfig, tol: ToleranceConfig) -> bool:
    return pdist(points).min() < config.collapse_margin or interior_margin(points, tol) <= tol.eps_geom


def descend(
    points: np.ndarray, grad: np.ndarray, value: float, beta: float, config: FlowConfig
) -> Tuple[np.ndarray, float]:
    """
    One projected gradient step with backtracking. Returns the first trial point whose
    smoothed diameter is at most `value`, or the unchanged points when every halving fails.
    """
    t = config.step / beta
    for _ in range(config.line_search + 1):
        trial = unit_project_rows(points - t * grad)
        trial_value = smoothed_value(trial, beta)
        if trial_value <= value:
            return trial, trial_value
        t /= 2.0
    return points, value


def polish(points: np.ndarray, config: FlowConfig) -> Tuple[np.ndarray, bool]:
    """
    Active-set refinement of an annealed configuration: maximize u subject to
    <x_i, x_j> >= u for every pair and |x_i| = 1 (SLSQP). Maximizing the smallest inner
    product is minimizing the diameter, so the solve equalizes the active pairs to solver
    precision. SLSQP often stops on a line-search warning at the optimum itself, so the
    result is judged by the diameter it reaches, and stationarity is measured separately.
    """
    n = len(points)
    i, j = np.triu_indices(n, k=1)
    n_pairs = len(i)
    start = np.append(points.ravel(), np.min(np.einsum("ij,ij->i", points[i], points[j])))

    def objective(z):
        return -z[-1]

    def objective_jac(z):
        jac = np.zeros_like(z)
        jac[-1] = -1.0
        return jac

    def pair_margin(z):
        x = z[:-1].reshape(n, 4)
        return np.einsum("ij,ij->i", x[i], x[j]) - z[-1]

    def pair_margin_jac(z):
        x = z[:-1].reshape(n, 4)
        jac = np.zeros((n_pairs, n, 4))
        rows = np.arange(n_pairs)
        jac[rows, i] = x[j]
        jac[rows, j] = x[i]
        return np.hstack([jac.reshape(n_pairs, 4 * n), -np.ones((n_pairs, 1))])

    def unit_norm(z):
        x = z[:-1].reshape(n, 4)
        return np.einsum("ij,ij->i", x, x) - 1.0

    def unit_norm_jac(z):
        x = z[:-1].reshape(n, 4)
        jac = np.zeros((n, n, 4))
        jac[np.arange(n), np.arange(n)] = 2.0 * x
        return np.hstack([jac.reshape(n, 4 * n), np.zeros((n, 1))])

    result = minimize(
        objective,
        start,
        jac=objective_jac,
        method="SLSQP",
        constraints=[
            {"type": "ineq", "fun": pair_margin, "jac": pair_margin_jac},
            {"type": "eq", "fun": unit_norm, "jac": unit_norm_jac},
        ],
        options={"ftol": 1e-12, "maxiter": config.polish_maxiter},
    )
    if not np.all(np.isfinite(result.x)):
        logger.info(f"polish rejected: {result.message} (non-finite iterate)")
        return points, False
    polished = unit_project_rows(result.x[:-1].reshape(n, 4))

    _, _, before = pair_angles(points)
    _, _, after = pair_angles(polished)
    if after.max() > before.max() + 1e-9:
        logger.info(f"polish rejected: {result.message} (D {before.max():.12g} -> {after.max():.12g})")
        return points, False
    logger.debug(f"polish: {result.message} after {result.nit} iterations, D {before.max():.12g} -> {after.max():.12g}")
    return polished, True


def _flow_from(
    points: np.ndarray, config: FlowConfig, tol: ToleranceConfig, history: List[Tuple[float, float, float]]
) -> Tuple[FlowState, FlowOutcome]:
    """One start: anneal, polish, then measure stationarity and contacts."""
    beta = config.beta0
    active_prev = None
    stable = 0
    grad_norm = np.inf
    outcome = FlowOutcome.MAX_ITERS
    it = 0
    stalled = False

    if _collapsed(points, config, tol):
        outcome = FlowOutcome.COLLAPSED

    while outcome is FlowOutcome.MAX_ITERS and it < config.max_iters:
        try:
            value, grad = smoothed_diameter(points, beta)
        except NumericalDegeneracy as e:
            logger.info(f"seed {config.seed}: {e}")
            outcome = FlowOutcome.COLLAPSED
            break
        grad_norm = float(np.linalg.norm(grad))
        _, _, theta = pair_angles(points)

        if beta >= config.beta_max:
            active = frozenset(np.flatnonzero(theta >= theta.max() - config.active_eps).tolist())
            stable = stable + 1 if active == active_prev else 0
            active_prev = active
            if stable >= config.stable_window:
                stalled = True
                break

        history.append((float(theta.max()), beta, value))
        points, _ = descend(points, grad, value, beta, config)
        it += 1

        if it % config.beta_window == 0 and beta < config.beta_max:
            beta = min(beta * config.beta_growth, config.beta_max)
            logger.debug(f"seed {config.seed}: iteration {it}, beta -> {beta:g}")

        if it % config.check_every == 0 and _collapsed(points, config, tol):
            outcome = FlowOutcome.COLLAPSED

    polished = False
    eps = config.active_eps
    if stalled:
        if config.polish:
            points, polished = polish(points, config)
            eps = CONTACT_EPS
        try:
            grad_norm = subgradient_norm(points, eps)
        except NumericalDegeneracy as e:
            logger.info(f"seed {config.seed}: {e}")
            grad_norm = np.inf
        if _collapsed(points, config, tol):
            outcome = FlowOutcome.COLLAPSED
        elif (polished or not config.polish) and grad_norm < config.grad_tol:
            outcome = FlowOutcome.CONVERGED
        else:
            logger.info(f"seed {config.seed}: stalled at stationarity {grad_norm:.3e} (polished={polished})")

    loose = []
    if outcome is FlowOutcome.CONVERGED:
        loose = np.flatnonzero(contact_degrees(points, eps) < MIN_CONTACTS).tolist()

    _, _, theta = pair_angles(points)
    state = FlowState(
        points=PointCloud(points=points, eps_unit=tol.eps_unit),
        iter=it,
        D=float(theta.max()),
        grad_norm=grad_norm,
        beta=beta,
        polished=polished,
        loose=loose,
    )
    return state, outcome


def run_flow(
    config: FlowConfig,
    initial: Optional[PointCloud] = None,
    tol: ToleranceConfig = None,
) -> Tuple[FlowState, FlowOutcome]:
    """
    Downward gradient flow of the smoothed spherical diameter on (S^3)^n.

    x <- unit_project(x - t grad) with t = step / beta backtracked until the smoothed
    diameter does not increase, and beta annealed up to beta_max. When the active pair set
    stalls at beta_max the configuration is polished; Converged needs the polished
    stationarity measure below grad_tol. Collapsed is declared when the origin leaves the
    hull interior or two points come closer than collapse_margin.

    Random starts are retried from the same Philox stream while they collapse, stall
    without converging, or converge with a vertex that has fewer than four diameter
    partners. The first clean convergence wins; otherwise the last converged start, or
    failing that the last start, is returned. An explicit `initial` is flowed once.
    """
    tol = tol or ToleranceConfig.flow()
    rng = make_rng(config.seed)
    n_starts = 1 if initial is not None else config.restarts + 1

    history: List[Tuple[float, float, float]] = []
    offsets: List[int] = []
    total = 0
    result = fallback = None
    for start in range(n_starts):
        points = initial.points.copy() if initial is not None else random_start(rng, config, tol)
        offsets.append(len(history))
        state, outcome = _flow_from(points, config, tol, history)
        total += state.iter
        result = (state, outcome)
        if outcome is FlowOutcome.CONVERGED and not state.loose:
            break
        if outcome is FlowOutcome.CONVERGED:
            fallback = result
            logger.info(f"seed {config.seed}: start {start + 1} converged with loose vertices {state.loose}")
        else:
            logger.info(f"seed {config.seed}: start {start + 1} {outcome.value} after {state.iter} iterations")
    else:
        if fallback is not None:
            result = fallback

    state, outcome = result
    starts = len(offsets)
    state = state.model_copy(update={"iter": total, "starts": starts, "history": history, "start_offsets": offsets})
    logger.info(
        f"flow n={config.n} seed={config.seed}: {outcome.value} after {total} iterations "
        f"({starts} starts), D={state.D:.12g}"
    )
    return state, outcome
