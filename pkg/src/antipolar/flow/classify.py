import logging
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..analysis import AnalysisState, analysis_pipeline
from ..config import ToleranceConfig
from ..diameter import check_f03_double_count, d_matches_c
from ..errors import AntipolarError
from ..geometry import PointCloud
from ..polarity import check_opposition, opposition_map
from ..workflow import Workflow
from .base_flow import FlowConfig, FlowOutcome, FlowState, run_flow

logger = logging.getLogger(__name__)

# open interval arccos(-1/4) < d < arccos(-1/3), compared on cos d
COS_RANGE = (-1.0 / 3.0, -1.0 / 4.0)


class TableRow(BaseModel):
    """
    One sweep trial. Combinatorial fields stay None for runs that did not converge or
    could not be classified; `error` then says why.
    """

    model_config = ConfigDict(frozen=True)

    trial: int
    n: int
    seed: Optional[int] = None
    outcome: Optional[FlowOutcome] = None
    converged: bool = False
    collapsed: bool = False
    d: Optional[float] = None
    in_range: Optional[bool] = None
    is_asp: Optional[bool] = None
    c: Optional[float] = None
    residual: Optional[float] = None
    f: Optional[Tuple[int, int, int, int]] = None
    f03: Optional[int] = None
    eG: Optional[int] = None
    bound: Optional[int] = None
    equality: Optional[bool] = None
    g2: Optional[int] = None
    theorem1_ok: Optional[bool] = None
    opposition_ok: Optional[bool] = None
    double_count_ok: Optional[bool] = None
    d_consistent: Optional[bool] = None
    error: Optional[str] = None

    @property
    def certified(self) -> bool:
        return bool(self.is_asp) and self.error is None


class SweepSummary(BaseModel):
    trials: int = 0
    converged: int = 0
    collapsed: int = 0
    failed: int = 0
    certified: int = 0
    in_range: int = 0
    equality: int = 0
    theorem1_violations: int = 0
    non_equality_in_range: int = 0


def in_range(d: float, tol: ToleranceConfig) -> bool:
    lo, hi = COS_RANGE
    cos_d = np.cos(d)
    return bool(lo + tol.eps_polar < cos_d < hi - tol.eps_polar)


def certificate_checks(state: AnalysisState) -> Dict[str, bool]:
    """Cross-checks a certified state: opposite facets, f03 = 2 e(G) and d = arccos(-1/c)."""
    report, cloud = state.polarity, state.cloud
    opposite = opposition_map(report)
    return {
        "opposition_ok": sorted(opposite) == list(range(cloud.n))
        and check_opposition(report, cloud, state.facets, state.tol),
        "double_count_ok": check_f03_double_count(state.graph, state.stats, report),
        "d_consistent": d_matches_c(state.graph, report, state.tol),
    }


def classify(points: PointCloud, tol: ToleranceConfig, trial: int = 0) -> TableRow:
    """
    Runs the analysis pipeline on a converged configuration and flattens it into a row.
    Hull, lattice and polarity errors become a row with `error` set.
    """
    envelope = analysis_pipeline(with_dual=False).build(AnalysisState(cloud=points, tol=tol))
    if envelope["status"] != "success":
        logger.info(f"trial {trial} (n={points.n}) unclassifiable: {envelope['message']}")
        return TableRow(trial=trial, n=points.n, converged=True, error=envelope["message"])

    state: AnalysisState = envelope["result"]
    report = state.polarity
    verify = state.verify
    f0 = state.stats.f[0]
    is_asp = report is not None and report.is_asp

    checks: Dict[str, bool] = {}
    error = None
    if is_asp:
        checks = certificate_checks(state)
        failed = [name for name, ok in checks.items() if not ok]
        if failed:
            error = f"certificate inconsistent: {', '.join(failed)}"
            logger.warning(f"trial {trial} (n={points.n}) {error}")

    return TableRow(
        trial=trial,
        n=points.n,
        converged=True,
        d=state.graph.spherical_d,
        in_range=in_range(state.graph.spherical_d, tol),
        is_asp=is_asp,
        c=None if report is None else report.c,
        residual=None if report is None else report.residual,
        f=state.stats.f,
        f03=state.stats.f03,
        eG=state.graph.e,
        bound=3 * f0 - 5,
        equality=verify.equality_case,
        g2=verify.g2_flag,
        theorem1_ok=verify.theorem1_ok,
        error=error,
        **checks,
    )


def trial_seed(master_seed: int, n: int, trial: int) -> int:
    """64-bit seed of trial t at size n, hashed from (master_seed, n, t) independently of any other trial."""
    return int(np.random.SeedSequence([master_seed, n, trial]).generate_state(1, dtype=np.uint64)[0])


def run_trial(
    n: int,
    trial: int,
    master_seed: int,
    overrides: Optional[Dict] = None,
    tol: ToleranceConfig = None,
) -> TableRow:
    tol = tol or ToleranceConfig.flow()
    seed = trial_seed(master_seed, n, trial)
    config = FlowConfig(n=n, seed=seed, **(overrides or {}))

    try:
        state, outcome = run_flow(config, tol=tol)
    except AntipolarError as e:
        logger.warning(f"trial {trial} (n={n}) flow failed: {e}")
        return TableRow(trial=trial, n=n, seed=seed, error=f"{type(e).__name__}: {e}")

    row = _row_for(state, outcome, tol, trial)
    row = row.model_copy(update={"seed": seed, "outcome": outcome})
    logger.info(
        f"trial {trial} n={n}: {outcome.value}"
        + ("" if row.is_asp is None else f", is_asp={row.is_asp} eG={row.eG} bound={row.bound}")
    )
    return row


def _row_for(state: FlowState, outcome: FlowOutcome, tol: ToleranceConfig, trial: int) -> TableRow:
    n = state.points.n
    if outcome is FlowOutcome.CONVERGED:
        return classify(state.points, tol, trial=trial)
    return TableRow(
        trial=trial,
        n=n,
        collapsed=outcome is FlowOutcome.COLLAPSED,
        d=state.D,
    )


def sweep(
    n_list: Iterable[int],
    trials_per_n: int,
    master_seed: int,
    overrides: Optional[Dict] = None,
    workers: Optional[int] = None,
    tol: ToleranceConfig = None,
) -> List[TableRow]:
    """
    Runs trials_per_n independent flows for every n and classifies each. Trials run
    concurrently on a Workflow; rows come back ordered by (n, trial).
    """
    if trials_per_n < 1:
        raise ValueError("trials_per_n must be at least 1")
    n_values = sorted(set(n_list))
    if not n_values:
        raise ValueError("n_list is empty")
    # schedule errors surface before any job starts
    for n in n_values:
        FlowConfig(n=n, **(overrides or {}))

    jobs = [
        ((n, t), run_trial, (n, t, master_seed, overrides, tol))
        for n in n_values
        for t in range(trials_per_n)
    ]
    results = Workflow.init("sweep", max_workers=workers).jobs(jobs).run()
    rows = [results[key] for key in sorted(results)]

    for row in rows:
        if row.certified and row.in_range and not row.equality:
            logger.warning(
                f"trial {row.trial} n={row.n}: certified in-range configuration with "
                f"eG={row.eG} > bound={row.bound} (not an equality case)"
            )
        if row.certified and row.theorem1_ok is False:
            logger.error(f"trial {row.trial} n={row.n}: eG={row.eG} below bound={row.bound}")
    return rows


def summarize(rows: List[TableRow]) -> SweepSummary:
    certified = [r for r in rows if r.certified]
    return SweepSummary(
        trials=len(rows),
        converged=sum(r.converged for r in rows),
        collapsed=sum(r.collapsed for r in rows),
        failed=sum(r.error is not None for r in rows),
        certified=len(certified),
        in_range=sum(bool(r.in_range) for r in certified),
        equality=sum(bool(r.equality) for r in certified),
        theorem1_violations=sum(r.theorem1_ok is False for r in certified),
        non_equality_in_range=sum(bool(r.in_range) and not r.equality for r in certified),
    )
