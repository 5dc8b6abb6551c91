"""
The analysis pipeline: hull -> lattice -> polarity -> diameter graph -> dual -> verification.

Each stage takes and returns an AnalysisState, so the chain runs through Pipeline and
every stage is timed the same way.
"""
import logging
from typing import List, Optional

from pydantic import BaseModel, ConfigDict

from .config import ToleranceConfig
from .diameter import DiameterGraph, diameter_graph
from .errors import LatticeInconsistency, NotFullDimensional, OriginNotInterior
from .geometry import Facet, PointCloud, convex_hull, merge_coplanar
from .lattice import (
    FaceLattice,
    FlagStats,
    PolygonCensus,
    build_lattice,
    euler_residual,
    flag_stats,
    polygon_census,
)
from .pipeline import Pipeline
from .polarity import PolarityReport, certify_anti_self_polar, dual_f_vector_reversed, dual_lattice
from .verify import VerifyReport, verify_polytope

logger = logging.getLogger(__name__)


class AnalysisState(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    cloud: PointCloud
    tol: ToleranceConfig

    facets: Optional[List[Facet]] = None
    lattice: Optional[FaceLattice] = None
    stats: Optional[FlagStats] = None
    census: Optional[PolygonCensus] = None
    euler: Optional[int] = None
    polarity: Optional[PolarityReport] = None
    polarity_error: Optional[str] = None
    graph: Optional[DiameterGraph] = None
    dual_stats: Optional[FlagStats] = None
    dual_reversed: Optional[bool] = None
    dual_error: Optional[str] = None
    verify: Optional[VerifyReport] = None


def hull_stage(state: AnalysisState) -> AnalysisState:
    facets = merge_coplanar(convex_hull(state.cloud, state.tol), state.tol)
    return state.model_copy(update={"facets": facets})


def lattice_stage(state: AnalysisState) -> AnalysisState:
    lattice = build_lattice(state.facets, state.cloud, state.tol)
    return state.model_copy(
        update={
            "lattice": lattice,
            "stats": flag_stats(lattice),
            "census": polygon_census(lattice),
            "euler": euler_residual(lattice),
        }
    )


def polarity_stage(state: AnalysisState) -> AnalysisState:
    try:
        report = certify_anti_self_polar(state.cloud, state.facets, state.tol)
    except OriginNotInterior as e:
        logger.info(f"no polar dual: {e}")
        return state.model_copy(update={"polarity_error": str(e)})
    return state.model_copy(update={"polarity": report})


def diameter_stage(state: AnalysisState) -> AnalysisState:
    return state.model_copy(update={"graph": diameter_graph(state.cloud, state.tol)})


def dual_stage(state: AnalysisState) -> AnalysisState:
    if state.polarity is None:
        return state.model_copy(update={"dual_error": state.polarity_error})
    try:
        lattice, _ = dual_lattice(state.facets, state.tol)
    except (LatticeInconsistency, NotFullDimensional, OriginNotInterior) as e:
        logger.warning(f"dual lattice unavailable: {e}")
        return state.model_copy(update={"dual_error": str(e)})
    return state.model_copy(
        update={
            "dual_stats": flag_stats(lattice),
            "dual_reversed": dual_f_vector_reversed(state.lattice, lattice),
        }
    )


def verify_stage(state: AnalysisState) -> AnalysisState:
    report = verify_polytope(
        state.stats,
        state.census,
        report=state.polarity,
        graph=state.graph,
        dual_stats=state.dual_stats,
    )
    return state.model_copy(update={"verify": report})


def analysis_pipeline(with_dual: bool = True) -> Pipeline:
    stages = [hull_stage, lattice_stage, polarity_stage, diameter_stage]
    if with_dual:
        stages.append(dual_stage)
    stages.append(verify_stage)
    return Pipeline.init("analyze").input(AnalysisState).output(AnalysisState).functions(stages)


def analyze(cloud: PointCloud, tol: ToleranceConfig, with_dual: bool = True) -> AnalysisState:
    """Runs the full analysis, raising the first hull or lattice error."""
    return analysis_pipeline(with_dual).run(AnalysisState(cloud=cloud, tol=tol))


def checks_passed(state: AnalysisState) -> bool:
    """Euler relation, verification and dual f-vector reversal (when a dual exists)."""
    return (
        state.euler == 0
        and state.verify is not None
        and state.verify.passed
        and state.dual_reversed is not False
    )
