import logging
from typing import Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from ..diameter import DiameterGraph
from ..errors import NotAntiSelfPolar
from ..lattice import FlagStats, PolygonCensus
from ..polarity import PolarityReport

logger = logging.getLogger(__name__)


class Theorem1Result(BaseModel):
    model_config = ConfigDict(frozen=True)

    bound: int
    ok: bool
    equality: bool
    chain_ok: bool
    f0_equals_f3: bool


class VerifyReport(BaseModel):
    """
    Every inequality and identity evaluated on one polytope. theorem1 is None
    (not applicable) unless the polytope is certified anti-self-polar; dual_g2 is None
    when the dual hull could not be built.
    """

    model_config = ConfigDict(frozen=True)

    g2_census: int
    g2_flag: int
    kalai_lhs: int
    kalai_rhs: int
    stanley_ok: bool
    theorem1_bound: int
    theorem1: Optional[Theorem1Result] = None
    dual_g2: Optional[int] = None
    facet_identities_ok: bool = True

    @property
    def theorem1_ok(self) -> Optional[bool]:
        return None if self.theorem1 is None else self.theorem1.ok

    @property
    def equality_case(self) -> bool:
        return self.theorem1 is not None and self.theorem1.equality

    @property
    def passed(self) -> bool:
        """True when every applicable check holds."""
        checks = [
            self.g2_census == self.g2_flag,
            self.g2_census >= 0,
            self.kalai_lhs >= self.kalai_rhs,
            self.stanley_ok,
            self.facet_identities_ok,
        ]
        if self.theorem1 is not None:
            checks += [self.theorem1.ok, self.theorem1.chain_ok]
        if self.dual_g2 is not None:
            checks.append(self.dual_g2 == self.g2_flag)
        return all(checks)


def kalai_terms(census: PolygonCensus, stats: FlagStats) -> Tuple[int, int]:
    """(sum_{j>=4} (j-3) a^j, 4 f0 - f1 - 10); the first is never below the second."""
    f0, f1, _, _ = stats.f
    lhs = sum((j - 3) * count for j, count in census.a.items() if j >= 4)
    return lhs, 4 * f0 - f1 - 10


def g2_census(census: PolygonCensus, stats: FlagStats) -> int:
    lhs, rhs = kalai_terms(census, stats)
    return lhs - rhs


def g2_flag(stats: FlagStats) -> int:
    """g2 from flag numbers alone: f03 - 3 f0 - 3 f3 + 10."""
    f0, _, _, f3 = stats.f
    return stats.f03 - 3 * f0 - 3 * f3 + 10


def stanley_check(stats: FlagStats) -> bool:
    """f03 >= 3 f0 + 3 f3 - 10."""
    f0, _, _, f3 = stats.f
    return stats.f03 >= 3 * f0 + 3 * f3 - 10


def theorem1_check(graph: DiameterGraph, stats: FlagStats, report: PolarityReport) -> Theorem1Result:
    """
    e(G) >= 3 f0 - 5 for an anti-self-polar 4-polytope.

    Also reports the intermediate step f03 >= 6 f0 - 10 and whether f0 = f3.
    Raises NotAntiSelfPolar for polytopes that are not certified.
    """
    if not report.is_asp:
        raise NotAntiSelfPolar(
            f"the edge bound e(G) >= 3 f0 - 5 applies to anti-self-polar polytopes only: {report.reason}"
        )
    f0, _, _, f3 = stats.f
    bound = 3 * f0 - 5
    return Theorem1Result(
        bound=bound,
        ok=graph.e >= bound,
        equality=graph.e == bound,
        chain_ok=stats.f03 >= 6 * f0 - 10,
        f0_equals_f3=f0 == f3,
    )


def dual_g2_check(p_stats: FlagStats, pstar_stats: FlagStats) -> bool:
    """g2(P) = g2(P*)."""
    return g2_flag(p_stats) == g2_flag(pstar_stats)


def facet_identities(stats: FlagStats, census: PolygonCensus) -> Dict[str, bool]:
    """
    Per-facet Euler relation, per-facet edge count 2 f1(phi) = sum_j j a_phi^j, and
    the 2-face handshake sum_phi a_phi^j = 2 a^j.
    """
    euler = all(f0 - f1 + f2 == 2 for f0, f1, f2 in stats.per_facet)
    edges = all(
        2 * f1 == sum(j * count for j, count in a_phi.items())
        for (_, f1, _), a_phi in zip(stats.per_facet, census.a_phi)
    )
    handshake = all(
        sum(a_phi.get(j, 0) for a_phi in census.a_phi) == 2 * count for j, count in census.a.items()
    )
    return {
        "facet_euler": euler,
        "facet_edges": edges,
        "handshake": handshake,
        "f03_sum": stats.f03 == sum(f0 for f0, _, _ in stats.per_facet),
        "facet_f2_sum": sum(f2 for _, _, f2 in stats.per_facet) == 2 * stats.f[2],
        "census_total": sum(census.a.values()) == stats.f[2],
    }


def verify_polytope(
    stats: FlagStats,
    census: PolygonCensus,
    report: Optional[PolarityReport] = None,
    graph: Optional[DiameterGraph] = None,
    dual_stats: Optional[FlagStats] = None,
) -> VerifyReport:
    """Assembles a VerifyReport; the edge bound is evaluated only for certified polytopes."""
    lhs, rhs = kalai_terms(census, stats)
    identities = facet_identities(stats, census)

    theorem1 = None
    if report is not None and graph is not None and report.is_asp:
        theorem1 = theorem1_check(graph, stats, report)

    verify_report = VerifyReport(
        g2_census=lhs - rhs,
        g2_flag=g2_flag(stats),
        kalai_lhs=lhs,
        kalai_rhs=rhs,
        stanley_ok=stanley_check(stats),
        theorem1_bound=3 * stats.f[0] - 5,
        theorem1=theorem1,
        dual_g2=None if dual_stats is None else g2_flag(dual_stats),
        facet_identities_ok=all(identities.values()),
    )
    if not verify_report.passed:
        failed = [k for k, ok in identities.items() if not ok]
        logger.warning(f"verification failed: g2 {verify_report.g2_census}/{verify_report.g2_flag}, identities {failed}")
    return verify_report
