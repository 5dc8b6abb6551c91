import logging
from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.spatial.distance import pdist, squareform

from ..config import ToleranceConfig
from ..errors import NotAntiSelfPolar
from ..geometry import PointCloud
from ..lattice import FlagStats
from ..polarity import PolarityReport

logger = logging.getLogger(__name__)


class DiameterGraph(BaseModel):
    """Pairs of points at maximal distance, with the Euclidean and spherical diameters."""

    model_config = ConfigDict(frozen=True)

    edges: List[Tuple[int, int]]
    max_dist: float
    spherical_d: float

    @property
    def e(self) -> int:
        return len(self.edges)


def diameter_graph(cloud: PointCloud, tol: ToleranceConfig) -> DiameterGraph:
    """
    Edges are the pairs whose Euclidean distance is within eps_diam of the maximum.
    On the sphere the chord is monotone in the angle, so the same pairs maximize both.
    """
    distances = squareform(pdist(cloud.points))
    max_dist = float(distances.max())

    i, j = np.triu_indices(cloud.n, k=1)
    keep = distances[i, j] >= max_dist - tol.eps_diam
    edges = sorted(zip(i[keep].tolist(), j[keep].tolist()))

    min_inner = float(np.min(cloud.gram()[i, j]))
    spherical_d = float(np.arccos(np.clip(min_inner, -1.0, 1.0)))

    logger.debug(f"diameter graph: {len(edges)} edges, d={spherical_d:.12g} rad")
    return DiameterGraph(edges=edges, max_dist=max_dist, spherical_d=spherical_d)


def spherical_pairs(cloud: PointCloud, tol: ToleranceConfig) -> List[Tuple[int, int]]:
    """Maximal pairs by geodesic distance; agrees with diameter_graph on the sphere."""
    i, j = np.triu_indices(cloud.n, k=1)
    angles = np.arccos(np.clip(cloud.gram()[i, j], -1.0, 1.0))
    # chord = 2 sin(theta / 2)
    chord_threshold = max(2.0 * np.sin(angles.max() / 2.0) - tol.eps_diam, 0.0)
    keep = angles >= 2.0 * np.arcsin(min(chord_threshold / 2.0, 1.0))
    return sorted(zip(i[keep].tolist(), j[keep].tolist()))


def check_f03_double_count(graph: DiameterGraph, stats: FlagStats, report: PolarityReport) -> bool:
    """f03 = 2 e(G): every diameter pair (v, w) puts w on the facet opposite v and v opposite w."""
    if not report.is_asp:
        raise NotAntiSelfPolar(f"double count needs an anti-self-polar polytope: {report.reason}")
    return stats.f03 == 2 * graph.e


def d_matches_c(graph: DiameterGraph, report: PolarityReport, tol: ToleranceConfig) -> bool:
    """spherical_d = arccos(-1/c) for a certified anti-self-polar polytope."""
    if not report.is_asp:
        raise NotAntiSelfPolar(f"d = arccos(-1/c) needs an anti-self-polar polytope: {report.reason}")
    expected = float(np.arccos(np.clip(-1.0 / report.c, -1.0, 1.0)))
    return abs(np.cos(graph.spherical_d) - np.cos(expected)) <= tol.eps_polar
