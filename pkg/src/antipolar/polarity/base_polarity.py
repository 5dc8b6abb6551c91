import logging
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..config import ToleranceConfig
from ..errors import NotAntiSelfPolar, OriginNotInterior
from ..geometry import Facet, PointCloud, hull_facets, merge_coplanar
from ..lattice import FaceLattice, build_lattice, f_vector

logger = logging.getLogger(__name__)


class PolarityReport(BaseModel):
    """
    Certificate for P* = -cP.

    sigma[k] is the vertex matched to facet k: dual_vertices[k] ~ -c * points[sigma[k]].
    residual is the largest |dual_vertices[k] + c * points[sigma[k]]|.
    """

    model_config = ConfigDict(frozen=True)

    is_asp: bool
    c: float
    sigma: List[int]
    residual: float
    dual_vertices: List[Tuple[float, float, float, float]]
    reason: Optional[str] = None


def polar_dual(facets: List[Facet], tol: ToleranceConfig = None) -> np.ndarray:
    """
    Vertices of the polar P* = {y : <x, y> <= 1 for x in P}: one point normal / support per facet.

    Raises OriginNotInterior when some facet support is not above eps_geom.
    """
    tol = tol or ToleranceConfig()
    supports = np.array([f.support for f in facets])
    if np.any(supports <= tol.eps_geom):
        k = int(np.argmin(supports))
        raise OriginNotInterior(
            f"facet {facets[k].vertex_ids} has support {supports[k]:.3e}; origin is not interior"
        )
    normals = np.array([f.unit_normal for f in facets])
    return normals / supports[:, None]


def certify_anti_self_polar(
    cloud: PointCloud, facets: List[Facet], tol: ToleranceConfig
) -> PolarityReport:
    """
    Matches every dual vertex to the cloud point whose negative points the same way,
    fits c by least squares over the matched pairs and certifies when the matching is a
    bijection and the residual is within eps_polar. Ambiguous matches are not certified.
    """
    duals = polar_dual(facets, tol)
    points = cloud.points

    directions = duals / np.linalg.norm(duals, axis=1, keepdims=True)
    scores = directions @ (-points).T
    ranked = np.sort(scores, axis=1)
    sigma = np.argmax(scores, axis=1)

    # least squares for min_c sum |d_k + c p_sigma(k)|^2 with |p| = 1
    c = float(-np.mean(np.einsum("ij,ij->i", duals, points[sigma])))
    residual = float(np.max(np.linalg.norm(duals + c * points[sigma], axis=1)))

    reason = None
    if len(facets) != cloud.n:
        reason = f"{len(facets)} facets but {cloud.n} vertices"
    elif np.any(ranked[:, -1] - ranked[:, -2] <= tol.eps_polar):
        reason = "ambiguous direction match"
    elif len(set(sigma.tolist())) != cloud.n:
        reason = "facet-to-vertex matching is not a bijection"
    elif c <= 0:
        reason = f"non-positive scale c={c:.6g}"
    elif residual > tol.eps_polar:
        reason = f"residual {residual:.3e} exceeds eps_polar={tol.eps_polar:g}"

    report = PolarityReport(
        is_asp=reason is None,
        c=c,
        sigma=sigma.tolist(),
        residual=residual,
        dual_vertices=[tuple(float(x) for x in d) for d in duals],
        reason=reason,
    )
    logger.debug(f"anti-self-polar certificate: is_asp={report.is_asp} c={c:.12g} reason={reason}")
    return report


def opposition_map(report: PolarityReport) -> Dict[int, int]:
    """Vertex -> facet whose dual vertex is -c times that vertex (inverse of sigma)."""
    if not report.is_asp:
        raise NotAntiSelfPolar(f"polytope is not certified anti-self-polar: {report.reason}")
    return {v: k for k, v in enumerate(report.sigma)}


def check_opposition(
    report: PolarityReport, cloud: PointCloud, facets: List[Facet], tol: ToleranceConfig
) -> bool:
    """
    For every vertex v: <v, w> = -1/c on the opposite facet and <v, w'> > -1/c for every
    other vertex w'.
    """
    target = -1.0 / report.c
    gram = cloud.gram()
    for v, k in opposition_map(report).items():
        opposite = np.zeros(cloud.n, dtype=bool)
        opposite[list(facets[k].vertex_ids)] = True
        if np.any(np.abs(gram[v, opposite] - target) > tol.eps_polar):
            return False
        others = gram[v, ~opposite]
        if others.size and np.any(others <= target + tol.eps_polar):
            return False
    return True


def dual_lattice(facets: List[Facet], tol: ToleranceConfig) -> Tuple[FaceLattice, np.ndarray]:
    """Face lattice of P*, built from the hull of the polar-dual vertices."""
    duals = polar_dual(facets, tol)
    dual_facets = merge_coplanar(hull_facets(duals, tol), tol)
    return build_lattice(dual_facets, duals, tol), duals


def dual_f_vector_reversed(lattice: FaceLattice, dual: FaceLattice) -> bool:
    """f_k(P*) = f_{3-k}(P)."""
    return f_vector(dual) == tuple(reversed(f_vector(lattice)))
