import logging
from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import ConvexHull, QhullError
from scipy.spatial.distance import cdist, pdist

from ..config import ToleranceConfig
from ..errors import DegeneratePoints, NotFullDimensional
from .base_geometry import PointCloud, PointsLike, affine_rank, as_array

logger = logging.getLogger(__name__)


class Facet(BaseModel):
    """
    A facet of a 4-polytope: its vertex indices and the supporting hyperplane
    <x, unit_normal> = support. The polytope lies on the side <x, unit_normal> <= support.
    """

    model_config = ConfigDict(frozen=True)

    vertex_ids: Tuple[int, ...]
    unit_normal: Tuple[float, float, float, float]
    support: float

    @field_validator("vertex_ids", mode="before")
    @classmethod
    def _sorted_ids(cls, value):
        return tuple(sorted(int(i) for i in value))

    @property
    def normal(self) -> np.ndarray:
        return np.array(self.unit_normal)

    @property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertex_ids)


def _facet(vertex_ids, normal: np.ndarray, support: float) -> Facet:
    return Facet(
        vertex_ids=vertex_ids,
        unit_normal=tuple(float(x) for x in normal),
        support=float(support),
    )


def hull_facets(points: PointsLike, tol: ToleranceConfig) -> List[Facet]:
    """
    Simplicial boundary of the convex hull of arbitrary points in R^4 (Quickhull via qhull).

    Used directly for polar-dual vertex sets, which are not on the unit sphere;
    convex_hull is the PointCloud entry point.
    """
    pts = as_array(points)
    if len(pts) < 5 or affine_rank(pts, tol.eps_geom) < 5:
        raise NotFullDimensional(
            f"{len(pts)} points span an affine subspace of dimension "
            f"{affine_rank(pts, tol.eps_geom) - 1} < 4"
        )

    separation = pdist(pts).min()
    if separation <= tol.eps_unit:
        raise DegeneratePoints(
            f"two points are {separation:.3e} apart (eps_unit={tol.eps_unit:g}); duplicates are rejected"
        )

    try:
        hull = ConvexHull(pts)
    except QhullError as e:
        raise NotFullDimensional(f"qhull could not build a 4-dimensional hull: {e}") from e

    # qhull files near-coplanar points under a facet instead of making them vertices
    heights = pts @ hull.equations[:, :4].T + hull.equations[:, 4]
    facets = []
    slivers = 0
    for k, simplex in enumerate(hull.simplices):
        on_plane = np.flatnonzero(np.abs(heights[:, k]) <= tol.eps_geom)
        ids = set(simplex.tolist()) | set(on_plane.tolist())
        # zero-volume simplices over a nearly flat 2-face carry a tilted normal
        if affine_rank(pts[sorted(ids)], tol.eps_geom) < 4:
            slivers += 1
            continue
        facets.append(_facet(ids, hull.equations[k, :4], -hull.equations[k, 4]))

    facets.sort(key=lambda f: f.vertex_ids)
    logger.debug(
        f"qhull produced {len(facets)} simplicial facets for {len(pts)} points, {slivers} flat simplices dropped"
    )
    return facets


def convex_hull(cloud: PointCloud, tol: ToleranceConfig) -> List[Facet]:
    """
    Simplicial facets of the hull of a spherical point cloud.

    Raises NotFullDimensional when the points do not affinely span R^4 and
    DegeneratePoints when two points are closer than eps_unit.
    """
    facets = hull_facets(cloud.points, tol)

    used = set().union(*(f.vertex_set for f in facets))
    missing = sorted(set(range(cloud.n)) - used)
    if missing:
        logger.warning(f"points {missing} are not hull vertices; input is not on the sphere within eps_geom")
    return facets


def merge_coplanar(facets: List[Facet], tol: ToleranceConfig) -> List[Facet]:
    """
    Unions facets whose hyperplanes agree within eps_geom (normal and support).

    Coplanarity is closed transitively, so the result is pairwise non-coplanar and a
    second application is the identity.
    """
    if not facets:
        return []

    normals = np.array([f.unit_normal for f in facets])
    supports = np.array([f.support for f in facets])

    close = (cdist(normals, normals) <= tol.eps_geom) & (
        np.abs(supports[:, None] - supports[None, :]) <= tol.eps_geom
    )
    n_groups, labels = connected_components(csr_matrix(close), directed=False)

    if n_groups == len(facets):
        return list(facets)

    merged = []
    for group in range(n_groups):
        members = np.flatnonzero(labels == group)
        if len(members) == 1:
            merged.append(facets[members[0]])
            continue
        ids = set().union(*(facets[m].vertex_set for m in members))
        normal = normals[members].mean(axis=0)
        normal /= np.linalg.norm(normal)
        merged.append(_facet(ids, normal, supports[members].mean()))

    merged.sort(key=lambda f: f.vertex_ids)
    logger.debug(f"merged {len(facets)} simplicial facets into {len(merged)} facets")
    return merged


def origin_margin(facets: List[Facet]) -> float:
    """Smallest facet support; positive iff the origin is interior to the hull."""
    return min(f.support for f in facets)
