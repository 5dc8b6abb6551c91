import logging
from collections import Counter, defaultdict
from itertools import combinations
from typing import Dict, List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..config import ToleranceConfig
from ..errors import LatticeInconsistency
from ..geometry import Facet, PointsLike, affine_rank, as_array

logger = logging.getLogger(__name__)

Face = Tuple[int, ...]


class FaceLattice(BaseModel):
    """
    Faces of a 4-polytope by dimension, identified by their sorted vertex-index tuples.

    faces[3][k] is the vertex set of the k-th facet passed to build_lattice, so facet
    indices agree with the Facet list used by the polarity module. polygons[r] is the
    cyclic vertex order of the 2-face faces[2][r]. incidence[k] lists the pairs
    (a, b) with faces[k][a] contained in faces[k + 1][b].
    """

    model_config = ConfigDict(frozen=True)

    faces: List[List[Face]]
    polygons: List[Face]
    incidence: Dict[int, List[Tuple[int, int]]]


class FlagStats(BaseModel):
    model_config = ConfigDict(frozen=True)

    f: Tuple[int, int, int, int]
    f03: int
    per_facet: List[Tuple[int, int, int]]


class PolygonCensus(BaseModel):
    """a[j]: number of j-gonal 2-faces of P; a_phi[k][j]: number of j-gons in facet k."""

    model_config = ConfigDict(frozen=True)

    a: Dict[int, int]
    a_phi: List[Dict[int, int]]


def _cyclic_order(ids: Face, pts: np.ndarray, tol: ToleranceConfig) -> Face:
    """Angular sort of a planar vertex set around its centroid, canonically rotated."""
    coords = pts[list(ids)]
    centered = coords - coords.mean(axis=0)
    _, _, vt = np.linalg.svd(centered)
    planar = centered @ vt[:2].T
    angles = np.arctan2(planar[:, 1], planar[:, 0])

    order = np.lexsort((np.array(ids), angles))
    sorted_angles = angles[order]
    gaps = np.diff(np.append(sorted_angles, sorted_angles[0] + 2 * np.pi))
    if np.min(gaps) <= tol.eps_geom:
        raise LatticeInconsistency(f"2-face {ids} is not a simple polygon (repeated angle)")

    cycle = [ids[i] for i in order]
    start = cycle.index(min(cycle))
    cycle = cycle[start:] + cycle[:start]
    if cycle[-1] < cycle[1]:
        cycle = [cycle[0]] + cycle[1:][::-1]
    return tuple(cycle)


def build_lattice(facets: List[Facet], cloud: PointsLike, tol: ToleranceConfig) -> FaceLattice:
    """
    Builds faces of every dimension from merged facets.

    2-faces are the intersections of facet pairs with at least three vertices spanning a
    2-flat; each must lie in exactly two facets. Edges are consecutive vertices of the
    cyclically ordered 2-faces.
    """
    pts = as_array(cloud)
    facet_sets = [f.vertex_set for f in facets]

    ridge_sets = set()
    for i, j in combinations(range(len(facets)), 2):
        common = facet_sets[i] & facet_sets[j]
        if len(common) >= 3:
            ridge_sets.add(frozenset(common))

    ridges = sorted(tuple(sorted(r)) for r in ridge_sets)
    ridge_facets = []
    for ridge in ridges:
        containing = [k for k, fs in enumerate(facet_sets) if fs.issuperset(ridge)]
        if len(containing) != 2:
            raise LatticeInconsistency(
                f"2-face {ridge} lies in {len(containing)} facets instead of 2"
            )
        if affine_rank(pts[list(ridge)], tol.eps_geom) != 3:
            raise LatticeInconsistency(f"2-face {ridge} does not span a 2-flat")
        ridge_facets.append(containing)

    polygons = [_cyclic_order(r, pts, tol) for r in ridges]

    edge_ridges = defaultdict(list)
    for r, cycle in enumerate(polygons):
        for u, v in zip(cycle, cycle[1:] + cycle[:1]):
            edge_ridges[(min(u, v), max(u, v))].append(r)
    edges = sorted(edge_ridges)

    for edge in edges:
        n_facets = sum(1 for fs in facet_sets if fs.issuperset(edge))
        if n_facets < 3:
            raise LatticeInconsistency(f"edge {edge} lies in only {n_facets} facets")

    vertices = sorted(set().union(*facet_sets))
    vertex_index = {v: i for i, v in enumerate(vertices)}
    edge_index = {e: i for i, e in enumerate(edges)}

    incidence = {
        0: sorted((vertex_index[v], edge_index[e]) for e in edges for v in e),
        1: sorted((edge_index[e], r) for e, rs in edge_ridges.items() for r in rs),
        2: sorted((r, k) for r, ks in enumerate(ridge_facets) for k in ks),
    }

    lattice = FaceLattice(
        faces=[
            [(v,) for v in vertices],
            edges,
            ridges,
            [f.vertex_ids for f in facets],
        ],
        polygons=polygons,
        incidence=incidence,
    )
    logger.debug(f"lattice built with f-vector {f_vector(lattice)}")
    return lattice


def f_vector(lattice: FaceLattice) -> Tuple[int, int, int, int]:
    return tuple(len(lattice.faces[k]) for k in range(4))


def flag_f03(lattice: FaceLattice) -> int:
    """Number of (vertex, facet) incidences: the sum of facet vertex counts."""
    return sum(len(facet) for facet in lattice.faces[3])


def flag_number(lattice: FaceLattice, i: int, j: int) -> int:
    """f_ij: number of pairs (x, y) with x an i-face contained in the j-face y, 0 <= i < j <= 3."""
    if not 0 <= i < j <= 3:
        raise ValueError(f"flag number f_{i}{j} is not defined")
    if i == 0 and j == 3:
        return flag_f03(lattice)
    lower = [frozenset(x) for x in lattice.faces[i]]
    upper = [frozenset(y) for y in lattice.faces[j]]
    return sum(1 for x in lower for y in upper if x <= y)


def extended_f_vector(lattice: FaceLattice) -> Dict[str, int]:
    return {f"f{i}{j}": flag_number(lattice, i, j) for i, j in combinations(range(4), 2)}


def flag_stats(lattice: FaceLattice) -> FlagStats:
    """f-vector, f03 and the per-facet (f0, f1, f2) counts."""
    ridges_of_facet = defaultdict(set)
    for r, k in lattice.incidence[2]:
        ridges_of_facet[k].add(r)

    edges_of_ridge = defaultdict(set)
    for e, r in lattice.incidence[1]:
        edges_of_ridge[r].add(e)

    per_facet = []
    for k, facet in enumerate(lattice.faces[3]):
        ridges = ridges_of_facet[k]
        edges = set().union(*(edges_of_ridge[r] for r in ridges)) if ridges else set()
        per_facet.append((len(facet), len(edges), len(ridges)))

    return FlagStats(f=f_vector(lattice), f03=flag_f03(lattice), per_facet=per_facet)


def polygon_census(lattice: FaceLattice) -> PolygonCensus:
    sizes = [len(p) for p in lattice.polygons]
    a = dict(sorted(Counter(sizes).items()))

    a_phi = [Counter() for _ in lattice.faces[3]]
    for r, k in lattice.incidence[2]:
        a_phi[k][sizes[r]] += 1

    return PolygonCensus(a=a, a_phi=[dict(sorted(c.items())) for c in a_phi])


def euler_residual(lattice: FaceLattice) -> int:
    """f0 - f1 + f2 - f3; zero for the boundary of every 4-polytope."""
    f0, f1, f2, f3 = f_vector(lattice)
    return f0 - f1 + f2 - f3
