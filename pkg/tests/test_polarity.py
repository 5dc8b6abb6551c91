import numpy as np
import pytest

from antipolar.config import ToleranceConfig
from antipolar.errors import NotAntiSelfPolar, OriginNotInterior
from antipolar.geometry import PointCloud, convex_hull, merge_coplanar
from antipolar.io import catalog
from antipolar.lattice import build_lattice, f_vector
from antipolar.polarity import (
    certify_anti_self_polar,
    check_opposition,
    dual_f_vector_reversed,
    dual_lattice,
    opposition_map,
    polar_dual,
)

from conftest import random_sphere_points


def facets_of(cloud, tol):
    return merge_coplanar(convex_hull(cloud, tol), tol)


def test_simplex_is_anti_self_polar(simplex, tol):
    facets = facets_of(simplex, tol)
    report = certify_anti_self_polar(simplex, facets, tol)
    assert report.is_asp
    assert report.reason is None
    assert report.c == pytest.approx(4.0, abs=1e-9)
    assert report.residual <= tol.eps_polar
    assert sorted(report.sigma) == list(range(5))


def test_simplex_opposition(simplex, tol):
    facets = facets_of(simplex, tol)
    report = certify_anti_self_polar(simplex, facets, tol)
    mapping = opposition_map(report)
    for v, k in mapping.items():
        # the facet opposite a simplex vertex is the one that misses it
        assert v not in facets[k].vertex_ids
    assert check_opposition(report, simplex, facets, tol)


@pytest.mark.parametrize("name", ["hypercube", "cross", "cell24"])
def test_other_regular_polytopes_are_not_certified(name, tol):
    cloud = catalog(name)
    report = certify_anti_self_polar(cloud, facets_of(cloud, tol), tol)
    assert not report.is_asp
    assert report.reason
    with pytest.raises(NotAntiSelfPolar):
        opposition_map(report)


def test_polar_dual_of_cross_is_hypercube(cross, tol):
    duals = polar_dual(facets_of(cross, tol), tol)
    assert duals.shape == (16, 4)
    assert np.allclose(np.abs(duals), 1.0)


def test_polar_dual_needs_interior_origin(tol):
    # all points in the cap x1 > 0
    points = np.array(
        [
            [0.9, 0.1, 0.1, 0.1],
            [0.9, -0.1, 0.1, -0.1],
            [0.9, 0.1, -0.1, -0.1],
            [0.9, -0.1, -0.1, 0.1],
            [1.0, 0.0, 0.0, 0.0],
            [0.9, 0.2, 0.0, 0.0],
        ]
    )
    cloud = PointCloud(points=points / np.linalg.norm(points, axis=1, keepdims=True))
    with pytest.raises(OriginNotInterior):
        polar_dual(facets_of(cloud, tol), tol)


@pytest.mark.parametrize("name", ["simplex", "cross", "hypercube", "cell24"])
def test_dual_f_vector_is_reversed(name, tol):
    cloud = catalog(name)
    facets = facets_of(cloud, tol)
    dual = dual_lattice(facets, tol)[0]
    lattice = build_lattice(facets, cloud, tol)
    assert f_vector(dual) == tuple(reversed(f_vector(lattice)))
    assert dual_f_vector_reversed(lattice, dual)


def test_random_duals(rng):
    tol = ToleranceConfig(eps_geom=1e-8)
    checked = 0
    for n in (10, 14, 18):
        cloud = PointCloud(points=random_sphere_points(rng, n))
        facets = facets_of(cloud, tol)
        if min(f.support for f in facets) <= tol.eps_geom:
            continue
        lattice = build_lattice(facets, cloud, tol)
        dual, duals = dual_lattice(facets, tol)
        assert duals.shape == (len(facets), 4)
        assert dual_f_vector_reversed(lattice, dual)
        checked += 1
    assert checked >= 1
