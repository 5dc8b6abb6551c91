import numpy as np
import pytest

from antipolar.errors import LatticeInconsistency
from antipolar.geometry import PointCloud, convex_hull, merge_coplanar
from antipolar.io import catalog
from antipolar.lattice import (
    build_lattice,
    euler_residual,
    extended_f_vector,
    f_vector,
    flag_f03,
    flag_number,
    flag_stats,
    polygon_census,
)

from conftest import random_sphere_points

EXPECTED = {
    "simplex": {
        "f": (5, 10, 10, 5),
        "flags": {"f01": 20, "f02": 30, "f03": 20, "f12": 30, "f13": 30, "f23": 20},
        "census": {3: 10},
        "per_facet": (4, 6, 4),
    },
    "hypercube": {
        "f": (16, 32, 24, 8),
        "flags": {"f01": 64, "f02": 96, "f03": 64, "f12": 96, "f13": 96, "f23": 48},
        "census": {4: 24},
        "per_facet": (8, 12, 6),
    },
    "cross": {
        "f": (8, 24, 32, 16),
        "flags": {"f01": 48, "f02": 96, "f03": 64, "f12": 96, "f13": 96, "f23": 64},
        "census": {3: 32},
        "per_facet": (4, 6, 4),
    },
    "cell24": {
        "f": (24, 96, 96, 24),
        "flags": {"f01": 192, "f02": 288, "f03": 144, "f12": 288, "f13": 288, "f23": 192},
        "census": {3: 96},
        "per_facet": (6, 12, 8),
    },
}


def lattice_of(cloud, tol):
    return build_lattice(merge_coplanar(convex_hull(cloud, tol), tol), cloud, tol)


def test_catalog_lattices(catalog_name, tol):
    expected = EXPECTED[catalog_name]
    lattice = lattice_of(catalog(catalog_name), tol)

    assert f_vector(lattice) == expected["f"]
    assert extended_f_vector(lattice) == expected["flags"]
    assert flag_f03(lattice) == expected["flags"]["f03"]
    assert euler_residual(lattice) == 0

    census = polygon_census(lattice)
    assert census.a == expected["census"]

    stats = flag_stats(lattice)
    assert stats.f == expected["f"]
    assert stats.f03 == expected["flags"]["f03"]
    assert all(counts == expected["per_facet"] for counts in stats.per_facet)


def test_flag_number_rejects_bad_ranks(simplex, tol):
    lattice = lattice_of(simplex, tol)
    with pytest.raises(ValueError):
        flag_number(lattice, 2, 2)
    with pytest.raises(ValueError):
        flag_number(lattice, 0, 4)


def test_polygons_are_cyclic(hypercube, tol):
    lattice = lattice_of(hypercube, tol)
    pts = hypercube.points
    for polygon in lattice.polygons:
        assert polygon[0] == min(polygon)
        assert polygon[1] < polygon[-1]
        for u, v in zip(polygon, polygon[1:] + polygon[:1]):
            assert np.linalg.norm(pts[u] - pts[v]) == pytest.approx(1.0)


def test_facet_order_is_preserved(cell24, tol):
    facets = merge_coplanar(convex_hull(cell24, tol), tol)
    lattice = build_lattice(facets, cell24, tol)
    assert lattice.faces[3] == [f.vertex_ids for f in facets]


def test_incidence_is_consistent(cross, tol):
    lattice = lattice_of(cross, tol)
    for k in range(3):
        for a, b in lattice.incidence[k]:
            assert set(lattice.faces[k][a]) <= set(lattice.faces[k + 1][b])
    # every ridge in exactly two facets, every edge in at least three
    ridge_counts = np.bincount([r for r, _ in lattice.incidence[2]])
    assert np.all(ridge_counts == 2)


def test_random_hull_lattices_satisfy_euler(rng, tol):
    for n in range(6, 21, 2):
        cloud = PointCloud(points=random_sphere_points(rng, n))
        lattice = lattice_of(cloud, tol)
        assert euler_residual(lattice) == 0
        # simplicial: every 2-face a triangle
        assert set(polygon_census(lattice).a) == {3}


def test_duplicated_facet_is_inconsistent(simplex, tol):
    facets = merge_coplanar(convex_hull(simplex, tol), tol)
    with pytest.raises(LatticeInconsistency):
        build_lattice(facets + facets[:1], simplex, tol)
