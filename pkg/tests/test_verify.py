import numpy as np
import pytest

from antipolar.analysis import analyze, checks_passed
from antipolar.config import ToleranceConfig
from antipolar.errors import NotAntiSelfPolar
from antipolar.geometry import PointCloud
from antipolar.io import catalog
from antipolar.verify import (
    dual_g2_check,
    facet_identities,
    g2_census,
    g2_flag,
    kalai_terms,
    stanley_check,
    theorem1_check,
)

from conftest import random_sphere_points


def test_simplex_meets_theorem1_with_equality(simplex, tol):
    state = analyze(simplex, tol)
    report = state.verify
    assert state.polarity.is_asp
    assert state.polarity.c == pytest.approx(4.0, abs=1e-9)
    assert state.graph.e == 10
    assert report.theorem1_bound == 10
    assert report.theorem1.ok
    assert report.theorem1.equality
    assert report.theorem1.chain_ok
    assert report.theorem1.f0_equals_f3
    assert report.g2_census == report.g2_flag == 0
    assert report.passed
    assert checks_passed(state)


def test_hypercube(hypercube, tol):
    state = analyze(hypercube, tol)
    assert state.census.a == {4: 24}
    assert kalai_terms(state.census, state.stats) == (24, 22)
    assert g2_census(state.census, state.stats) == g2_flag(state.stats) == 2
    assert state.verify.theorem1 is None
    assert state.verify.theorem1_ok is None
    assert stanley_check(state.stats)
    assert checks_passed(state)


def test_cross(cross, tol):
    state = analyze(cross, tol)
    assert state.verify.g2_census == state.verify.g2_flag == 2
    assert state.verify.dual_g2 == 2
    assert checks_passed(state)


def test_cell24(cell24, tol):
    state = analyze(cell24, tol)
    assert state.stats.f03 == 144
    assert state.verify.g2_census == state.verify.g2_flag == 10
    assert not state.polarity.is_asp
    assert state.verify.theorem1 is None
    assert checks_passed(state)


def test_stanley_holds_on_catalog(catalog_name, tol):
    stats = analyze(catalog(catalog_name), tol).stats
    f0, _, _, f3 = stats.f
    assert stats.f03 >= 3 * f0 + 3 * f3 - 10
    assert stanley_check(stats)


def test_theorem1_requires_certificate(hypercube, tol):
    state = analyze(hypercube, tol)
    with pytest.raises(NotAntiSelfPolar):
        theorem1_check(state.graph, state.stats, state.polarity)


def test_facet_identities_on_catalog(catalog_name, tol):
    state = analyze(catalog(catalog_name), tol)
    assert all(facet_identities(state.stats, state.census).values())


def test_dual_g2_matches(catalog_name, tol):
    state = analyze(catalog(catalog_name), tol)
    assert state.dual_stats is not None
    assert dual_g2_check(state.stats, state.dual_stats)
    assert state.dual_reversed


def test_identity_suite_on_random_hulls():
    rng = np.random.default_rng(7)
    tol = ToleranceConfig(eps_geom=1e-8)
    with_dual = 0
    for _ in range(200):
        n = int(rng.integers(6, 21))
        state = analyze(PointCloud(points=random_sphere_points(rng, n)), tol)
        report = state.verify
        assert state.euler == 0
        assert report.g2_census == report.g2_flag
        assert report.g2_flag >= 0
        assert report.stanley_ok
        assert report.facet_identities_ok
        if state.dual_stats is not None:
            with_dual += 1
            assert report.dual_g2 == report.g2_flag
            assert state.dual_reversed
        assert checks_passed(state)
    assert with_dual > 80
