import itertools

import numpy as np
import pytest

from antipolar.config import ToleranceConfig
from antipolar.geometry import PointCloud
from antipolar.io import catalog


def brute_force_facets(points: np.ndarray, tol: float = 1e-9):
    """
    Vertex sets of the facets of conv(points), by testing the hyperplane through every
    affinely independent 4-subset for being a supporting hyperplane.
    """
    points = np.asarray(points, dtype=float)
    facets = set()
    for quad in itertools.combinations(range(len(points)), 4):
        lifted = np.hstack([points[list(quad)], np.ones((4, 1))])
        _, s, vt = np.linalg.svd(lifted)
        if s[-1] <= tol:
            continue
        plane = vt[-1]
        normal, offset = plane[:4], plane[4]
        scale = np.linalg.norm(normal)
        heights = (points @ normal + offset) / scale
        if np.all(heights <= tol) or np.all(heights >= -tol):
            facets.add(tuple(np.flatnonzero(np.abs(heights) <= tol).tolist()))
    return sorted(facets)


def random_sphere_points(rng: np.random.Generator, n: int) -> np.ndarray:
    x = rng.standard_normal((n, 4))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


@pytest.fixture
def tol():
    return ToleranceConfig.catalog()


@pytest.fixture
def flow_tol():
    return ToleranceConfig.flow()


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture(params=["simplex", "cross", "hypercube", "cell24"])
def catalog_name(request):
    return request.param


@pytest.fixture
def simplex():
    return catalog("simplex")


@pytest.fixture
def hypercube():
    return catalog("hypercube")


@pytest.fixture
def cross():
    return catalog("cross")


@pytest.fixture
def cell24():
    return catalog("cell24")


@pytest.fixture
def random_cloud(rng):
    return PointCloud(points=random_sphere_points(rng, 12))
