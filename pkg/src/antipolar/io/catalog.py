import itertools
from typing import Callable, Dict

import numpy as np
from scipy.linalg import helmert

from ..errors import UnknownCatalogName
from ..geometry import PointCloud


def simplex_points() -> np.ndarray:
    """Regular 4-simplex: the standard basis of R^5 centred and rotated into R^4, scaled to unit norm."""
    # rows of helmert(5).T have norm sqrt(4/5) and mutual inner product -1/5
    return helmert(5).T * np.sqrt(5.0 / 4.0)


def cross_points() -> np.ndarray:
    eye = np.eye(4)
    return np.vstack([eye, -eye])


def hypercube_points() -> np.ndarray:
    return np.array(list(itertools.product((-0.5, 0.5), repeat=4)))


def cell24_points() -> np.ndarray:
    """Coordinate permutations of (+-1, +-1, 0, 0) / sqrt(2)."""
    points = []
    for a, b in itertools.combinations(range(4), 2):
        for sa, sb in itertools.product((-1.0, 1.0), repeat=2):
            p = np.zeros(4)
            p[a], p[b] = sa, sb
            points.append(p / np.sqrt(2.0))
    return np.array(points)


CATALOG: Dict[str, Callable[[], np.ndarray]] = {
    "simplex": simplex_points,
    "cross": cross_points,
    "hypercube": hypercube_points,
    "cell24": cell24_points,
}


def catalog(name: str) -> PointCloud:
    """
    Exact unit-sphere vertices of a named regular 4-polytope.

    Raises:
        UnknownCatalogName: when `name` is not one of CATALOG.
    """
    try:
        builder = CATALOG[name]
    except KeyError:
        raise UnknownCatalogName(f"unknown catalog polytope {name!r}; expected one of {sorted(CATALOG)}")
    return PointCloud(points=builder())
