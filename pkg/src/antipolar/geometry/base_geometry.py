from typing import Any, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, field_serializer, field_validator, model_validator

from ..errors import DegenerateInput

Vec4 = np.ndarray


def unit_project(v: Any) -> Vec4:
    """Returns v / |v|. Keeps flow iterates on the unit sphere."""
    v = np.asarray(v, dtype=float)
    if v.shape != (4,) or not np.all(np.isfinite(v)):
        raise DegenerateInput(f"expected a finite vector in R^4, got {v!r}")
    norm = np.linalg.norm(v)
    if norm == 0.0:
        raise DegenerateInput("cannot project the zero vector onto the unit sphere")
    return v / norm


def unit_project_rows(points: np.ndarray) -> np.ndarray:
    """Row-wise unit_project for an (n, 4) array."""
    norms = np.linalg.norm(points, axis=1, keepdims=True)
    if np.any(norms == 0.0):
        raise DegenerateInput("cannot project the zero vector onto the unit sphere")
    return points / norms


def affine_rank(points: np.ndarray, tol: float) -> int:
    """Number of affinely independent points among `points` (0 for an empty set)."""
    points = np.asarray(points, dtype=float)
    if len(points) == 0:
        return 0
    if len(points) == 1:
        return 1
    return int(np.linalg.matrix_rank(points[1:] - points[0], tol=tol)) + 1


class PointCloud(BaseModel):
    """
    n points on the unit 3-sphere in R^4; the vertex candidates of a polytope.

    The points are kept as an (n, 4) float64 array. Unit norm is checked against
    eps_unit; duplicate detection and the n >= 5 requirement belong to convex_hull.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    points: np.ndarray
    eps_unit: float = 1e-9

    @field_validator("points", mode="before")
    @classmethod
    def _as_array(cls, value):
        array = np.array(value, dtype=float)
        if array.ndim != 2 or array.shape[1] != 4:
            raise ValueError(f"points must have shape (n, 4), got {array.shape}")
        if len(array) < 2:
            raise ValueError("a point cloud needs at least two points")
        if not np.all(np.isfinite(array)):
            raise ValueError("all coordinates must be finite")
        array.setflags(write=False)
        return array

    @model_validator(mode="after")
    def _on_unit_sphere(self):
        deviation = np.abs(np.linalg.norm(self.points, axis=1) - 1.0)
        worst = int(np.argmax(deviation))
        if deviation[worst] > self.eps_unit:
            raise ValueError(
                f"point {worst} has norm off by {deviation[worst]:.3e} (eps_unit={self.eps_unit:g})"
            )
        return self

    @field_serializer("points")
    def _points_to_list(self, points: np.ndarray):
        return points.tolist()

    @property
    def n(self) -> int:
        return len(self.points)

    def gram(self) -> np.ndarray:
        return self.points @ self.points.T

    def __len__(self) -> int:
        return self.n


PointsLike = Union[PointCloud, np.ndarray]


def as_array(points: PointsLike) -> np.ndarray:
    """Coordinates of a PointCloud, or an arbitrary (n, 4) array such as polar-dual vertices."""
    if isinstance(points, PointCloud):
        return points.points
    return np.asarray(points, dtype=float)
