import logging
from pathlib import Path
from typing import List, Union

import numpy as np

from ..errors import PointFileError
from ..geometry import PointCloud

logger = logging.getLogger(__name__)

MIN_POINTS = 5


def parse_points(text: str, eps_unit: float = 1e-9) -> PointCloud:
    """
    Parses PointFile text: four whitespace-separated reals per line, '#' comments and
    blank lines ignored.

    Raises:
        PointFileError: with the offending line number for unparseable, non-finite or
            off-sphere rows, and without one when fewer than five points are given.
    """
    rows: List[List[float]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 4:
            raise PointFileError(f"expected 4 coordinates, found {len(tokens)}", line_no)
        try:
            row = [float(t) for t in tokens]
        except ValueError:
            raise PointFileError(f"cannot parse {line!r} as four reals", line_no)
        if not np.all(np.isfinite(row)):
            raise PointFileError("coordinates must be finite", line_no)
        deviation = abs(np.linalg.norm(row) - 1.0)
        if deviation > eps_unit:
            raise PointFileError(f"point is off the unit sphere by {deviation:.3e}", line_no)
        rows.append(row)

    if len(rows) < MIN_POINTS:
        raise PointFileError(f"a point file needs at least {MIN_POINTS} points, found {len(rows)}")
    return PointCloud(points=np.array(rows), eps_unit=eps_unit)


def read_point_file(path: Union[str, Path], eps_unit: float = 1e-9) -> PointCloud:
    path = Path(path)
    try:
        text = path.read_text()
    except (OSError, UnicodeDecodeError) as e:
        raise PointFileError(f"cannot read {path}: {e}")
    cloud = parse_points(text, eps_unit=eps_unit)
    logger.debug(f"read {cloud.n} points from {path}")
    return cloud


def format_points(cloud: PointCloud, comment: str = None) -> str:
    """PointFile text with 17 significant digits per coordinate, enough to round-trip every double."""
    lines = [f"# {comment}"] if comment else []
    lines += [" ".join(f"{x:.17g}" for x in p) for p in cloud.points]
    return "\n".join(lines) + "\n"


def write_point_file(cloud: PointCloud, path: Union[str, Path], comment: str = None) -> None:
    Path(path).write_text(format_points(cloud, comment))
