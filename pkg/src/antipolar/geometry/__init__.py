from .base_geometry import PointCloud, PointsLike, Vec4, affine_rank, as_array, unit_project, unit_project_rows
from .hull import Facet, convex_hull, hull_facets, merge_coplanar, origin_margin
