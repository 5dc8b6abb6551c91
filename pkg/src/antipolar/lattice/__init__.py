from .face_lattice import (
    FaceLattice,
    FlagStats,
    PolygonCensus,
    build_lattice,
    euler_residual,
    extended_f_vector,
    f_vector,
    flag_f03,
    flag_number,
    flag_stats,
    polygon_census,
)
