from .diameter_graph import (
    DiameterGraph,
    check_f03_double_count,
    d_matches_c,
    diameter_graph,
    spherical_pairs,
)
