from .base_polarity import (
    PolarityReport,
    certify_anti_self_polar,
    check_opposition,
    dual_f_vector_reversed,
    dual_lattice,
    opposition_map,
    polar_dual,
)
