from .checks import (
    Theorem1Result,
    VerifyReport,
    dual_g2_check,
    facet_identities,
    g2_census,
    g2_flag,
    kalai_terms,
    stanley_check,
    theorem1_check,
    verify_polytope,
)
