from .base_flow import (
    FlowConfig,
    FlowOutcome,
    FlowState,
    contact_degrees,
    contact_pairs,
    descend,
    interior_margin,
    make_rng,
    pair_angles,
    polish,
    random_start,
    run_flow,
    smoothed_diameter,
    smoothed_value,
    subgradient_norm,
)
from .classify import (
    SweepSummary,
    TableRow,
    certificate_checks,
    classify,
    in_range,
    run_trial,
    summarize,
    sweep,
    trial_seed,
)
