"""Discrete-event simulator for chain-based quantum repeaters.

Elementary links are heralded over fiber segments (Barrett-Kok style),
boosted by BBPSSW entanglement purification, and fused by log-depth
entanglement swapping, all under continuous-time depolarizing memory noise.
"""

from .chain import (
    ChainConfig,
    LayerTrace,
    LinkState,
    RunMetrics,
    build_plan,
    effective_threshold,
    noise_tolerance_search,
    run_chain,
    run_generation_phase,
    run_swap_rounds,
)
from .exceptions import (
    BoundaryNotFoundError,
    DegenerateStateError,
    InfeasiblePlanError,
    PurificationStallError,
    SimulationError,
    UnreachableFidelityError,
)
from .link import (
    LinkParams,
    LinkSample,
    expected_attempts,
    generate_raw_link,
    link_params,
    sample_attempts,
)
from .purification import (
    CostLedger,
    PurificationPlan,
    bbpssw_step,
    cost_total,
    plan_thresholds,
    reset_after_purification,
    rounds_to_reach,
    swap_fidelity_werner,
    threshold_for_target,
)
from .quantum import (
    WernerForm,
    bell_phi_plus,
    decay_factor,
    depolarize,
    fidelity_phi_plus,
    maximally_mixed,
    swap_links,
    to_werner_form,
    validate_state,
    werner,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryNotFoundError",
    "ChainConfig",
    "CostLedger",
    "DegenerateStateError",
    "InfeasiblePlanError",
    "LayerTrace",
    "LinkParams",
    "LinkSample",
    "LinkState",
    "PurificationPlan",
    "PurificationStallError",
    "RunMetrics",
    "SimulationError",
    "UnreachableFidelityError",
    "WernerForm",
    "bbpssw_step",
    "bell_phi_plus",
    "build_plan",
    "cost_total",
    "decay_factor",
    "depolarize",
    "effective_threshold",
    "expected_attempts",
    "fidelity_phi_plus",
    "generate_raw_link",
    "link_params",
    "maximally_mixed",
    "noise_tolerance_search",
    "plan_thresholds",
    "reset_after_purification",
    "rounds_to_reach",
    "run_chain",
    "run_generation_phase",
    "run_swap_rounds",
    "sample_attempts",
    "swap_fidelity_werner",
    "swap_links",
    "threshold_for_target",
    "to_werner_form",
    "validate_state",
    "werner",
]
