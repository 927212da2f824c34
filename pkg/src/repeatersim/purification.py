"""BBPSSW purification recursion, threshold planning, and pair-cost accounting.

The fidelity map and its success probability act on Werner-state fidelities.
Thresholds are obtained by inverting the Werner swap formula backward across
the swap layers; costs follow both the partial-product sum and the bare
per-layer product readings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import InfeasiblePlanError, PurificationStallError, UnreachableFidelityError
from .quantum import werner

DEFAULT_ROUND_CAP = 64
STALL_IMPROVEMENT = 1e-9

# Near F = 1 one BBPSSW round closes about a third of the remaining gap, so
# the stall guard above caps reachable fidelity around 1 - 3e-9; thresholds
# beyond this are unattainable by pumping.
MAX_REACHABLE_FIDELITY = 1.0 - 1e-9


def _check_werner_fidelity(f: float, name: str = "fidelity") -> None:
    if not 0.25 <= f <= 1.0:
        raise ValueError(f"{name} must lie in [0.25, 1], got {f}")


def bbpssw_step(f: float) -> tuple[float, float]:
    """One BBPSSW round on two copies at fidelity f.

    Returns (new fidelity, success probability); the success probability is
    the denominator of the fidelity map.
    """
    _check_werner_fidelity(f)
    num = f * f + (1.0 - f) ** 2 / 9.0
    p_succ = f * f + (2.0 / 3.0) * f * (1.0 - f) + (5.0 / 9.0) * (1.0 - f) ** 2
    return num / p_succ, p_succ


def reset_after_purification(f_new: float) -> np.ndarray:
    """Post-purification state F'|Phi+><Phi+| + (1-F')/3 (I4 - |Phi+><Phi+|)."""
    _check_werner_fidelity(f_new)
    return werner((4.0 * f_new - 1.0) / 3.0)


def swap_fidelity_werner(f: float) -> float:
    """Fidelity after swapping two Werner pairs of fidelity f: (1 + (4f-1)^2/3)/4."""
    _check_werner_fidelity(f)
    return (1.0 + (4.0 * f - 1.0) ** 2 / 3.0) / 4.0


def threshold_for_target(f_target: float) -> float:
    """Minimum pre-swap fidelity so one swap yields f_target: (sqrt(12F-3)+1)/4."""
    _check_werner_fidelity(f_target, "f_target")
    return (math.sqrt(12.0 * f_target - 3.0) + 1.0) / 4.0


@dataclass(frozen=True)
class PurificationPlan:
    """Backward-iterated fidelity requirements for a chain of swap layers.

    layer_min_fidelity[k] is the requirement entering swap round k;
    the last entry is the end-to-end target itself.
    """

    k_layers: int
    layer_min_fidelity: list[float]
    n_ent: int | None = None
    ideal_rounds: list[int] | None = None


def plan_thresholds(f_target: float, k_layers: int) -> PurificationPlan:
    """Iterate the swap threshold backward across k_layers swap rounds."""
    if not 0.25 <= f_target < 1.0:
        raise ValueError(f"f_target must lie in [0.25, 1), got {f_target}")
    if k_layers < 0:
        raise ValueError(f"k_layers must be nonnegative, got {k_layers}")
    thresholds = [f_target]
    for _ in range(k_layers):
        t = threshold_for_target(thresholds[0])
        if t >= MAX_REACHABLE_FIDELITY:
            raise InfeasiblePlanError(
                f"required pre-swap fidelity {t:.12f} is beyond the reach of purification"
            )
        thresholds.insert(0, t)
    return PurificationPlan(k_layers=k_layers, layer_min_fidelity=thresholds)


def rounds_to_reach(f_in: float, f_min: float, round_cap: int = DEFAULT_ROUND_CAP) -> int:
    """Minimum BBPSSW rounds to raise f_in to at least f_min.

    Lower-bound planning: success probability is taken as 1 and no
    decoherence is applied between rounds; each round consumes one
    sacrificial copy at the current fidelity (entanglement pumping).
    """
    _check_werner_fidelity(f_in, "f_in")
    if round_cap < 1:
        raise ValueError(f"round_cap must be at least 1, got {round_cap}")
    f = f_in
    rounds = 0
    while f < f_min:
        if f <= 0.5:
            raise UnreachableFidelityError(
                f"fidelity {f:.6f} is at or below the 0.5 fixed point; "
                f"purification cannot reach {f_min:.6f}"
            )
        if rounds >= round_cap:
            raise PurificationStallError(
                f"round cap {round_cap} exceeded before reaching {f_min:.6f}"
            )
        f_new, _ = bbpssw_step(f)
        if f_new - f < STALL_IMPROVEMENT:
            raise PurificationStallError(
                f"improvement below {STALL_IMPROVEMENT} at fidelity {f:.9f}"
            )
        f = f_new
        rounds += 1
    return rounds


@dataclass(frozen=True)
class CostLedger:
    """Werner-pair accounting across swap layers.

    total is the sum of partial products (the recursive per-node reading);
    chain_product is the bare product of the per-layer pair counts. The two
    readings disagree for nontrivial costs and are both reported.
    """

    layer_costs: list[float]
    partial_products: list[float] = field(default_factory=list)
    total: float = 0.0
    chain_product: float = 1.0


def cost_total(layer_costs: list[float]) -> CostLedger:
    """Fold per-layer pair counts into both cost readings."""
    if not layer_costs:
        raise ValueError("layer_costs must be non-empty")
    if any(c < 1.0 for c in layer_costs):
        raise ValueError("every layer cost must be at least 1")
    partials = []
    running = 1.0
    for c in layer_costs:
        running *= c
        partials.append(running)
    return CostLedger(
        layer_costs=list(layer_costs),
        partial_products=partials,
        total=float(sum(partials)),
        chain_product=float(partials[-1]),
    )
