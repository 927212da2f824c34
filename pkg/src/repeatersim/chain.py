"""End-to-end repeater-chain engine.

Orchestrates parallel elementary-link generation, threshold-triggered BBPSSW
purification, and log-depth parallel swap rounds under continuous-time
depolarizing memory noise, with a global simulation clock.

Timing model (paper_faithful): every swap round lasts o + tau_seg and the
inputs to the round decohere for that duration before projection. Each
purification round also occupies o + tau_seg of wall-clock time; the memory
idling it inflicts on the stored pair is the local-operation window o per
round (during the classical-signaling part the post-measurement state is
already fixed by the reset map). Purification round counts are planned with
the ideal lower-bound recursion (success probability 1, no decoherence) and
then executed under decoherence, so a noisy chain can fall short of its
target even after the planned rounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .exceptions import (
    BoundaryNotFoundError,
    PurificationStallError,
    UnreachableFidelityError,
)
from .link import LinkParams, expected_attempts, link_params, sample_attempts
from .purification import (
    CostLedger,
    PurificationPlan,
    bbpssw_step,
    cost_total,
    plan_thresholds,
    reset_after_purification,
    rounds_to_reach,
    swap_fidelity_werner,
)
from .quantum import (
    WernerForm,
    bell_phi_plus,
    decay_factor,
    depolarize,
    fidelity_phi_plus,
    swap_links,
)

ATTEMPT_MODES = ("sampled", "expected")
PURIFICATION_MODES = ("deterministic", "stochastic")
PAIRING_MODES = ("pumping", "nesting")
TIME_MODELS = ("paper_faithful", "distance_aware")
REPRESENTATIONS = ("matrix", "werner_scalar")

_MAX_STOCHASTIC_ATTEMPTS = 4096


@dataclass(frozen=True)
class ChainConfig:
    """Full experiment configuration for one repeater-chain run."""

    total_length: float  # km, Alice to Bob
    n_nodes: int  # repeaters, excluding the end users
    t_depol: float  # ms, +inf allowed
    f_target: float
    op_latency: float = 0.01  # ms
    light_speed: float = 2e8  # m/s
    attenuation_length: float = 22.5  # km
    seed: int = 0
    attempt_mode: str = "expected"
    purification_success_mode: str = "deterministic"
    pairing_mode: str = "pumping"
    time_model: str = "paper_faithful"
    representation: str = "matrix"
    purification_enabled: bool = True
    round_cap: int = 64

    def validate(self) -> None:
        if self.total_length <= 0:
            raise ValueError("total_length must be positive")
        if self.n_nodes < 0:
            raise ValueError("n_nodes must be nonnegative")
        if not self.t_depol > 0:
            raise ValueError("t_depol must be positive (use inf for no noise)")
        if self.f_target <= 0.25:
            raise ValueError("f_target must exceed 0.25")
        if self.f_target >= 1.0:
            raise ValueError("f_target must be below 1")
        if self.op_latency < 0:
            raise ValueError("op_latency must be nonnegative")
        if self.light_speed <= 0:
            raise ValueError("light_speed must be positive")
        if self.attenuation_length <= 0:
            raise ValueError("attenuation_length must be positive")
        if self.attempt_mode not in ATTEMPT_MODES:
            raise ValueError(f"attempt_mode must be one of {ATTEMPT_MODES}")
        if self.purification_success_mode not in PURIFICATION_MODES:
            raise ValueError(f"purification_success_mode must be one of {PURIFICATION_MODES}")
        if self.pairing_mode not in PAIRING_MODES:
            raise ValueError(f"pairing_mode must be one of {PAIRING_MODES}")
        if self.time_model not in TIME_MODELS:
            raise ValueError(f"time_model must be one of {TIME_MODELS}")
        if self.representation not in REPRESENTATIONS:
            raise ValueError(f"representation must be one of {REPRESENTATIONS}")
        if self.round_cap < 1:
            raise ValueError("round_cap must be at least 1")

    @property
    def n_segments(self) -> int:
        return self.n_nodes + 1

    @property
    def segment_length(self) -> float:
        return self.total_length / self.n_segments

    @property
    def k_rounds(self) -> int:
        return math.ceil(math.log2(self.n_segments)) if self.n_segments > 1 else 0

    def link(self) -> LinkParams:
        return link_params(self.segment_length, self.attenuation_length, self.light_speed)


@dataclass
class LinkState:
    """An entangled link between two chain nodes (0 = Alice)."""

    left_node: int
    right_node: int
    state: np.ndarray | WernerForm
    last_touched: float = 0.0


@dataclass(frozen=True)
class LayerTrace:
    """Per-swap-round diagnostics."""

    pre_purification_fidelity: float
    rounds_applied: int
    post_swap_fidelity: float


@dataclass(frozen=True)
class RunMetrics:
    """The three evaluation metrics plus per-layer diagnostics."""

    generation_time: float  # ms
    final_fidelity: float
    cost: CostLedger
    swap_rounds: int
    per_layer_trace: list[LayerTrace] = field(default_factory=list)
    feasible: bool = True


def _fidelity(state) -> float:
    if isinstance(state, WernerForm):
        return state.fidelity
    return fidelity_phi_plus(state)


def _decohere(state, t: float, t_depol: float):
    if t == 0.0:
        return state
    if isinstance(state, WernerForm):
        return WernerForm.from_omega(state.omega * decay_factor(t, t_depol))
    return depolarize(state, t, t_depol)


def _reset(fidelity: float, representation: str):
    if representation == "werner_scalar":
        return WernerForm.from_fidelity(fidelity)
    return reset_after_purification(fidelity)


def _swap(s1, s2):
    if isinstance(s1, WernerForm):
        return WernerForm.from_omega(s1.omega * s2.omega)
    return swap_links(s1, s2)


def effective_threshold(f_min: float, round_decay: float) -> float:
    """Purification target that still meets f_min after the imminent round decay."""
    if round_decay >= 1.0:
        return f_min
    eff = (f_min - (1.0 - round_decay) / 4.0) / round_decay
    return min(max(eff, f_min), 1.0 - 1e-6)


def run_generation_phase(config: ChainConfig):
    """Establish all elementary links in parallel.

    Returns (links, sync_time). Every segment attempts independently; the
    slower links set the common clock and the earlier ones decohere while
    waiting (synchronized-wait model).
    """
    params = config.link()
    n = config.n_segments
    streams = [np.random.default_rng(s) for s in np.random.SeedSequence(config.seed).spawn(n)]
    scalar = config.representation == "werner_scalar"
    completions = []
    for i in range(n):
        if config.attempt_mode == "sampled":
            attempts = float(sample_attempts(params.p_succ, streams[i]))
        else:
            attempts = expected_attempts(params.p_succ)
        completions.append(attempts * params.tau)
    sync_time = max(completions)
    links = []
    for i, completion in enumerate(completions):
        if scalar:
            state = WernerForm.from_omega(decay_factor(params.tau, config.t_depol))
        else:
            state = depolarize(bell_phi_plus(), params.tau, config.t_depol)
        state = _decohere(state, sync_time - completion, config.t_depol)
        links.append(LinkState(left_node=i, right_node=i + 1, state=state, last_touched=sync_time))
    return links, sync_time


def _purify_link(f: float, target: float, config: ChainConfig, rng) -> tuple[float, int, int, bool]:
    """Pump one link toward target with ideally planned round counts.

    Returns (fidelity, rounds executed, sacrificial pairs consumed, stalled).
    Each executed round applies the BBPSSW map, then the op-window memory
    decay; in stochastic mode failed rounds are retried, consuming extra
    pairs and counting as executed rounds for timing.
    """
    stalled = False
    try:
        planned = rounds_to_reach(f, target, config.round_cap)
    except UnreachableFidelityError:
        return f, 0, 0, True
    except PurificationStallError:
        planned = config.round_cap
        stalled = True
    op_decay = decay_factor(config.op_latency, config.t_depol)
    executed = 0
    consumed = 0
    for _ in range(planned):
        if config.purification_success_mode == "stochastic":
            succeeded = False
            while not succeeded:
                f_new, p_succ = bbpssw_step(f)
                consumed += 1
                executed += 1
                if consumed > _MAX_STOCHASTIC_ATTEMPTS:
                    return f, executed, consumed, True
                if rng.random() < p_succ:
                    f = f_new
                    succeeded = True
                f = op_decay * f + (1.0 - op_decay) / 4.0
        else:
            f, _ = bbpssw_step(f)
            consumed += 1
            executed += 1
            f = op_decay * f + (1.0 - op_decay) / 4.0
    return f, executed, consumed, stalled


def _round_duration(config: ChainConfig, links: list[LinkState], seg_tau: float) -> float:
    if config.time_model == "paper_faithful":
        return config.op_latency + seg_tau
    # distance_aware: classical signaling over the longest span swapped this round
    spans = [
        (links[i + 1].right_node - links[i].left_node) * config.segment_length
        for i in range(0, len(links) - 1, 2)
    ]
    return config.op_latency + max(spans) * 1e6 / config.light_speed


def run_swap_rounds(
    links: list[LinkState],
    plan: PurificationPlan,
    config: ChainConfig,
    start_time: float = 0.0,
    rng=None,
):
    """Run purification plus parallel swapping until one Alice-Bob link remains.

    Each round: links below the decay-compensated layer threshold are
    purified; all links then decohere for the round duration and adjacent
    pairs are swapped left to right, an odd leftover passing through.
    Returns (final link, RunMetrics).
    """
    if rng is None:
        rng = np.random.default_rng(np.random.SeedSequence(config.seed).spawn(config.n_segments + 1)[-1])
    links = list(links)
    k_total = plan.k_layers
    seg_tau = config.link().tau
    o = config.op_latency
    t_depol = config.t_depol
    clock = start_time
    layer_costs: list[float] = []
    traces: list[LayerTrace] = []
    stalled_any = False
    for k in range(k_total):
        round_dur = _round_duration(config, links, seg_tau)
        lam_round = decay_factor(round_dur, t_depol)
        target = effective_threshold(plan.layer_min_fidelity[k], lam_round)
        pre_fid = min(_fidelity(link.state) for link in links)
        rounds_by_link = []
        pairs_this_layer = 0.0
        for link in links:
            f = _fidelity(link.state)
            executed = 0
            consumed = 0
            if config.purification_enabled and f < target:
                f, executed, consumed, stalled = _purify_link(f, target, config, rng)
                stalled_any = stalled_any or stalled
                if consumed:
                    link.state = _reset(f, config.representation)
            rounds_by_link.append(executed)
            if config.pairing_mode == "nesting":
                pairs_this_layer += 2.0 ** consumed
            else:
                pairs_this_layer += consumed + 1.0
        layer_costs.append(pairs_this_layer)
        max_rounds = max(rounds_by_link)
        purification_time = max_rounds * (o + seg_tau)
        # links that finished purifying early idle at the op window per missing round
        for link, executed in zip(links, rounds_by_link):
            link.state = _decohere(link.state, (max_rounds - executed) * o, t_depol)
        clock += purification_time
        # swap phase: inputs decohere for the round duration, then project
        clock += round_dur
        for link in links:
            link.state = _decohere(link.state, round_dur, t_depol)
            link.last_touched = clock
        next_links = []
        i = 0
        while i + 1 < len(links):
            left, right = links[i], links[i + 1]
            next_links.append(
                LinkState(
                    left_node=left.left_node,
                    right_node=right.right_node,
                    state=_swap(left.state, right.state),
                    last_touched=clock,
                )
            )
            i += 2
        if i < len(links):
            next_links.append(links[i])
        links = next_links
        traces.append(
            LayerTrace(
                pre_purification_fidelity=pre_fid,
                rounds_applied=max_rounds,
                post_swap_fidelity=min(_fidelity(link.state) for link in links),
            )
        )
    layer_costs.append(float(len(links)))
    final = links[0]
    f_end = _fidelity(final.state)
    metrics = RunMetrics(
        generation_time=clock,
        final_fidelity=f_end,
        cost=cost_total(layer_costs),
        swap_rounds=k_total,
        per_layer_trace=traces,
        feasible=(f_end >= config.f_target) and not stalled_any,
    )
    return final, metrics


def build_plan(config: ChainConfig, input_fidelity: float | None = None) -> PurificationPlan:
    """Thresholds for the chain's swap depth, plus ideal round counts if an
    input fidelity is given."""
    plan = plan_thresholds(config.f_target, config.k_rounds)
    ideal = None
    if input_fidelity is not None:
        ideal = []
        f = input_fidelity
        for threshold in plan.layer_min_fidelity[: plan.k_layers]:
            rounds = rounds_to_reach(f, threshold, config.round_cap) if f < threshold else 0
            for _ in range(rounds):
                f, _ = bbpssw_step(f)
            f = swap_fidelity_werner(f)
            ideal.append(rounds)
    return replace(plan, n_ent=config.n_segments, ideal_rounds=ideal)


def run_chain(config: ChainConfig) -> RunMetrics:
    """Full run: generation, planning, purification, and swapping."""
    config.validate()
    links, sync_time = run_generation_phase(config)
    plan = build_plan(config)
    rng = np.random.default_rng(
        np.random.SeedSequence(config.seed).spawn(config.n_segments + 1)[-1]
    )
    _, metrics = run_swap_rounds(links, plan, config, start_time=sync_time, rng=rng)
    return metrics


def noise_tolerance_search(
    config_template: ChainConfig, f_target: float, grid: list[float]
) -> float:
    """Smallest t_depol on the grid whose run meets f_target end to end.

    Forces expected attempts and deterministic purification so the search is
    reproducible. Raises BoundaryNotFoundError if no grid point is feasible.
    """
    if len(grid) < 2:
        raise ValueError("grid needs at least 2 entries")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be sorted ascending")
    for t_depol in grid:
        config = replace(
            config_template,
            t_depol=t_depol,
            f_target=f_target,
            attempt_mode="expected",
            purification_success_mode="deterministic",
        )
        metrics = run_chain(config)
        if metrics.feasible and metrics.final_fidelity >= f_target:
            return t_depol
    raise BoundaryNotFoundError(f"no feasible t_depol in grid {grid}")
