"""Barrett-Kok elementary-link physics.

Per-attempt latency tau = L/c (round-trip herald over a midpoint station),
transmissivity eta = exp(-L/L_att), success probability eta^2/2, and the
geometric attempt model. All times are in milliseconds, lengths in km,
light speed in m/s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quantum import bell_phi_plus, depolarize


@dataclass(frozen=True)
class LinkParams:
    """Physics of one elementary fiber segment."""

    segment_length: float  # km
    eta: float
    p_succ: float
    tau: float  # ms per attempt


@dataclass(frozen=True)
class LinkSample:
    """One sampled link-generation outcome: attempt count and elapsed time."""

    attempts: int
    elapsed: float

    def __post_init__(self):
        if self.attempts < 1:
            raise ValueError("attempts must be at least 1")


def link_params(segment_length: float, l_att: float, c: float) -> LinkParams:
    """Derive eta, p_succ, and tau for a segment of the given length."""
    if segment_length <= 0:
        raise ValueError(f"segment_length must be positive, got {segment_length}")
    if l_att <= 0:
        raise ValueError(f"l_att must be positive, got {l_att}")
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    eta = math.exp(-segment_length / l_att)
    return LinkParams(
        segment_length=segment_length,
        eta=eta,
        p_succ=eta * eta / 2.0,
        tau=segment_length * 1e6 / c,  # km -> m, s -> ms
    )


def sample_attempts(p: float, rng: np.random.Generator) -> int:
    """Draw the attempt count until first success, Geometric(p) on {1, 2, ...}."""
    if not 0.0 < p <= 1.0:
        raise ValueError(f"success probability must lie in (0, 1], got {p}")
    return int(rng.geometric(p))


def expected_attempts(p: float) -> float:
    """Mean attempt count 1/p (real-valued, for deterministic runs)."""
    if not 0.0 < p <= 1.0:
        raise ValueError(f"success probability must lie in (0, 1], got {p}")
    return 1.0 / p


def generate_raw_link(
    params: LinkParams,
    t_depol: float,
    mode: str = "expected",
    rng: np.random.Generator | None = None,
):
    """Produce one heralded elementary link.

    Returns (state, completion_time). Failed attempts discard the memories,
    so only the final herald wait of tau decoheres the stored pair; the
    attempts before it contribute time only.
    """
    if mode == "sampled":
        if rng is None:
            raise ValueError("sampled mode requires an rng")
        attempts = float(sample_attempts(params.p_succ, rng))
    elif mode == "expected":
        attempts = expected_attempts(params.p_succ)
    else:
        raise ValueError(f"unknown attempt mode {mode!r}")
    completion_time = attempts * params.tau
    state = depolarize(bell_phi_plus(), params.tau, t_depol)
    return state, completion_time
