"""Simulator-specific error types. Plain ValueError is used for domain errors."""


class SimulationError(Exception):
    """Base class for failures arising during protocol simulation."""


class DegenerateStateError(SimulationError):
    """The swap projection annihilated the state (trace below tolerance)."""


class UnreachableFidelityError(SimulationError):
    """Purification cannot improve the input (at or below the 0.5 fixed point)."""


class PurificationStallError(SimulationError):
    """Purification stopped making progress before reaching the target."""


class InfeasiblePlanError(SimulationError):
    """Backward threshold iteration produced a requirement of 1 or above."""


class BoundaryNotFoundError(SimulationError):
    """No grid point satisfied the target fidelity."""
