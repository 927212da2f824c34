"""Two-qubit density-matrix primitives.

Basis order is |00>, |01>, |10>, |11> with the left qubit most significant.
Joint four-qubit states used for swapping are ordered A, B1, B2, C, so the
Bell projector acts on the middle pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateStateError

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10

_I4 = np.eye(4, dtype=complex)

_phi_plus_vec = np.zeros(4, dtype=complex)
_phi_plus_vec[0] = _phi_plus_vec[3] = 1.0 / math.sqrt(2.0)
_PHI_PLUS = np.outer(_phi_plus_vec, _phi_plus_vec.conj())


def bell_phi_plus() -> np.ndarray:
    """Density matrix of |Phi+> = (|00> + |11>)/sqrt(2)."""
    return _PHI_PLUS.copy()


def maximally_mixed() -> np.ndarray:
    """The two-qubit maximally mixed state I4/4."""
    return _I4 / 4.0


def validate_state(rho: np.ndarray) -> None:
    """Check the 4x4 density-matrix invariants; raise ValueError on violation.

    Hermitian within 1e-12 elementwise, unit trace within 1e-12, and all
    eigenvalues above -1e-10.
    """
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITICITY_TOL:
        raise ValueError("matrix is not Hermitian within tolerance")
    if abs(np.trace(rho) - 1.0) > TRACE_TOL:
        raise ValueError(f"trace is {np.trace(rho):.15g}, expected 1")
    eigs = np.linalg.eigvalsh(rho)
    if eigs.min() < EIGENVALUE_FLOOR:
        raise ValueError(f"matrix is not positive semidefinite (min eig {eigs.min():.3e})")


def werner(omega: float) -> np.ndarray:
    """Werner mixture omega*|Phi+><Phi+| + (1-omega)*I4/4."""
    if not 0.0 <= omega <= 1.0:
        raise ValueError(f"omega must lie in [0, 1], got {omega}")
    return omega * _PHI_PLUS + (1.0 - omega) * _I4 / 4.0


def depolarize(rho: np.ndarray, t: float, t_depol: float) -> np.ndarray:
    """Continuous-time depolarizing channel for a memory wait of t ms.

    rho(t) = exp(-t/T) rho + (1 - exp(-t/T)) I4/4.  t_depol may be +inf,
    meaning the identity channel.
    """
    if t < 0:
        raise ValueError(f"wait time must be nonnegative, got {t}")
    if not t_depol > 0:
        raise ValueError(f"t_depol must be positive, got {t_depol}")
    lam = decay_factor(t, t_depol)
    return lam * np.asarray(rho) + (1.0 - lam) * _I4 / 4.0


def decay_factor(t: float, t_depol: float) -> float:
    """exp(-t/t_depol), handling t_depol = +inf as no decay."""
    if math.isinf(t_depol):
        return 1.0
    return math.exp(-t / t_depol)


def fidelity_phi_plus(rho: np.ndarray) -> float:
    """Overlap <Phi+|rho|Phi+>, the corner-entry combination of rho."""
    rho = np.asarray(rho)
    val = 0.5 * (rho[0, 0] + rho[0, 3] + rho[3, 0] + rho[3, 3])
    if abs(val.imag) > 1e-12:
        raise ValueError(f"fidelity has non-negligible imaginary part {val.imag:.3e}")
    return float(min(max(val.real, 0.0), 1.0))


@dataclass(frozen=True)
class WernerForm:
    """Werner weight omega and the matching fidelity F = (3*omega + 1)/4."""

    omega: float
    fidelity: float

    def __post_init__(self):
        if not 0.0 <= self.omega <= 1.0:
            raise ValueError(f"omega must lie in [0, 1], got {self.omega}")
        if abs(self.fidelity - (3.0 * self.omega + 1.0) / 4.0) > 1e-12:
            raise ValueError("fidelity does not match (3*omega + 1)/4")

    @classmethod
    def from_omega(cls, omega: float) -> "WernerForm":
        return cls(omega, (3.0 * omega + 1.0) / 4.0)

    @classmethod
    def from_fidelity(cls, fidelity: float) -> "WernerForm":
        omega = min(max((4.0 * fidelity - 1.0) / 3.0, 0.0), 1.0)
        return cls(omega, (3.0 * omega + 1.0) / 4.0)

    def to_matrix(self) -> np.ndarray:
        return werner(self.omega)


def to_werner_form(rho: np.ndarray) -> WernerForm:
    """Werner parameters of rho; exact for states produced by this simulator."""
    return WernerForm.from_fidelity(fidelity_phi_plus(rho))


_I2 = np.eye(2, dtype=complex)
_SWAP_PROJECTOR = np.kron(np.kron(_I2, _PHI_PLUS), _I2)


def swap_links(rho_ab: np.ndarray, rho_bc: np.ndarray) -> np.ndarray:
    """Entanglement swap: project the middle pair of A,B1,B2,C onto |Phi+>.

    Forms rho_ab (x) rho_bc, applies P = I (x) |Phi+><Phi+| (x) I,
    renormalizes, and traces out B1, B2. Restricted to the |Phi+> outcome;
    the other Bell outcomes differ only by local Pauli corrections.
    """
    joint = np.kron(np.asarray(rho_ab), np.asarray(rho_bc))
    projected = _SWAP_PROJECTOR @ joint @ _SWAP_PROJECTOR
    norm = np.trace(projected).real
    if norm < 1e-15:
        raise DegenerateStateError(f"projected trace {norm:.3e} too small to renormalize")
    projected /= norm
    # Partial trace over qubits 1 and 2 (row/col axes split as 2x2x2x2 each).
    r8 = projected.reshape(2, 2, 2, 2, 2, 2, 2, 2)
    reduced = np.einsum("aklbcklf->abcf", r8).reshape(4, 4)
    return reduced
