"""Self-inverse Hamiltonians H = X_A ⊗ X_B and capacity-rate bounds."""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .core import BipartitePureState, DensityOperator, DomainError, hermitize, log_scale
from .dynamics import grid_argmax, maximize_scalar

INVOLUTION_TOL = 1e-10


@dataclass(frozen=True)
class SelfInverseHamiltonian:
    """Product of Hermitian involutions, so that H^2 = identity."""

    x_a: np.ndarray
    x_b: np.ndarray

    def matrix(self) -> np.ndarray:
        return np.kron(self.x_a, self.x_b)

    def unitary(self, t: float) -> np.ndarray:
        """U(t) = cos(t) I - i sin(t) H, exact for involutory H."""
        d = self.x_a.shape[0] * self.x_b.shape[0]
        return np.cos(t) * np.eye(d) - 1j * np.sin(t) * self.matrix()


def _check_involution(x: np.ndarray, name: str) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise DomainError(f"{name} must be a square matrix")
    if np.abs(x - x.conj().T).max() > INVOLUTION_TOL:
        raise DomainError(f"{name} is not Hermitian")
    dev = np.abs(x @ x - np.eye(x.shape[0])).max()
    if dev > INVOLUTION_TOL:
        raise DomainError(f"{name} is not involutory (|X^2 - I| = {dev:.3e})")
    return x


def build_self_inverse(x_a, x_b) -> SelfInverseHamiltonian:
    """Validated H = X_A ⊗ X_B with each factor Hermitian and its own inverse."""
    return SelfInverseHamiltonian(_check_involution(x_a, "X_A"), _check_involution(x_b, "X_B"))


def evolve_self_inverse(hamiltonian: SelfInverseHamiltonian, psi0: BipartitePureState, t: float) -> BipartitePureState:
    """Closed-form evolution cos(t)|psi> - i sin(t) H|psi>; period 2 pi."""
    h = hamiltonian.matrix()
    if h.shape[0] != psi0.dim:
        raise DomainError("Hamiltonian and state dimensions do not match")
    amps = np.cos(t) * psi0.amplitudes - 1j * np.sin(t) * (h @ psi0.amplitudes)
    amps = amps / np.linalg.norm(amps)
    return BipartitePureState(amps, psi0.d_a, psi0.d_b)


def liouville_rhs(hamiltonian, rho: DensityOperator) -> np.ndarray:
    """-i[H, rho]: the generator of the density-operator flow.  Traceless Hermitian."""
    h = hamiltonian.matrix() if isinstance(hamiltonian, SelfInverseHamiltonian) else np.asarray(hamiltonian, dtype=complex)
    if h.shape != rho.matrix.shape:
        raise DomainError("Hamiltonian and state dimensions do not match")
    comm = h @ rho.matrix - rho.matrix @ h
    return hermitize(-1j * comm)


def liouville_rhs_reduced(hamiltonian, rho: DensityOperator, keep: str) -> np.ndarray:
    """Partial trace of -i[H, rho] over the complementary subsystem."""
    d_a, d_b = rho.split()
    full = liouville_rhs(hamiltonian, rho).reshape(d_a, d_b, d_a, d_b)
    if keep == "A":
        return np.einsum("abcb->ac", full)
    if keep == "B":
        return np.einsum("abad->bd", full)
    raise DomainError(f"keep must be 'A' or 'B', got {keep!r}")


@functools.cache
def _max_entropy_rate_constant_nats() -> float:
    def f(x):
        x = np.asarray(x, dtype=float)
        inner = (x > 0.0) & (x < 1.0)
        safe = np.where(inner, x, 0.5)
        val = 2.0 * np.sqrt(safe * (1.0 - safe)) * np.abs(np.log(safe / (1.0 - safe)))
        return np.where(inner, val, 0.0)

    x0, _ = grid_argmax(f, 0.0, 1.0, 1_000_000)
    span = 2e-6
    _, val = maximize_scalar(lambda x: float(f(x)), x0 - span, x0 + span, tol=1e-13)
    return float(val)


def max_entropy_rate_constant(base="e") -> float:
    """2 max_x sqrt(x(1-x)) |log(x/(1-x))|: the self-inverse entanglement-rate cap.

    Grid scan (1e6 points) plus golden-section refinement; the maximization is
    done once in natural log and converted, so the two bases agree exactly up
    to the ln(2) factor.
    """
    return _max_entropy_rate_constant_nats() / log_scale(base)


def operator_norm(hamiltonian) -> float:
    """Largest absolute eigenvalue of a Hermitian matrix (Schatten-∞ norm)."""
    h = hamiltonian.matrix() if isinstance(hamiltonian, SelfInverseHamiltonian) else np.asarray(hamiltonian, dtype=complex)
    return float(np.abs(np.linalg.eigvalsh(h)).max())


@dataclass(frozen=True)
class CapacityRateBounds:
    """The chain of upper bounds on |d/dt C_E|, loosest last."""

    entanglement_rate_bound: float   # 2 |Gamma| (1 + log d_A)
    speed_bound: float               # 2 sqrt(C) V (1 + log d_A)
    norm_bound: float                # 2 c ||H|| log d (1 + log d_A)
    self_inverse_bound: float        # 2 beta (1 + log d)


def capacity_rate_bounds(d_a: int, *, gamma: float, capacity: float, speed: float,
                         op_norm: float, c: float = 1.0, d: int, base="e") -> CapacityRateBounds:
    """Evaluate all four capacity-rate bounds for comparison with a measured rate.

    ``c`` is the ancilla-unassisted rate constant in [0, 1]; 1 is the most
    conservative choice.
    """
    if min(gamma if gamma >= 0 else -gamma, capacity, speed, op_norm) < 0:
        raise DomainError("bound inputs must be non-negative")
    if not 0.0 <= c <= 1.0:
        raise DomainError("c must lie in [0, 1]")
    scale = log_scale(base)
    log_da = np.log(d_a) / scale
    log_d = np.log(d) / scale
    beta = max_entropy_rate_constant(base)
    return CapacityRateBounds(
        entanglement_rate_bound=float(abs(2.0 * gamma * (1.0 + log_da))),
        speed_bound=float(2.0 * np.sqrt(capacity) * speed * (1.0 + log_da)),
        norm_bound=float(2.0 * c * op_norm * log_d * (1.0 + log_da)),
        self_inverse_bound=float(2.0 * beta * (1.0 + log_d)),
    )
