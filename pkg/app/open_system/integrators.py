"""
Time-ordered Schroedinger and Lindblad integration on small Hilbert spaces.

Density matrices are vectorized row-major, vec(rho)[i * N + j] = rho[i, j],
so vec(A rho B) = (A (x) B^T) vec(rho).
"""

import logging
from collections.abc import Callable, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from errors import DimensionError, ModelError, NumericalIntegrityError, ResolutionError
from lambda_models import LEVEL_E, LEVEL_G, PulseEnvelope
from quantum_core import (
    TOL,
    ComplexMatrix,
    DensityMatrix,
    as_square,
    is_hermitian,
    matrix_exponential,
    trace_distance,
    unitarity_deviation,
)


HamiltonianFn = Callable[[float], np.ndarray]
Window = tuple[float, float]

DEFAULT_UNITARY_STEPS = 2000
DEFAULT_LINDBLAD_STEPS = 20000

status_logger = logging.getLogger("status_logger")


class DecayModel(BaseModel):
    """
    Spontaneous decay |e> -> |g> with jump operator L = sqrt(gamma)|g><e|.

    The master equation uses 2 L rho L^dagger, so the excited population
    decays as e^{-2 gamma t}.
    """
    model_config = ConfigDict(frozen=True)

    gamma: float = Field(default=1.0, ge=0, description="Decay rate (inverse time).")
    source: int = Field(default=LEVEL_E, ge=0, description="Decaying level.")
    sink: int = Field(default=LEVEL_G, ge=0, description="Level the decay feeds.")

    def jump_operator(self, dim: int) -> ComplexMatrix:
        if dim <= max(self.source, self.sink):
            raise DimensionError(f"decay {self.source}->{self.sink} does not fit {dim} levels")
        op = np.zeros((dim, dim), dtype=np.complex128)
        op[self.sink, self.source] = np.sqrt(self.gamma)
        return op


def _hamiltonian_at(h_of_t: HamiltonianFn, t: float) -> np.ndarray:
    h = as_square(h_of_t(t))
    if not is_hermitian(h):
        raise ModelError(f"Hamiltonian sampled at t={t} is not Hermitian")
    return h


def evolve_unitary_path(h_of_t: HamiltonianFn,
                        window: Window,
                        steps: int = DEFAULT_UNITARY_STEPS) -> tuple[np.ndarray, np.ndarray]:
    """
    Time-ordered propagators U(t_j, t_0) on a uniform grid, one midpoint
    exponential per step.

    Returns:
        tuple: (times of shape (steps + 1,), propagators of shape (steps + 1, N, N)).
    """
    t0, t1 = window
    if steps < 1:
        raise ResolutionError("steps must be positive")
    times = np.linspace(t0, t1, steps + 1)
    dt = (t1 - t0) / steps
    dim = as_square(h_of_t(t0)).shape[0]

    path = np.empty((steps + 1, dim, dim), dtype=np.complex128)
    path[0] = np.eye(dim)
    for j in range(steps):
        h = _hamiltonian_at(h_of_t, t0 + (j + 0.5) * dt)
        path[j + 1] = matrix_exponential(h, -1j * dt) @ path[j]
    return times, path


def evolve_unitary(h_of_t: HamiltonianFn,
                   window: Window,
                   steps: int = DEFAULT_UNITARY_STEPS) -> ComplexMatrix:
    """
    Time-ordered propagator over ``window``.

    Raises:
        ModelError: If a sampled Hamiltonian is not Hermitian.
        NumericalIntegrityError: If the product drifts from unitarity.
    """
    _, path = evolve_unitary_path(h_of_t, window, steps)
    u = path[-1]
    deviation = unitarity_deviation(u)
    if deviation > TOL.evolution_unitary:
        raise NumericalIntegrityError(f"propagator is not unitary (deviation {deviation:.3e})")
    return u


def evolve_commuting(generator, envelope: PulseEnvelope, t0: float, t1: float) -> ComplexMatrix:
    """exp(-i A K) for H(t) = Omega(t) K, with A the closed-form area between t0 and t1."""
    area = envelope.cumulative_area(t1) - envelope.cumulative_area(t0)
    return matrix_exponential(generator, -1j * area)


def dynamical_matrix_elements(h_of_t: HamiltonianFn,
                              window: Window,
                              basis: Sequence[int] = (0, 1),
                              steps: int = DEFAULT_UNITARY_STEPS) -> tuple[np.ndarray, np.ndarray]:
    """
    <psi_k(t)|H(t)|psi_l(t)> with |psi_k(t)> = U(t, t_0)|k> for k, l in ``basis``.

    Returns:
        tuple: (times, array of shape (steps + 1, K, K)).
    """
    times, path = evolve_unitary_path(h_of_t, window, steps)
    idx = np.asarray(basis)
    psi = path[:, :, idx]
    hs = np.stack([as_square(h_of_t(t)) for t in times])
    return times, np.einsum("tnk,tnm,tml->tkl", psi.conj(), hs, psi)


def liouvillian(h, jumps: Sequence[np.ndarray] = ()) -> ComplexMatrix:
    """
    Superoperator of rho' = -i[H, rho] + sum_L (2 L rho L^dagger - L^dagger L rho - rho L^dagger L).
    """
    h = as_square(h)
    eye = np.eye(h.shape[0])
    sup = -1j * (np.kron(h, eye) - np.kron(eye, h.T))
    for op in jumps:
        op = as_square(op)
        ldl = op.conj().T @ op
        sup += 2 * np.kron(op, op.conj()) - np.kron(ldl, eye) - np.kron(eye, ldl.T)
    return sup


def _dissipator(decay: DecayModel | None, dim: int) -> np.ndarray:
    jumps = () if decay is None or decay.gamma == 0 else (decay.jump_operator(dim),)
    return liouvillian(np.zeros((dim, dim)), jumps)


def _lindblad_rhs(rho: np.ndarray, h: np.ndarray, jump: np.ndarray | None) -> np.ndarray:
    out = -1j * (h @ rho - rho @ h)
    if jump is not None:
        ldl = jump.conj().T @ jump
        out += 2 * jump @ rho @ jump.conj().T - ldl @ rho - rho @ ldl
    return out


def evolve_lindblad(h_of_t: HamiltonianFn,
                    decay: DecayModel | None,
                    rho0: DensityMatrix,
                    window: Window,
                    steps: int = DEFAULT_LINDBLAD_STEPS,
                    verify: bool = False) -> DensityMatrix:
    """
    Fixed-step RK4 integration of the master equation.

    The state is symmetrized after every step. With ``verify`` the run is
    repeated at twice the step count and the two results must agree within
    ``TOL.lindblad_trace`` in trace distance.

    Raises:
        ResolutionError: If the trace drifts by more than ``TOL.lindblad_drift``
            or the step-halving check fails.
        NumericalIntegrityError: If the output is not a valid density matrix.
    """
    t0, t1 = window
    if steps < 1:
        raise ResolutionError("steps must be positive")
    dim = rho0.dim
    jump = None if decay is None or decay.gamma == 0 else decay.jump_operator(dim)
    dt = (t1 - t0) / steps
    rho = np.array(rho0.entries, dtype=np.complex128)

    for j in range(steps):
        t = t0 + j * dt
        h_start = _hamiltonian_at(h_of_t, t)
        h_mid = _hamiltonian_at(h_of_t, t + dt / 2)
        h_end = _hamiltonian_at(h_of_t, t + dt)
        k1 = _lindblad_rhs(rho, h_start, jump)
        k2 = _lindblad_rhs(rho + dt / 2 * k1, h_mid, jump)
        k3 = _lindblad_rhs(rho + dt / 2 * k2, h_mid, jump)
        k4 = _lindblad_rhs(rho + dt * k3, h_end, jump)
        rho = rho + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        rho = (rho + rho.conj().T) / 2

        drift = abs(np.trace(rho) - 1.0)
        if drift > TOL.lindblad_drift:
            raise ResolutionError(
                f"trace drifted by {drift:.3e} at t={t + dt:.6g}; increase the number of steps")

    result = DensityMatrix(rho)
    result.check(trace_tol=TOL.lindblad_trace, min_eig=TOL.lindblad_min_eig)

    if verify:
        refined = evolve_lindblad(h_of_t, decay, rho0, window, 2 * steps)
        gap = trace_distance(result, refined)
        if gap > TOL.lindblad_trace:
            raise ResolutionError(f"step halving changed the state by {gap:.3e}; increase the number of steps")
        status_logger.debug("Step-halving check passed (trace distance %.3e)", gap)
    return result


def lindblad_propagator(h_of_t: HamiltonianFn,
                        decay: DecayModel | None,
                        dim: int,
                        window: Window,
                        steps: int = DEFAULT_LINDBLAD_STEPS) -> ComplexMatrix:
    """
    Superoperator Phi with vec(rho(t1)) = Phi vec(rho(t0)), propagated by the
    same fixed-step RK4 scheme as ``evolve_lindblad``.

    Raises:
        ResolutionError: If Phi stops preserving the trace within ``TOL.lindblad_drift``.
    """
    t0, t1 = window
    if steps < 1:
        raise ResolutionError("steps must be positive")
    eye = np.eye(dim)
    dissipator = _dissipator(decay, dim)

    def generator(t: float) -> np.ndarray:
        h = _hamiltonian_at(h_of_t, t)
        return dissipator - 1j * (np.kron(h, eye) - np.kron(eye, h.T))

    dt = (t1 - t0) / steps
    phi = np.eye(dim * dim, dtype=np.complex128)
    trace_row = eye.reshape(-1)

    for j in range(steps):
        t = t0 + j * dt
        g_start, g_mid, g_end = generator(t), generator(t + dt / 2), generator(t + dt)
        k1 = g_start @ phi
        k2 = g_mid @ (phi + dt / 2 * k1)
        k3 = g_mid @ (phi + dt / 2 * k2)
        k4 = g_end @ (phi + dt * k3)
        phi = phi + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)

    drift = float(np.max(np.abs(trace_row @ phi - trace_row)))
    if drift > TOL.lindblad_drift:
        raise ResolutionError(f"propagator trace drift {drift:.3e}; increase the number of steps")
    return phi


def free_decay_propagator(decay: DecayModel | None, dim: int, duration: float) -> ComplexMatrix:
    """Exact superoperator for a pulse-free interval."""
    if duration <= 0:
        return np.eye(dim * dim, dtype=np.complex128)
    return matrix_exponential(_dissipator(decay, dim), duration)


def apply_superoperator(phi: np.ndarray, rho) -> np.ndarray:
    """Apply Phi to one density matrix or a stack of shape (n, N, N)."""
    rho = np.asarray(rho.entries if isinstance(rho, DensityMatrix) else rho, dtype=np.complex128)
    dim = rho.shape[-1]
    flat = rho.reshape(*rho.shape[:-2], dim * dim)
    return (flat @ phi.T).reshape(rho.shape)
