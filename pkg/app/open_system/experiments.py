"""
The decay experiments: a phase-shift gate built from two non-adiabatic pulse
pairs, and the same gate built from an adiabatic loop.

Rates are measured in a reference rate gamma_ref = 1, so beta = beta/gamma,
Omega = Omega/gamma, Delta t = gamma Delta t and T = (Omega T)/Omega.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import partial

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy import integrate

from config import SweepConfig
from errors import DimensionError, PreconditionError
from gates import gate_from_couplings
from lambda_models import (
    LEVEL_1,
    LEVEL_A,
    LEVEL_E,
    LambdaParams,
    PulseEnvelope,
    full_hamiltonian,
    pulse_area,
    sech_pulse,
    square_pulse,
)
from open_system.integrators import (
    DecayModel,
    apply_superoperator,
    free_decay_propagator,
    lindblad_propagator,
)
from quantum_core import DensityMatrix, StateVector, state_fidelity


NONADIABATIC_DIM = 4
ADIABATIC_DIM = 5

# (omega0, omega1) of the two pulse pairs; together they give diag(1, e^{i pi/2}) up to phase
FIRST_PAIR_COUPLINGS = (-1 / np.sqrt(2), 1 / np.sqrt(2))
SECOND_PAIR_COUPLINGS = (-1 / np.sqrt(2), np.exp(-0.25j * np.pi) / np.sqrt(2))

ADIABATIC_CORNERS = ((0.0, 0.0), (np.pi / 2, 0.0), (np.pi / 2, np.pi), (0.0, np.pi), (0.0, 0.0))

GOLDEN_ANGLE = np.pi * (3.0 - np.sqrt(5.0))

status_logger = logging.getLogger("status_logger")


class AdiabaticLoopSpec(BaseModel):
    """
    Loop in (vartheta, varphi) driven at constant coupling strength.

    H(t) = Omega (omega_1 |e><1| + omega_a |e><a| + h.c.) with
    omega_1 = sin(vartheta/2) e^{i varphi}, omega_a = -cos(vartheta/2). Each
    leg between consecutive corners is traversed at constant speed in a
    quarter of the run time.
    """
    model_config = ConfigDict(frozen=True)

    omega: float = Field(gt=0, description="Coupling strength Omega (inverse time).")
    run_time: float = Field(gt=0, description="Total run time T.")
    corners: tuple[tuple[float, float], ...] = Field(
        default=ADIABATIC_CORNERS,
        min_length=2,
        description="Corners (vartheta, varphi) of the loop; the first and last must coincide."
    )

    def corner_times(self) -> np.ndarray:
        return np.linspace(0.0, self.run_time, len(self.corners))

    def angles_at(self, t: float) -> tuple[float, float]:
        corners = np.asarray(self.corners)
        times = self.corner_times()
        return float(np.interp(t, times, corners[:, 0])), float(np.interp(t, times, corners[:, 1]))

    def couplings_at(self, t: float) -> tuple[complex, float]:
        vartheta, varphi = self.angles_at(t)
        return np.sin(vartheta / 2) * np.exp(1j * varphi), -np.cos(vartheta / 2)

    def hamiltonian(self, t: float) -> np.ndarray:
        """5 x 5 Hamiltonian in the basis (|0>, |1>, |e>, |g>, |a>)."""
        omega_1, omega_a = self.couplings_at(t)
        lower = np.zeros((ADIABATIC_DIM, ADIABATIC_DIM), dtype=np.complex128)
        lower[LEVEL_E, LEVEL_1] = self.omega * omega_1
        lower[LEVEL_E, LEVEL_A] = self.omega * omega_a
        return lower + lower.conj().T

    def reversed(self) -> "AdiabaticLoopSpec":
        return self.model_copy(update={"corners": tuple(reversed(self.corners))})

    def geometric_phase(self) -> float:
        """Phase of the dark state: -closed-integral sin^2(vartheta/2) d varphi."""
        total = 0.0
        for (th_a, ph_a), (th_b, ph_b) in zip(self.corners, self.corners[1:]):
            if ph_b == ph_a:
                continue
            value, _ = integrate.quad(lambda s: np.sin((th_a + s * (th_b - th_a)) / 2) ** 2, 0.0, 1.0)
            total += value * (ph_b - ph_a)
        return -total


def adiabatic_ideal_gate(loop: AdiabaticLoopSpec) -> np.ndarray:
    """diag(1, e^{i Gamma}) on {|0>, |1>} with Gamma the loop's geometric phase."""
    if np.max(np.abs(np.subtract(loop.corners[0], loop.corners[-1]))) > 0:
        raise PreconditionError("adiabatic loop corners do not close")
    return np.diag([1.0, np.exp(1j * loop.geometric_phase())]).astype(np.complex128)


@dataclass(frozen=True)
class ProtocolRun:
    """
    Open-system propagator of one experiment at one parameter value.

    Attributes:
        propagator (np.ndarray): Superoperator on the N-level space.
        ideal_gate (np.ndarray): Target 2 x 2 gate on {|0>, |1>}.
        dim (int): N.
        pulse_overlap (float): Pulse mass falling into the other pulse's window.
        area_deficit (float): pi minus the smallest windowed pulse area.
        warnings (tuple[str, ...]): Diagnostics worth reporting.
    """
    propagator: np.ndarray
    ideal_gate: np.ndarray
    dim: int
    pulse_overlap: float = 0.0
    area_deficit: float = 0.0
    warnings: tuple[str, ...] = field(default_factory=tuple)

    def output_states(self, amplitudes: np.ndarray) -> np.ndarray:
        """Output density matrices for qubit inputs given as rows of amplitudes, shape (n, N, N)."""
        psi = _embed_rows(amplitudes, self.dim)
        rho_in = np.einsum("si,sj->sij", psi, psi.conj())
        out = apply_superoperator(self.propagator, rho_in)
        return (out + np.swapaxes(out.conj(), 1, 2)) / 2

    def target_states(self, amplitudes: np.ndarray) -> np.ndarray:
        amplitudes = np.asarray(amplitudes, dtype=np.complex128)
        return _embed_rows(amplitudes[:, :2] @ self.ideal_gate.T, self.dim)

    def fidelity(self, state: StateVector) -> float:
        amps = state.amplitudes
        if state.dim > 2 and np.any(np.abs(amps[2:]) > 0):
            raise DimensionError("input must lie in the qubit subspace {|0>, |1>}")
        rho = self.output_states(amps[None, :2])[0]
        target = StateVector(self.target_states(amps[None, :2])[0])
        return state_fidelity(target, DensityMatrix(rho))


def _embed_rows(amplitudes: np.ndarray, dim: int) -> np.ndarray:
    amplitudes = np.asarray(amplitudes, dtype=np.complex128)
    out = np.zeros((amplitudes.shape[0], dim), dtype=np.complex128)
    out[:, :amplitudes.shape[1]] = amplitudes
    return out


def _nonadiabatic_pulse(cfg: SweepConfig, beta: float, center: float) -> PulseEnvelope:
    if cfg.pulse_shape == "square":
        return square_pulse(np.pi, amplitude=beta, t_start=center - np.pi / (2 * beta))
    return sech_pulse(beta, center=center, half_width=cfg.sech_half_width)


def nonadiabatic_protocol(beta_over_gamma: float, cfg: SweepConfig) -> ProtocolRun:
    """
    Two pi pulses centered at 0 and Delta t on the levels (|0>, |1>, |e>, |g>).

    beta = (beta/gamma) * gamma and Delta t = (gamma Delta t) / gamma, with gamma
    taken from ``cfg.rate_unit``. Each pulse window is integrated with RK4; the
    gap between windows uses the exact free-decay propagator. Overlapping
    windows are integrated together.
    """
    if beta_over_gamma <= 0:
        raise PreconditionError("beta/gamma must be positive")
    beta = float(beta_over_gamma) * cfg.rate_unit
    delay = cfg.gamma_dt / cfg.rate_unit
    decay = DecayModel(gamma=cfg.gamma) if cfg.decay_on else None

    first = LambdaParams(*FIRST_PAIR_COUPLINGS, envelope=_nonadiabatic_pulse(cfg, beta, 0.0), dim=NONADIABATIC_DIM)
    second = LambdaParams(*SECOND_PAIR_COUPLINGS, envelope=_nonadiabatic_pulse(cfg, beta, delay),
                          dim=NONADIABATIC_DIM)
    e1, e2 = first.envelope, second.envelope

    overlap = (e1.ideal_area_between(e2.t_start, e2.t_end)
               + e2.ideal_area_between(e1.t_start, e1.t_end))
    deficit = np.pi - min(pulse_area(e1), pulse_area(e2))
    warnings = []
    if overlap > cfg.overlap_threshold:
        warnings.append(f"pulse overlap {overlap:.3e} exceeds threshold {cfg.overlap_threshold:.1e}")

    steps = cfg.steps_per_window
    if e2.t_start >= e1.t_end:
        phi = lindblad_propagator(partial(full_hamiltonian, first), decay, NONADIABATIC_DIM,
                                  (e1.t_start, e1.t_end), steps)
        phi = free_decay_propagator(decay, NONADIABATIC_DIM, e2.t_start - e1.t_end) @ phi
        phi = lindblad_propagator(partial(full_hamiltonian, second), decay, NONADIABATIC_DIM,
                                  (e2.t_start, e2.t_end), steps) @ phi
    else:
        status_logger.warning("Pulse windows overlap at beta/gamma=%s; integrating them together",
                              beta_over_gamma)
        phi = lindblad_propagator(lambda t: full_hamiltonian(first, t) + full_hamiltonian(second, t),
                                  decay, NONADIABATIC_DIM, (e1.t_start, e2.t_end), 2 * steps)

    ideal = gate_from_couplings(*SECOND_PAIR_COUPLINGS) @ gate_from_couplings(*FIRST_PAIR_COUPLINGS)
    return ProtocolRun(propagator=phi, ideal_gate=ideal, dim=NONADIABATIC_DIM,
                       pulse_overlap=float(overlap), area_deficit=float(deficit),
                       warnings=tuple(warnings))


def adiabatic_loop(omega_t: float, cfg: SweepConfig) -> AdiabaticLoopSpec:
    omega = cfg.omega_over_gamma * cfg.rate_unit
    return AdiabaticLoopSpec(omega=omega, run_time=omega_t / omega)


def adiabatic_protocol(omega_t: float, cfg: SweepConfig, decay_on: bool | None = None) -> ProtocolRun:
    """
    Adiabatic loop of duration T = (Omega T)/Omega on (|0>, |1>, |e>, |g>, |a>).

    The step count is raised above ``cfg.steps_per_window`` when needed to keep
    Omega * dt below ``cfg.max_phase_step``.
    """
    if omega_t <= 0:
        raise PreconditionError("Omega*T must be positive")
    decay_on = cfg.decay_on if decay_on is None else decay_on
    decay = DecayModel(gamma=cfg.gamma) if decay_on and cfg.gamma > 0 else None
    loop = adiabatic_loop(omega_t, cfg)
    steps = max(cfg.steps_per_window, math.ceil(omega_t / cfg.max_phase_step))
    phi = lindblad_propagator(loop.hamiltonian, decay, ADIABATIC_DIM, (0.0, loop.run_time), steps)
    return ProtocolRun(propagator=phi, ideal_gate=adiabatic_ideal_gate(loop), dim=ADIABATIC_DIM)


def nonadiabatic_phase_gate_run(beta_over_gamma: float, cfg: SweepConfig, state: StateVector) -> float:
    """Fidelity of the non-adiabatic phase-shift gate for one input state."""
    return nonadiabatic_protocol(beta_over_gamma, cfg).fidelity(state)


def adiabatic_phase_gate_run(omega_t: float,
                             decay_on: bool,
                             state: StateVector,
                             cfg: SweepConfig | None = None) -> float:
    """Fidelity of the adiabatic phase-shift gate for one input state."""
    if cfg is None:
        cfg = SweepConfig(kind="adiabatic-decay" if decay_on else "adiabatic-nodecay")
    return adiabatic_protocol(omega_t, cfg, decay_on).fidelity(state)


def bloch_sphere_amplitudes(n: int, sampler: str = "fibonacci", seed: int = 0) -> np.ndarray:
    """
    Qubit amplitudes (cos(theta/2), e^{i phi} sin(theta/2)) of ``n`` points on
    the Bloch sphere, shape (n, 2).

    The Fibonacci lattice puts z_i = 1 - 2i/(n - 1) and phi_i = i * golden angle,
    so a single point is the |0> pole. The seeded-uniform sampler draws z and
    phi uniformly from ``numpy.random.default_rng(seed)``.
    """
    if n < 1:
        raise PreconditionError("n must be at least 1")
    if sampler == "fibonacci":
        idx = np.arange(n)
        z = np.ones(1) if n == 1 else 1.0 - 2.0 * idx / (n - 1)
        phi = idx * GOLDEN_ANGLE
    elif sampler == "seeded-uniform":
        rng = np.random.default_rng(seed)
        z = rng.uniform(-1.0, 1.0, n)
        phi = rng.uniform(0.0, 2 * np.pi, n)
    else:
        raise PreconditionError(f"unknown sampler: {sampler!r}")
    theta = np.arccos(np.clip(z, -1.0, 1.0))
    return np.column_stack((np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)))


def bloch_sphere_sample(n: int, sampler: str = "fibonacci", seed: int = 0, dim: int = 2) -> list[StateVector]:
    """Pure qubit states on the Bloch sphere, embedded in ``dim`` levels."""
    return [StateVector(row).embed(dim) for row in bloch_sphere_amplitudes(n, sampler, seed)]
