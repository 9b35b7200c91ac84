"""
Hamiltonians of the driven Lambda system and of the two-ion effective model.

Basis ordering is fixed: one ion uses (|0>, |1>, |e>[, |g>, |a>]); two ions
use the lexicographic product of (|0>, |1>, |e>), so |kl> sits at index 3k + l.
"""

from dataclasses import dataclass

import numpy as np

from errors import ConstructionError, DimensionError
from lambda_models.pulses import PulseEnvelope, square_pulse
from quantum_core import TOL, ComplexMatrix, StateVector, tensor_product


LEVEL_0 = 0
LEVEL_1 = 1
LEVEL_E = 2
LEVEL_G = 3
LEVEL_A = 4

ION_LEVELS = 3
TWO_QUBIT_DIM = ION_LEVELS * ION_LEVELS


def two_ion_index(k: int, l: int) -> int:
    """Index of the product state |k l> in the 9-level two-ion space."""
    return ION_LEVELS * k + l


COMPUTATIONAL_TWO_QUBIT = tuple(two_ion_index(k, l) for k in (0, 1) for l in (0, 1))
INDEX_EE = two_ion_index(LEVEL_E, LEVEL_E)


@dataclass(frozen=True)
class LambdaParams:
    """
    Laser parameters of one Lambda system.

    Attributes:
        omega0 (complex): Relative coupling of |0> to |e>.
        omega1 (complex): Relative coupling of |1> to |e>.
        envelope (PulseEnvelope): Common pulse envelope Omega(t).
        delta0 (float): Detuning of |0>.
        delta1 (float): Detuning of |1>.
        dim (int): Size of the Hilbert space the Hamiltonian is embedded in.
    """
    omega0: complex
    omega1: complex
    envelope: PulseEnvelope
    delta0: float = 0.0
    delta1: float = 0.0
    dim: int = 3

    def __post_init__(self):
        object.__setattr__(self, "omega0", complex(self.omega0))
        object.__setattr__(self, "omega1", complex(self.omega1))
        norm = abs(self.omega0) ** 2 + abs(self.omega1) ** 2
        if abs(norm - 1.0) > TOL.normalization:
            raise ConstructionError(f"|omega0|^2 + |omega1|^2 = {norm!r}, expected 1")
        if self.dim < 3:
            raise DimensionError(f"a Lambda system needs at least 3 levels, got {self.dim}")

    @classmethod
    def from_angles(cls, theta: float, phi: float, envelope: PulseEnvelope, **kwargs) -> "LambdaParams":
        """omega0 = sin(theta/2) e^{i phi}, omega1 = -cos(theta/2)."""
        return cls(omega0=np.sin(theta / 2) * np.exp(1j * phi),
                   omega1=-np.cos(theta / 2),
                   envelope=envelope, **kwargs)

    @property
    def n_vector(self) -> np.ndarray:
        return coupling_axis(self.omega0, self.omega1)


def coupling_axis(omega0: complex, omega1: complex) -> np.ndarray:
    """
    Unit vector n of the gate n.sigma realized by a pi pulse with these couplings.

    The projected gate is I - 2|b><b|; a common phase of the couplings drops out.
    """
    cross = omega0 * np.conj(omega1)
    return np.array([-2 * cross.real, -2 * cross.imag, abs(omega1) ** 2 - abs(omega0) ** 2])


def coupling_operator(p: LambdaParams) -> ComplexMatrix:
    """Unit coupling K = omega0 |e><0| + omega1 |e><1| + h.c., so H^(1)(t) = Omega(t) K."""
    lower = np.zeros((p.dim, p.dim), dtype=np.complex128)
    lower[LEVEL_E, LEVEL_0] = p.omega0
    lower[LEVEL_E, LEVEL_1] = p.omega1
    return lower + lower.conj().T


def full_hamiltonian(p: LambdaParams, t: float) -> ComplexMatrix:
    """H(t) = Delta0 |0><0| + Delta1 |1><1| + Omega(t) K."""
    h = p.envelope.value(t) * coupling_operator(p)
    h[LEVEL_0, LEVEL_0] += p.delta0
    h[LEVEL_1, LEVEL_1] += p.delta1
    return h


def dark_bright_states(p: LambdaParams) -> tuple[StateVector, StateVector]:
    """
    Returns the dark state |d> = -omega1|0> + omega0|1> and the bright state
    |b> = omega0*|0> + omega1*|1>, embedded in ``p.dim`` levels.
    """
    dark = np.zeros(p.dim, dtype=np.complex128)
    dark[LEVEL_0], dark[LEVEL_1] = -p.omega1, p.omega0
    bright = np.zeros(p.dim, dtype=np.complex128)
    bright[LEVEL_0], bright[LEVEL_1] = np.conj(p.omega0), np.conj(p.omega1)
    return StateVector(dark), StateVector(bright)


@dataclass(frozen=True)
class TwoQubitParams:
    """
    Parameters of the two-ion effective Hamiltonian H^(2)(t) = g(t)(H0 + H1).

    The mixing angle obeys tan(theta/2) = |Omega_0|^2 / |Omega_1|^2, and the
    envelope is the folded coupling g(t) = (eta^2/delta) sqrt(|Omega_0|^4 + |Omega_1|^4).

    Attributes:
        theta (float): Mixing angle.
        phi (float): Laser phase.
        envelope (PulseEnvelope): Effective coupling g(t) with its window.
    """
    theta: float
    phi: float
    envelope: PulseEnvelope

    @classmethod
    def from_physical(cls,
                      eta: float,
                      detuning: float,
                      rabi0: float,
                      rabi1: float,
                      phi: float,
                      t_start: float = 0.0) -> "TwoQubitParams":
        """
        Folds Lamb-Dicke parameter, detuning and the two Rabi amplitudes into
        (theta, g) for a square pi pulse starting at ``t_start``.
        """
        g, theta = fold_coupling(eta, detuning, rabi0, rabi1)
        return cls(theta=theta, phi=phi, envelope=square_pulse(np.pi, amplitude=g, t_start=t_start))


def fold_coupling(eta: float, detuning: float, rabi0: float, rabi1: float) -> tuple[float, float]:
    """Returns (g, theta) for the physical quadruple (eta, delta, |Omega_0|, |Omega_1|)."""
    if detuning <= 0:
        raise ConstructionError("detuning must be positive")
    if rabi0 == 0 and rabi1 == 0:
        raise ConstructionError("at least one Rabi amplitude must be non-zero")
    g = eta ** 2 / detuning * np.hypot(rabi0 ** 2, rabi1 ** 2)
    theta = 2 * np.arctan2(rabi0 ** 2, rabi1 ** 2)
    return float(g), float(theta)


def two_qubit_generators(theta: float, phi: float) -> tuple[ComplexMatrix, ComplexMatrix]:
    """
    The commuting pair (H0, H1) on the 9-level two-ion space.

    H0 = sin(theta/2) e^{i phi/2} |ee><00| - cos(theta/2) e^{-i phi/2} |ee><11| + h.c.
    H1 = sin(theta/2) |e0><0e| - cos(theta/2) |e1><1e| + h.c.
    """
    s, c = np.sin(theta / 2), np.cos(theta / 2)
    h0 = np.zeros((TWO_QUBIT_DIM, TWO_QUBIT_DIM), dtype=np.complex128)
    h0[INDEX_EE, two_ion_index(0, 0)] = s * np.exp(0.5j * phi)
    h0[INDEX_EE, two_ion_index(1, 1)] = -c * np.exp(-0.5j * phi)

    h1 = np.zeros_like(h0)
    h1[two_ion_index(LEVEL_E, 0), two_ion_index(0, LEVEL_E)] = s
    h1[two_ion_index(LEVEL_E, 1), two_ion_index(1, LEVEL_E)] = -c

    return h0 + h0.conj().T, h1 + h1.conj().T


def two_qubit_hamiltonian(p: TwoQubitParams, t: float) -> ComplexMatrix:
    h0, h1 = two_qubit_generators(p.theta, p.phi)
    return p.envelope.value(t) * (h0 + h1)


def _ion_sigma(level: int, phase: float) -> ComplexMatrix:
    """e^{i phase}|e><level| + h.c. on one ion."""
    m = np.zeros((ION_LEVELS, ION_LEVELS), dtype=np.complex128)
    m[LEVEL_E, level] = np.exp(1j * phase)
    return m + m.conj().T


def sigma_pair_hamiltonian(eta: float,
                           detuning: float,
                           rabi0: float,
                           rabi1: float,
                           phi: float) -> ComplexMatrix:
    """
    Effective two-ion Hamiltonian written through single-ion operators:
    (eta^2/delta)(|Omega_0|^2 s0(phi) (x) s0(phi) - |Omega_1|^2 s1(-phi) (x) s1(-phi))
    with s0(phi) = e^{i phi/4}|e><0| + h.c. and s1(-phi) = e^{-i phi/4}|e><1| + h.c.
    """
    s0 = _ion_sigma(LEVEL_0, phi / 4)
    s1 = _ion_sigma(LEVEL_1, -phi / 4)
    return eta ** 2 / detuning * (rabi0 ** 2 * tensor_product(s0, s0)
                                  - rabi1 ** 2 * tensor_product(s1, s1))


def two_qubit_dark_bright(theta: float, phi: float) -> tuple[StateVector, StateVector, StateVector]:
    """
    Dark, bright and excited-partner vectors of the two-ion loop.

    |d> = cos(theta/2)|00> + sin(theta/2) e^{i phi}|11>,
    |b> = sin(theta/2) e^{-i phi}|00> - cos(theta/2)|11>,
    and H0|b> = e^{-i phi/2}|ee>, the state |b> oscillates into.
    """
    s, c = np.sin(theta / 2), np.cos(theta / 2)
    dark = np.zeros(TWO_QUBIT_DIM, dtype=np.complex128)
    dark[two_ion_index(0, 0)] = c
    dark[two_ion_index(1, 1)] = s * np.exp(1j * phi)
    bright = np.zeros_like(dark)
    bright[two_ion_index(0, 0)] = s * np.exp(-1j * phi)
    bright[two_ion_index(1, 1)] = -c
    partner = np.zeros_like(dark)
    partner[INDEX_EE] = np.exp(-0.5j * phi)
    return StateVector(dark), StateVector(bright), StateVector(partner)
