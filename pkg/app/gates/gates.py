"""Analytic holonomic gates, their composition and the inverse problem."""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from errors import DimensionError, PreconditionError
from lambda_models import coupling_axis
from quantum_core import (
    IDENTITY_2,
    PAULI,
    TOL,
    ComplexMatrix,
    as_square,
    global_phase_distance,
    is_unitary,
)


_AXIS_EPS = 1e-12


def normalize_angles(theta: float, phi: float) -> tuple[float, float]:
    """
    Maps (theta, phi) to theta in [0, pi], phi in [0, 2 pi) without changing
    the unit vector (sin theta cos phi, sin theta sin phi, cos theta).
    """
    theta = float(np.mod(theta, 2 * np.pi))
    if theta > np.pi:
        theta, phi = 2 * np.pi - theta, phi + np.pi
    return theta, float(np.mod(phi, 2 * np.pi))


def angles_from_vector(n) -> tuple[float, float]:
    """(theta, phi) of a unit vector; atan2 keeps full precision near the poles."""
    n = np.asarray(n, dtype=float)
    return float(np.arctan2(np.hypot(n[0], n[1]), n[2])), float(np.arctan2(n[1], n[0]))


class _AngleSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    theta: float = Field(description="Polar angle in radians, normalized into [0, pi].")
    phi: float = Field(default=0.0, description="Azimuthal angle in radians, normalized into [0, 2 pi).")

    @model_validator(mode="before")
    @classmethod
    def _normalize(cls, data):
        if isinstance(data, dict) and "theta" in data:
            theta, phi = normalize_angles(data["theta"], data.get("phi", 0.0))
            data = {**data, "theta": theta, "phi": phi}
        return data

    @property
    def n_vector(self) -> np.ndarray:
        return np.array([np.sin(self.theta) * np.cos(self.phi),
                         np.sin(self.theta) * np.sin(self.phi),
                         np.cos(self.theta)])


class OneQubitGateSpec(_AngleSpec):
    """
    Axis n of the one-loop gate n.sigma.

    Attributes:
        theta (float): Polar angle of n.
        phi (float): Azimuthal angle of n.
    """

    @classmethod
    def from_n_vector(cls, n) -> "OneQubitGateSpec":
        n = np.asarray(n, dtype=float)
        if abs(np.linalg.norm(n) - 1.0) > TOL.normalization:
            raise PreconditionError(f"n must be a unit vector, got norm {np.linalg.norm(n)!r}")
        theta, phi = angles_from_vector(n)
        return cls(theta=theta, phi=phi)


class TwoQubitGateSpec(_AngleSpec):
    """Mixing angle theta and laser phase phi of the two-ion loop."""


def one_qubit_gate(s: OneQubitGateSpec) -> ComplexMatrix:
    """U(C_n) = n.sigma."""
    return np.einsum("k,kij->ij", s.n_vector, np.asarray(PAULI))


def compose_two(n: OneQubitGateSpec, m: OneQubitGateSpec) -> ComplexMatrix:
    """Loop n followed by loop m: (n.m) I - i sigma.(n x m)."""
    a, b = n.n_vector, m.n_vector
    return np.dot(a, b) * IDENTITY_2 - 1j * np.einsum("k,kij->ij", np.cross(a, b), np.asarray(PAULI))


def gate_from_couplings(omega0: complex, omega1: complex) -> ComplexMatrix:
    """n.sigma for the axis realized by a pi pulse with these relative couplings."""
    return np.einsum("k,kij->ij", coupling_axis(omega0, omega1), np.asarray(PAULI))


def hadamard_spec() -> OneQubitGateSpec:
    """n = (1, 0, 1)/sqrt(2)."""
    return OneQubitGateSpec(theta=np.pi / 4, phi=0.0)


def phase_shift_pair(angle: float) -> tuple[OneQubitGateSpec, OneQubitGateSpec]:
    """
    Two equatorial loops whose composition is diag(1, e^{i angle}) up to a
    global phase: n at phi = 0, m at phi = angle / 2.
    """
    return (OneQubitGateSpec(theta=np.pi / 2, phi=0.0),
            OneQubitGateSpec(theta=np.pi / 2, phi=angle / 2))


def _su2_coordinates(u: np.ndarray) -> tuple[float, np.ndarray]:
    """
    (cos(alpha/2), sin(alpha/2) u) of the SU(2) part of ``u``, written as
    cos(alpha/2) I - i sin(alpha/2) u.sigma.
    """
    v = u / np.sqrt(np.linalg.det(u))
    c = float(np.trace(v).real / 2)
    vec = np.array([(0.5j * np.trace(v @ p)).real for p in PAULI])
    return c, vec


def rotation_axis_angle(u) -> tuple[np.ndarray, float]:
    """
    Rotation axis and angle in [0, 2 pi] of a 2 x 2 unitary modulo global phase.

    The axis is (0, 0, 1) when the rotation is trivial.
    """
    u = as_square(u)
    if u.shape != (2, 2):
        raise DimensionError(f"expected a 2 x 2 unitary, got shape {u.shape}")
    c, vec = _su2_coordinates(u)
    s = float(np.linalg.norm(vec))
    if s < _AXIS_EPS:
        return np.array([0.0, 0.0, 1.0]), 0.0
    return vec / s, float(2 * np.arctan2(s, c))


def _check_target(target) -> np.ndarray:
    u = as_square(target)
    if u.shape != (2, 2):
        raise DimensionError(f"expected a 2 x 2 target, got shape {u.shape}")
    if not is_unitary(u):
        raise PreconditionError("target is not unitary")
    return u


def synthesize_one_qubit(target) -> tuple[OneQubitGateSpec, OneQubitGateSpec]:
    """
    Two loop axes (n, m) whose composition equals ``target`` up to a global phase.

    With the target written as a rotation by alpha about u, n is any unit vector
    perpendicular to u and m is n rotated about u by alpha / 2. A trivial
    rotation returns n = m = (0, 0, 1).

    Raises:
        PreconditionError: If the target is not unitary.
    """
    u = _check_target(target)
    c, vec = _su2_coordinates(u)
    s = float(np.linalg.norm(vec))
    if s < _AXIS_EPS:
        z = OneQubitGateSpec(theta=0.0, phi=0.0)
        return z, z

    axis = vec / s
    helper = np.eye(3)[np.argmin(np.abs(axis))]
    n = helper - np.dot(helper, axis) * axis
    n /= np.linalg.norm(n)
    half = np.arctan2(s, c)
    m = n * np.cos(half) + np.cross(axis, n) * np.sin(half)
    return OneQubitGateSpec.from_n_vector(n), OneQubitGateSpec.from_n_vector(m / np.linalg.norm(m))


def single_loop_shortcut(target, tol: float = 1e-9) -> OneQubitGateSpec | None:
    """
    A single loop n with n.sigma equal to ``target`` up to phase, or None when
    the target is not Hermitian and traceless up to phase. The sign of n is
    chosen so its last non-zero component is positive.
    """
    u = _check_target(target)
    c, vec = _su2_coordinates(u)
    if abs(c) > tol:
        return None
    n = vec / np.linalg.norm(vec)
    for component in n[::-1]:
        if abs(component) > tol:
            if component < 0:
                n = -n
            break
    return OneQubitGateSpec.from_n_vector(n)


def two_qubit_gate(s: TwoQubitGateSpec) -> ComplexMatrix:
    """
    Reflection on span{|00>, |11>} with block
    [[cos theta, sin theta e^{-i phi}], [sin theta e^{i phi}, -cos theta]],
    identity on |01> and |10>. Basis order |00>, |01>, |10>, |11>.
    """
    u = np.eye(4, dtype=np.complex128)
    u[0, 0] = np.cos(s.theta)
    u[0, 3] = np.sin(s.theta) * np.exp(-1j * s.phi)
    u[3, 0] = np.sin(s.theta) * np.exp(1j * s.phi)
    u[3, 3] = -np.cos(s.theta)
    return u


class GateVerification(BaseModel):
    """
    Comparison of a simulated gate with its analytic target.

    Attributes:
        max_distance (float): Largest entrywise deviation after phase alignment.
        frobenius_distance (float): Frobenius deviation after phase alignment.
        tolerance (float): Pass threshold on ``max_distance``.
        passed (bool): Whether ``max_distance`` is below ``tolerance``.
    """
    model_config = ConfigDict(frozen=True)

    max_distance: float = Field(description="Largest entrywise deviation after global-phase alignment.")
    frobenius_distance: float = Field(description="Frobenius deviation after global-phase alignment.")
    tolerance: float = Field(description="Pass threshold on max_distance.")
    passed: bool = Field(description="True when max_distance < tolerance.")


def target_matrix(spec) -> ComplexMatrix:
    if isinstance(spec, OneQubitGateSpec):
        return one_qubit_gate(spec)
    if isinstance(spec, TwoQubitGateSpec):
        return two_qubit_gate(spec)
    return as_square(spec)


def verify_gate_against_dynamics(spec,
                                 dynamics_result,
                                 tolerance: float | None = None) -> GateVerification:
    """
    Phase-aligned distance between a gate spec (or explicit target matrix) and
    a projected evolution operator.
    """
    tolerance = TOL.gate_match if tolerance is None else tolerance
    target = target_matrix(spec)
    actual = as_square(dynamics_result)
    max_distance = global_phase_distance(actual, target, norm="max")
    return GateVerification(
        max_distance=max_distance,
        frobenius_distance=global_phase_distance(actual, target, norm="fro"),
        tolerance=tolerance,
        passed=max_distance < tolerance,
    )


def gate_distance(u, v) -> float:
    """
    Phase-invariant distance sqrt(1 - |tr(U^dagger V)/d|^2).

    For one qubit this is the largest trace distance between U|psi> and V|psi>
    over pure inputs.
    """
    u, v = as_square(u), as_square(v)
    if u.shape != v.shape:
        raise DimensionError(f"shape mismatch: {u.shape} vs {v.shape}")
    overlap = abs(np.trace(u.conj().T @ v)) / u.shape[0]
    return float(np.sqrt(max(0.0, 1.0 - overlap ** 2)))

