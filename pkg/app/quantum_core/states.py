"""Immutable state containers: pure states and density matrices."""

from dataclasses import dataclass

import numpy as np

from errors import DimensionError, NumericalIntegrityError
from quantum_core.tolerances import TOL


def _frozen_copy(values, ndim: int) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128, copy=True)
    if arr.ndim != ndim:
        raise DimensionError(f"expected a {ndim}-d array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class StateVector:
    """
    Complex amplitudes of a pure state in an N-level system.

    Attributes:
        amplitudes (np.ndarray): Read-only complex vector of length ``dim``.
    """
    amplitudes: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "amplitudes", _frozen_copy(self.amplitudes, 1))

    @property
    def dim(self) -> int:
        """Number of levels."""
        return self.amplitudes.shape[0]

    @classmethod
    def basis(cls, dim: int, index: int) -> "StateVector":
        """Computational basis vector |index> of a ``dim``-level system."""
        amps = np.zeros(dim, dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps)

    @classmethod
    def from_bloch(cls, theta: float, phi: float, dim: int = 2) -> "StateVector":
        """Qubit state cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>, embedded in ``dim`` levels."""
        amps = np.zeros(dim, dtype=np.complex128)
        amps[0] = np.cos(theta / 2)
        amps[1] = np.exp(1j * phi) * np.sin(theta / 2)
        return cls(amps)

    def norm(self) -> float:
        """Euclidean norm of the amplitudes."""
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float | None = None) -> bool:
        """Whether the squared norm is 1 within ``tol``."""
        tol = TOL.normalization if tol is None else tol
        return abs(self.norm() ** 2 - 1.0) < tol

    def normalized(self) -> "StateVector":
        """The state scaled to unit norm."""
        return StateVector(self.amplitudes / self.norm())

    def inner(self, other: "StateVector") -> complex:
        """<self|other>."""
        if other.dim != self.dim:
            raise DimensionError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def embed(self, dim: int) -> "StateVector":
        """Pad with zero amplitudes so the state lives in a ``dim``-level space."""
        if dim < self.dim:
            raise DimensionError(f"cannot embed a {self.dim}-level state into {dim} levels")
        amps = np.zeros(dim, dtype=np.complex128)
        amps[:self.dim] = self.amplitudes
        return StateVector(amps)

    def projector(self) -> "DensityMatrix":
        """|psi><psi|."""
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))

    def bloch_vector(self) -> np.ndarray:
        """Bloch vector of the state restricted to levels 0 and 1."""
        a, b = self.amplitudes[0], self.amplitudes[1]
        return np.array([
            2 * (np.conj(a) * b).real,
            2 * (np.conj(a) * b).imag,
            abs(a) ** 2 - abs(b) ** 2,
        ])


@dataclass(frozen=True)
class DensityMatrix:
    """
    Density operator of an N-level system.

    Construction does not enforce positivity or unit trace, since solver
    intermediates are stored in the same type; call ``check`` on outputs.

    Attributes:
        entries (np.ndarray): Read-only complex ``dim`` x ``dim`` matrix.
    """
    entries: np.ndarray

    def __post_init__(self):
        entries = _frozen_copy(self.entries, 2)
        if entries.shape[0] != entries.shape[1]:
            raise DimensionError(f"density matrix must be square, got {entries.shape}")
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_state(cls, psi: StateVector) -> "DensityMatrix":
        return psi.projector()

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls(np.eye(dim, dtype=np.complex128) / dim)

    def trace_deviation(self) -> float:
        """|tr(rho) - 1|."""
        return float(abs(np.trace(self.entries) - 1.0))

    def hermiticity_deviation(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def min_eigenvalue(self) -> float:
        """Smallest eigenvalue of the Hermitian part."""
        herm = (self.entries + self.entries.conj().T) / 2
        return float(np.linalg.eigvalsh(herm)[0])

    def population(self, level: int) -> float:
        """Diagonal entry rho_{level, level}."""
        return float(self.entries[level, level].real)

    def check(self, trace_tol: float | None = None, min_eig: float | None = None) -> None:
        """
        Raises NumericalIntegrityError unless the matrix is Hermitian, has unit
        trace and no eigenvalue below ``min_eig``.
        """
        trace_tol = TOL.trace if trace_tol is None else trace_tol
        min_eig = -TOL.positivity if min_eig is None else min_eig
        if self.hermiticity_deviation() > TOL.hermitian * max(1.0, np.max(np.abs(self.entries))):
            raise NumericalIntegrityError(
                f"density matrix is not Hermitian (deviation {self.hermiticity_deviation():.3e})")
        if self.trace_deviation() > trace_tol:
            raise NumericalIntegrityError(
                f"density matrix trace deviates from 1 by {self.trace_deviation():.3e}")
        lowest = self.min_eigenvalue()
        if lowest < min_eig:
            raise NumericalIntegrityError(f"density matrix has eigenvalue {lowest:.3e}")
