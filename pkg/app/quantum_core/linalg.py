"""
Dense complex linear algebra for small quantum systems.

Matrices are plain ``numpy`` complex128 arrays. Kronecker products use the
row-major index convention: entry (i, j) of A and (k, l) of B land at
(i * dim_B + k, j * dim_B + l) of A (x) B.
"""

from collections.abc import Sequence

import numpy as np
import numpy.typing as npt
import scipy.linalg
from scipy.stats import unitary_group

from errors import DimensionError, NumericalIntegrityError, PreconditionError
from quantum_core.states import DensityMatrix, StateVector
from quantum_core.tolerances import TOL


ComplexMatrix = npt.NDArray[np.complex128]

IDENTITY_2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

for _m in (IDENTITY_2, *PAULI):
    _m.setflags(write=False)


def as_square(m) -> ComplexMatrix:
    """Return ``m`` as a complex square matrix or raise DimensionError."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def dagger(m) -> ComplexMatrix:
    """Conjugate transpose."""
    return np.asarray(m).conj().T


def is_hermitian(m, tol: float | None = None) -> bool:
    """Whether M equals M^dagger entrywise within ``tol`` times the largest entry (at least 1)."""
    tol = TOL.hermitian if tol is None else tol
    arr = as_square(m)
    scale = max(1.0, float(np.max(np.abs(arr), initial=0.0)))
    return float(np.max(np.abs(arr - arr.conj().T), initial=0.0)) <= tol * scale


def is_unitary(m, tol: float | None = None) -> bool:
    """Whether U^dagger U equals I entrywise within ``tol``."""
    tol = TOL.unitary if tol is None else tol
    arr = as_square(m)
    return unitarity_deviation(arr) < tol


def unitarity_deviation(m) -> float:
    """Largest entry of |U^dagger U - I|."""
    arr = as_square(m)
    return float(np.max(np.abs(arr.conj().T @ arr - np.eye(arr.shape[0]))))


def commutator(a, b) -> ComplexMatrix:
    """[A, B] = AB - BA."""
    return a @ b - b @ a


def matrix_exponential(m, scale: complex = 1.0) -> ComplexMatrix:
    """
    Computes exp(scale * m).

    Hermitian and anti-Hermitian exponents go through an eigendecomposition,
    which keeps the result unitary to machine precision for unitary
    generators. Anything else falls back to scaling-and-squaring Pade
    (``scipy.linalg.expm``).

    Args:
        m: Square complex matrix, at most ``TOL.max_dim`` wide.
        scale (complex): Scalar multiplying ``m`` in the exponent.

    Returns:
        ComplexMatrix: The matrix exponential.
    """
    arr = as_square(m)
    if arr.shape[0] > TOL.max_dim:
        raise DimensionError(f"matrix_exponential supports dim <= {TOL.max_dim}, got {arr.shape[0]}")
    exponent = scale * arr

    if is_hermitian(1j * exponent):
        # exponent = -i h with h Hermitian
        h = 1j * exponent
        w, v = np.linalg.eigh((h + h.conj().T) / 2)
        return (v * np.exp(-1j * w)) @ v.conj().T

    if is_hermitian(exponent):
        w, v = np.linalg.eigh((exponent + exponent.conj().T) / 2)
        return (v * np.exp(w)) @ v.conj().T

    return scipy.linalg.expm(exponent)


def tensor_product(a, b) -> ComplexMatrix:
    """Kronecker product A (x) B with the row-major index convention of this module."""
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def frame_matrix(basis: Sequence[StateVector] | np.ndarray) -> ComplexMatrix:
    """Stack basis vectors as the columns of an N x K matrix."""
    if isinstance(basis, np.ndarray):
        arr = np.asarray(basis, dtype=np.complex128)
        if arr.ndim != 2:
            raise DimensionError(f"frame must be an N x K matrix, got shape {arr.shape}")
        return arr
    if not basis:
        raise DimensionError("empty basis")
    dims = {vec.dim for vec in basis}
    if len(dims) != 1:
        raise DimensionError(f"basis vectors have different dimensions: {sorted(dims)}")
    return np.column_stack([vec.amplitudes for vec in basis])


def orthonormality_deviation(frame: ComplexMatrix) -> float:
    """Largest entry of |F^dagger F - I| for an N x K frame F."""
    gram = frame.conj().T @ frame
    return float(np.max(np.abs(gram - np.eye(gram.shape[0]))))


def project_onto_subspace(u, basis: Sequence[StateVector] | np.ndarray) -> ComplexMatrix:
    """
    Matrix of ``u`` restricted to an orthonormal basis: entries <basis_k|U|basis_l>.

    Raises:
        PreconditionError: If the basis is not orthonormal within ``TOL.orthonormal``.
    """
    op = as_square(u)
    frame = frame_matrix(basis)
    if frame.shape[0] != op.shape[0]:
        raise DimensionError(f"basis dimension {frame.shape[0]} does not match operator {op.shape[0]}")
    deviation = orthonormality_deviation(frame)
    if deviation > TOL.orthonormal:
        raise PreconditionError(f"basis is not orthonormal (Gram deviation {deviation:.3e})")
    return frame.conj().T @ op @ frame


def state_fidelity(target: StateVector, actual: DensityMatrix) -> float:
    """
    Fidelity <target|actual|target> of a density matrix with a pure target state.

    Raises:
        NumericalIntegrityError: If ``actual`` is not Hermitian or the overlap
            has a non-negligible imaginary part.
    """
    if target.dim != actual.dim:
        raise DimensionError(f"dimension mismatch: target {target.dim}, actual {actual.dim}")
    if not target.is_normalized():
        raise PreconditionError("target state is not normalized")
    if not is_hermitian(actual.entries, tol=TOL.fidelity_imag):
        raise NumericalIntegrityError(
            f"actual state is not Hermitian (deviation {actual.hermiticity_deviation():.3e})")
    value = np.vdot(target.amplitudes, actual.entries @ target.amplitudes)
    if abs(value.imag) >= TOL.fidelity_imag:
        raise NumericalIntegrityError(f"fidelity has imaginary part {value.imag:.3e}")
    return float(np.clip(value.real, 0.0, 1.0))


def trace_distance(rho, sigma) -> float:
    """Half the trace norm of rho - sigma."""
    a = rho.entries if isinstance(rho, DensityMatrix) else as_square(rho)
    b = sigma.entries if isinstance(sigma, DensityMatrix) else as_square(sigma)
    diff = a - b
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh((diff + diff.conj().T) / 2))))


def global_phase_distance(a, b, norm: str = "max") -> float:
    """
    Distance between two matrices modulo a global phase.

    ``a`` is rotated so that its entry at the position of the largest-magnitude
    entry of ``b`` has the same phase as that entry of ``b``.

    Args:
        a: Matrix to compare.
        b: Reference matrix.
        norm (str): "max" for the largest entrywise deviation, "fro" for Frobenius.
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    k = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(a[k]) > 0:
        a = a * np.exp(1j * (np.angle(b[k]) - np.angle(a[k])))
    diff = a - b
    if norm == "max":
        return float(np.max(np.abs(diff)))
    if norm == "fro":
        return float(np.linalg.norm(diff))
    raise ValueError(f"unknown norm: {norm}")


def schmidt_rank(psi: StateVector, dims: tuple[int, int], tol: float = 1e-10) -> int:
    """Number of Schmidt coefficients above ``tol`` for a bipartite pure state."""
    if dims[0] * dims[1] != psi.dim:
        raise DimensionError(f"dims {dims} do not factor a {psi.dim}-level state")
    singular = np.linalg.svd(psi.amplitudes.reshape(dims), compute_uv=False)
    return int(np.sum(singular > tol))


def random_hermitian(dim: int, rng: np.random.Generator) -> ComplexMatrix:
    """Hermitian matrix with standard normal real and imaginary parts."""
    x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (x + x.conj().T) / 2


def haar_unitary(dim: int, rng: np.random.Generator) -> ComplexMatrix:
    """Haar-distributed unitary."""
    return unitary_group.rvs(dim, random_state=rng)
