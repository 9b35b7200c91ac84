import numpy as np
import pytest

from errors import DimensionError, NumericalIntegrityError, PreconditionError
from quantum_core import (
    IDENTITY_2,
    SIGMA_X,
    SIGMA_Z,
    TOL,
    DensityMatrix,
    StateVector,
    global_phase_distance,
    haar_unitary,
    is_unitary,
    matrix_exponential,
    project_onto_subspace,
    random_hermitian,
    schmidt_rank,
    state_fidelity,
    tensor_product,
    trace_distance,
    unitarity_deviation,
)


class TestMatrixExponential:

    def test_zero_matrix_gives_identity(self):
        np.testing.assert_allclose(matrix_exponential(np.zeros((3, 3)), -1j), np.eye(3), atol=1e-15)

    def test_pauli_exponential(self):
        np.testing.assert_allclose(matrix_exponential(SIGMA_X, -0.5j * np.pi), -1j * SIGMA_X, atol=1e-14)

    def test_pi_rotation_in_bright_excited_plane(self):
        bright = np.array([1, 1, 0]) / np.sqrt(2)
        dark = np.array([1, -1, 0]) / np.sqrt(2)
        excited = np.array([0, 0, 1.0])
        k = np.outer(excited, bright) + np.outer(bright, excited)
        u = matrix_exponential(k, -1j * np.pi)

        np.testing.assert_allclose(u @ dark, dark, atol=1e-12)
        np.testing.assert_allclose(u @ bright, -bright, atol=1e-12)
        np.testing.assert_allclose(u @ excited, -excited, atol=1e-12)

    def test_hermitian_generators_give_unitaries(self, rng):
        for _ in range(100):
            dim = int(rng.integers(2, 10))
            h = random_hermitian(dim, rng)
            u = matrix_exponential(h, -1j * rng.uniform(-5, 5))
            assert unitarity_deviation(u) < 1e-10

    def test_general_matrix_uses_pade(self):
        nilpotent = np.array([[0, 1], [0, 0]], dtype=complex)
        np.testing.assert_allclose(matrix_exponential(nilpotent, 2.0), [[1, 2], [0, 1]], atol=1e-14)

    def test_non_square_input_is_rejected(self):
        with pytest.raises(DimensionError):
            matrix_exponential(np.zeros((2, 3)))

    def test_dimension_limit_follows_tolerance_table(self, monkeypatch):
        monkeypatch.setattr(TOL, "max_dim", 2)
        with pytest.raises(DimensionError):
            matrix_exponential(np.eye(3))


class TestTensorProduct:

    def test_identities(self):
        np.testing.assert_array_equal(tensor_product(IDENTITY_2, IDENTITY_2), np.eye(4))

    def test_sigma_z_pair_on_ground_state(self):
        ket00 = np.array([1, 0, 0, 0], dtype=complex)
        np.testing.assert_array_equal(tensor_product(SIGMA_Z, SIGMA_Z) @ ket00, ket00)

    def test_associativity(self, rng):
        a, b, c = (random_hermitian(d, rng) for d in (2, 3, 2))
        np.testing.assert_array_equal(tensor_product(tensor_product(a, b), c),
                                      tensor_product(a, tensor_product(b, c)))

    def test_sigma_zero_pair_raises_both_ions(self):
        phi = 0.83
        s0 = np.zeros((3, 3), dtype=complex)
        s0[2, 0] = np.exp(0.25j * phi)
        s0 = s0 + s0.conj().T
        ket00 = np.zeros(9, dtype=complex)
        ket00[0] = 1.0
        expected = np.zeros(9, dtype=complex)
        expected[8] = np.exp(0.5j * phi)
        np.testing.assert_allclose(tensor_product(s0, s0) @ ket00, expected, atol=1e-15)


class TestFidelity:

    def test_pure_state_with_itself(self):
        psi = StateVector.from_bloch(1.1, 0.4)
        assert state_fidelity(psi, psi.projector()) == pytest.approx(1.0, abs=1e-12)

    def test_maximally_mixed_state(self):
        psi = StateVector.from_bloch(2.0, -1.3)
        assert state_fidelity(psi, DensityMatrix.maximally_mixed(2)) == pytest.approx(0.5, abs=1e-12)

    def test_non_hermitian_state_is_rejected(self):
        rho = DensityMatrix(np.array([[0.5, 0.3], [0.0, 0.5]]))
        with pytest.raises(NumericalIntegrityError):
            state_fidelity(StateVector.basis(2, 0), rho)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            state_fidelity(StateVector.basis(3, 0), DensityMatrix.maximally_mixed(2))


class TestProjection:

    def test_identity_projects_to_identity(self, rng):
        q = haar_unitary(4, rng)[:, :2]
        np.testing.assert_allclose(project_onto_subspace(np.eye(4), q), np.eye(2), atol=1e-12)

    def test_non_orthonormal_basis_is_rejected(self):
        basis = [StateVector(np.array([1, 0, 0])), StateVector(np.array([1, 1, 0]) / np.sqrt(2))]
        with pytest.raises(PreconditionError):
            project_onto_subspace(np.eye(3), basis)

    def test_subspace_preserving_unitary_projects_to_unitary(self, rng):
        u = np.zeros((3, 3), dtype=complex)
        u[:2, :2] = haar_unitary(2, rng)
        u[2, 2] = np.exp(0.7j)
        block = project_onto_subspace(u, [StateVector.basis(3, 0), StateVector.basis(3, 1)])
        assert is_unitary(block)


class TestStates:

    def test_state_arrays_are_read_only(self):
        psi = StateVector(np.array([1.0, 0.0]))
        with pytest.raises(ValueError):
            psi.amplitudes[0] = 0.0

    def test_embed_pads_with_zeros(self):
        psi = StateVector.from_bloch(np.pi / 2, 0.0).embed(4)
        assert psi.dim == 4
        np.testing.assert_allclose(psi.amplitudes, [1 / np.sqrt(2), 1 / np.sqrt(2), 0, 0], atol=1e-15)

    def test_bloch_vector_of_basis_states(self):
        np.testing.assert_allclose(StateVector.basis(2, 1).bloch_vector(), [0, 0, -1])

    def test_check_rejects_bad_trace(self):
        with pytest.raises(NumericalIntegrityError):
            DensityMatrix(np.diag([0.6, 0.6])).check()

    def test_check_rejects_negative_eigenvalue(self):
        with pytest.raises(NumericalIntegrityError):
            DensityMatrix(np.diag([1.1, -0.1])).check()


class TestDistances:

    def test_global_phase_is_ignored(self, rng):
        u = haar_unitary(3, rng)
        assert global_phase_distance(np.exp(0.9j) * u, u) < 1e-12
        assert global_phase_distance(np.exp(0.9j) * u, u, norm="fro") < 1e-12

    def test_trace_distance_of_orthogonal_states(self):
        assert trace_distance(StateVector.basis(2, 0).projector(),
                              StateVector.basis(2, 1).projector()) == pytest.approx(1.0)

    def test_schmidt_rank(self):
        product = StateVector(np.kron([1, 0], [0.6, 0.8]))
        bell = StateVector(np.array([1, 0, 0, 1]) / np.sqrt(2))
        assert schmidt_rank(product, (2, 2)) == 1
        assert schmidt_rank(bell, (2, 2)) == 2
