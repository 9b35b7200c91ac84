from .linalg import (
    IDENTITY_2,
    PAULI,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    ComplexMatrix,
    as_square,
    commutator,
    dagger,
    frame_matrix,
    global_phase_distance,
    haar_unitary,
    is_hermitian,
    is_unitary,
    matrix_exponential,
    orthonormality_deviation,
    project_onto_subspace,
    random_hermitian,
    schmidt_rank,
    state_fidelity,
    tensor_product,
    trace_distance,
    unitarity_deviation,
)
from .states import DensityMatrix, StateVector
from .tolerances import TOL, Tolerances

__all__ = [
    "IDENTITY_2",
    "PAULI",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "TOL",
    "ComplexMatrix",
    "DensityMatrix",
    "StateVector",
    "Tolerances",
    "as_square",
    "commutator",
    "dagger",
    "frame_matrix",
    "global_phase_distance",
    "haar_unitary",
    "is_hermitian",
    "is_unitary",
    "matrix_exponential",
    "orthonormality_deviation",
    "project_onto_subspace",
    "random_hermitian",
    "schmidt_rank",
    "state_fidelity",
    "tensor_product",
    "trace_distance",
    "unitarity_deviation",
]
