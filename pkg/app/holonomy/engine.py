"""
Holonomies of loops of subspaces.

With the connection A_kl = i<zeta_k|d zeta_l> the holonomy is the path-ordered
exponential P exp(i closed-integral A), later times standing to the left. Its
matrix is expressed in the frame at the base point of the loop.
"""

import logging
from collections.abc import Sequence

import numpy as np

from errors import (
    DimensionError,
    NotCyclicError,
    NumericalIntegrityError,
    PreconditionError,
    ResolutionError,
    SpanMismatchError,
)
from holonomy.frames import (
    DEFAULT_LOOP_STEPS,
    ConnectionSample,
    FrameTrajectory,
    LoopSpec,
    lift_loop,
)
from lambda_models import COMPUTATIONAL_TWO_QUBIT
from quantum_core import (
    TOL,
    ComplexMatrix,
    StateVector,
    commutator,
    frame_matrix,
    matrix_exponential,
    orthonormality_deviation,
    unitarity_deviation,
)


HOLONOMY_METHODS = ("overlap", "magnus")

status_logger = logging.getLogger("status_logger")


def _adjacent_overlaps(f: FrameTrajectory) -> np.ndarray:
    """F_{j+1}^dagger F_j for every step."""
    return np.einsum("mnk,mnl->mkl", f.frames[1:].conj(), f.frames[:-1])


def min_adjacent_overlap(f: FrameTrajectory) -> float:
    """Smallest singular value over all adjacent-frame overlaps."""
    singular = np.linalg.svd(_adjacent_overlaps(f), compute_uv=False)
    return float(singular.min())


def connection_one_form(f: FrameTrajectory) -> list[ConnectionSample]:
    """
    Samples of A = i F^dagger dF/dt on the grid.

    Derivatives are central differences inside the grid and second-order
    one-sided stencils at the ends; each sample is Hermitized.

    Raises:
        ResolutionError: If adjacent frames overlap less than ``TOL.adjacent_overlap``.
    """
    if f.n_steps < 2:
        raise ResolutionError("connection estimate needs at least three grid points")
    overlap = min_adjacent_overlap(f)
    if overlap < TOL.adjacent_overlap:
        raise ResolutionError(
            f"grid too coarse: adjacent frame overlap {overlap:.4f} < {TOL.adjacent_overlap}; use more steps")

    derivative = np.gradient(f.frames, f.times, axis=0, edge_order=2)
    a = 1j * np.einsum("mnk,mnl->mkl", f.frames.conj(), derivative)
    a = (a + np.swapaxes(a.conj(), 1, 2)) / 2
    return [ConnectionSample(time=float(t), a_matrix=a_t) for t, a_t in zip(f.times, a)]


def _step_factors(f: FrameTrajectory, method: str) -> np.ndarray:
    if method == "overlap":
        # polar part of F_{j+1}^dagger F_j: the parallel-transport step
        u, _, vh = np.linalg.svd(_adjacent_overlaps(f))
        return u @ vh

    samples = connection_one_form(f)
    a = np.stack([s.a_matrix for s in samples])
    mid = (a[1:] + a[:-1]) / 2
    dt = np.diff(f.times)
    return np.stack([matrix_exponential(m, 1j * h) for m, h in zip(mid, dt)])


def holonomy(f: FrameTrajectory, method: str = "overlap") -> ComplexMatrix:
    """
    Path-ordered holonomy of a closed frame trajectory.

    Args:
        f (FrameTrajectory): Cyclic trajectory.
        method (str): "overlap" (default) multiplies the unitary parts of adjacent-frame
            overlaps (the exponential of the step-averaged connection, exactly
            gauge covariant); "magnus" exponentiates the midpoint average of
            the finite-difference connection per step.

    Returns:
        ComplexMatrix: K x K unitary in the basis of the frame at t_0.

    Raises:
        NotCyclicError: If the trajectory is not closed.
    """
    if method not in HOLONOMY_METHODS:
        raise PreconditionError(f"unknown holonomy method: {method!r}")
    if not f.cyclic:
        raise NotCyclicError("holonomy needs a cyclic frame trajectory")

    overlap = min_adjacent_overlap(f)
    if overlap < TOL.adjacent_overlap:
        status_logger.warning("Coarse holonomy grid: adjacent frame overlap %.4f with %d steps",
                              overlap, f.n_steps)

    result = np.eye(f.rank, dtype=np.complex128)
    for factor in _step_factors(f, method):
        result = factor @ result

    deviation = unitarity_deviation(result)
    if deviation > TOL.holonomy_unitary:
        raise NumericalIntegrityError(f"holonomy is not unitary (deviation {deviation:.3e})")
    return result


def _as_frame(frame) -> ComplexMatrix:
    if isinstance(frame, FrameTrajectory):
        return np.asarray(frame.frames[0])
    return frame_matrix(frame)


def overlap_matrix(frame_a: Sequence[StateVector] | np.ndarray,
                   frame_b: Sequence[StateVector] | np.ndarray) -> ComplexMatrix:
    """
    W_kl = <a_k|b_l> between two orthonormal frames of the same subspace.

    Raises:
        SpanMismatchError: If the largest principal angle exceeds ``TOL.principal_angle``.
    """
    a, b = _as_frame(frame_a), _as_frame(frame_b)
    if a.shape != b.shape:
        raise DimensionError(f"frame shapes differ: {a.shape} vs {b.shape}")
    for name, frame in (("frame_a", a), ("frame_b", b)):
        if orthonormality_deviation(frame) > TOL.orthonormal:
            raise PreconditionError(f"{name} is not orthonormal")

    w = a.conj().T @ b
    # sines of the principal angles are the singular values of the part of b outside span(a)
    sines = np.linalg.svd(b - a @ w, compute_uv=False)
    if float(sines.max()) > TOL.principal_angle:
        raise SpanMismatchError(f"frames span different subspaces (largest principal-angle sine {sines.max():.3e})")
    return w


def compose_loops(z_list: Sequence[np.ndarray],
                  w_list: Sequence[np.ndarray] | None = None) -> ComplexMatrix:
    """
    Holonomy of loops traversed one after another from a common base point.

    Each loop i > 1 has its own base frame; ``w_list[i - 1]`` is its overlap
    matrix with the first loop's frame, so the loop contributes W^dagger Z W.
    For loops n then m this gives W^dagger Z_m W Z_n.
    """
    if not z_list:
        raise DimensionError("no loops to compose")
    zs = [np.asarray(z, dtype=np.complex128) for z in z_list]
    if w_list is None:
        ws = [np.eye(zs[0].shape[0], dtype=np.complex128)] * (len(zs) - 1)
    else:
        ws = [np.asarray(w, dtype=np.complex128) for w in w_list]
    if len(ws) != len(zs) - 1:
        raise DimensionError(f"{len(zs)} loops need {len(zs) - 1} overlap matrices, got {len(ws)}")
    shape = zs[0].shape
    if any(m.shape != shape for m in (*zs, *ws)):
        raise DimensionError("holonomies and overlap matrices must share one square shape")

    result = zs[0]
    for z, w in zip(zs[1:], ws):
        result = w.conj().T @ z @ w @ result
    return result


def pushforward(u: np.ndarray, frame) -> ComplexMatrix:
    """sum_kl U_kl |zeta_k><zeta_l| as an operator on the full space."""
    f = _as_frame(frame)
    return f @ np.asarray(u, dtype=np.complex128) @ f.conj().T


def loops_commute(u1: np.ndarray, u2: np.ndarray, tol: float = 1e-9) -> bool:
    """Whether two holonomies based at the same point commute."""
    return float(np.max(np.abs(commutator(np.asarray(u1), np.asarray(u2))))) < tol


def loop_holonomy(loop: LoopSpec,
                  steps: int = DEFAULT_LOOP_STEPS,
                  method: str = "overlap") -> tuple[ComplexMatrix, FrameTrajectory]:
    """Lifts a loop and returns its holonomy together with the lift."""
    lift = lift_loop(loop, steps)
    return holonomy(lift, method), lift


def composite_holonomy(loops: Sequence[LoopSpec],
                       steps: int = DEFAULT_LOOP_STEPS,
                       method: str = "overlap") -> tuple[ComplexMatrix, FrameTrajectory]:
    """
    Holonomy of several loops applied in order, in the first loop's base frame.

    Returns the composed K x K matrix and the first loop's lift.
    """
    if not loops:
        raise DimensionError("no loops to compose")
    results = [loop_holonomy(loop, steps, method) for loop in loops]
    base = results[0][1]
    zs = [z for z, _ in results]
    ws = [overlap_matrix(lift, base) for _, lift in results[1:]]
    return compose_loops(zs, ws), base


def holonomic_gate(loop: LoopSpec,
                   steps: int = DEFAULT_LOOP_STEPS,
                   method: str = "overlap") -> ComplexMatrix:
    """Gate on the computational subspace realized by the holonomy of one loop."""
    return composite_gate([loop], steps, method)


def composite_gate(loops: Sequence[LoopSpec],
                   steps: int = DEFAULT_LOOP_STEPS,
                   method: str = "overlap") -> ComplexMatrix:
    """
    Push-forward of the composite holonomy restricted to the computational
    subspace: 2 x 2 for one-qubit loops, 4 x 4 over |00>, |01>, |10>, |11>
    for two-qubit loops, where the untouched |01> and |10> are passed through.
    """
    if len({loop.subspace for loop in loops}) != 1:
        raise PreconditionError("all loops of a composite gate must act on the same subspace")
    u, base = composite_holonomy(loops, steps, method)
    full = pushforward(u, base)
    if loops[0].subspace == "one-qubit":
        return full[:2, :2]

    idx = np.asarray(COMPUTATIONAL_TWO_QUBIT)
    gate = full[np.ix_(idx, idx)]
    # |01> and |10> are orthogonal to the transported subspace and stay fixed
    gate[1, 1] += 1.0
    gate[2, 2] += 1.0
    return gate
