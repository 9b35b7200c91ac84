"""
Loop specifications and their frame lifts.

A frame is an N x K matrix whose columns are orthonormal vectors spanning the
transported subspace. A trajectory stores the frames on a time grid as an
array of shape (M + 1, N, K).
"""

import json
from collections.abc import Callable
from dataclasses import dataclass
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from errors import (
    ConstructionError,
    DimensionError,
    GaugeViolationError,
    NotCyclicError,
    PreconditionError,
)
from lambda_models import (
    LambdaParams,
    PulseEnvelope,
    TwoQubitParams,
    coupling_operator,
    dark_bright_states,
    pulse_area,
    square_pulse,
    two_qubit_dark_bright,
    two_qubit_generators,
)
from quantum_core import TOL, ComplexMatrix, StateVector, frame_matrix


DEFAULT_LOOP_STEPS = 2000


class LoopSpec(BaseModel):
    """
    A holonomic loop: a pi pulse whose couplings point along n.

    Attributes:
        theta (float): Polar angle of n.
        phi (float): Azimuthal angle of n.
        pulse (PulseEnvelope): Envelope Omega(t) (one qubit) or g(t) (two qubits).
        subspace (str): "one-qubit" or "two-qubit".
    """
    model_config = ConfigDict(frozen=True)

    theta: float = Field(description="Polar angle of the loop axis n, radians.")
    phi: float = Field(description="Azimuthal angle of the loop axis n, radians.")
    pulse: PulseEnvelope = Field(
        default_factory=square_pulse,
        description="Pulse envelope; the loop closes when its area equals pi."
    )
    subspace: Literal["one-qubit", "two-qubit"] = Field(
        default="one-qubit",
        description="Transported subspace: span{|0>,|1>} or span{|00>,|11>} of two ions."
    )

    @classmethod
    def from_n_vector(cls, n, pulse: PulseEnvelope | None = None, subspace: str = "one-qubit") -> "LoopSpec":
        n = np.asarray(n, dtype=float)
        if abs(np.linalg.norm(n) - 1.0) > TOL.normalization:
            raise ConstructionError(f"n must be a unit vector, got norm {np.linalg.norm(n)!r}")
        theta = float(np.arctan2(np.hypot(n[0], n[1]), n[2]))
        phi = float(np.arctan2(n[1], n[0]))
        kwargs = {} if pulse is None else {"pulse": pulse}
        return cls(theta=theta, phi=phi, subspace=subspace, **kwargs)

    @property
    def n_vector(self) -> np.ndarray:
        return np.array([np.sin(self.theta) * np.cos(self.phi),
                         np.sin(self.theta) * np.sin(self.phi),
                         np.cos(self.theta)])

    @property
    def dim(self) -> int:
        return 3 if self.subspace == "one-qubit" else 9

    def lambda_params(self) -> LambdaParams:
        return LambdaParams.from_angles(self.theta, self.phi, self.pulse)

    def two_qubit_params(self) -> TwoQubitParams:
        return TwoQubitParams(theta=self.theta, phi=self.phi, envelope=self.pulse)

    def generator(self) -> ComplexMatrix:
        """Time-independent part of the Hamiltonian: H(t) = pulse(t) * generator."""
        if self.subspace == "one-qubit":
            return coupling_operator(self.lambda_params())
        h0, h1 = two_qubit_generators(self.theta, self.phi)
        return h0 + h1

    def dark_bright(self) -> tuple[StateVector, StateVector, StateVector]:
        """Dark vector, bright vector and the excited vector the bright one rotates into."""
        if self.subspace == "one-qubit":
            dark, bright = dark_bright_states(self.lambda_params())
            return dark, bright, StateVector(coupling_operator(self.lambda_params()) @ bright.amplitudes)
        return two_qubit_dark_bright(self.theta, self.phi)

    def initial_frame(self) -> ComplexMatrix:
        dark, bright, _ = self.dark_bright()
        return frame_matrix([dark, bright])


@dataclass(frozen=True)
class ConnectionSample:
    """Connection matrix A_kl = i<zeta_k|d zeta_l/dt> at one grid time."""
    time: float
    a_matrix: np.ndarray

    def __post_init__(self):
        a = np.array(self.a_matrix, dtype=np.complex128, copy=True)
        if float(np.max(np.abs(a - a.conj().T), initial=0.0)) > TOL.orthonormal:
            raise ConstructionError(f"connection sample at t={self.time} is not Hermitian")
        a.setflags(write=False)
        object.__setattr__(self, "a_matrix", a)


def orthonormalize(frames: np.ndarray) -> np.ndarray:
    """
    Gram-Schmidt on the columns of every frame in a stack.

    Batched QR with the phases of diag(R) moved into Q, so an orthonormal
    frame is returned unchanged up to rounding.
    """
    q, r = np.linalg.qr(frames)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    phases = np.where(np.abs(d) > 0, d / np.where(np.abs(d) > 0, np.abs(d), 1.0), 1.0)
    return q * phases[..., np.newaxis, :]


def _read_only(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class FrameTrajectory:
    """
    Time-indexed orthonormal K-frames in C^N.

    Attributes:
        times (np.ndarray): Strictly increasing grid t_0 ... t_M.
        frames (np.ndarray): Complex array of shape (M + 1, N, K).
        cyclic (bool): Whether the last frame equals the first.
    """
    times: np.ndarray
    frames: np.ndarray
    cyclic: bool = False

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        frames = np.asarray(self.frames, dtype=np.complex128)
        if times.ndim != 1 or times.shape[0] < 2:
            raise DimensionError("a trajectory needs at least two grid times")
        if np.any(np.diff(times) <= 0):
            raise PreconditionError("trajectory times must be strictly increasing")
        if frames.ndim != 3 or frames.shape[0] != times.shape[0]:
            raise DimensionError(f"frames of shape {frames.shape} do not match {times.shape[0]} times")

        gram = np.einsum("mnk,mnl->mkl", frames.conj(), frames)
        deviation = float(np.max(np.abs(gram - np.eye(frames.shape[2]))))
        if deviation > TOL.orthonormal:
            raise PreconditionError(f"frames are not orthonormal (Gram deviation {deviation:.3e})")

        if self.cyclic:
            mismatch = float(np.max(np.abs(frames[-1] - frames[0])))
            if mismatch > TOL.cyclic:
                raise NotCyclicError(f"last frame differs from the first by {mismatch:.3e}")

        object.__setattr__(self, "times", _read_only(times))
        object.__setattr__(self, "frames", _read_only(frames))

    @property
    def n_steps(self) -> int:
        return self.times.shape[0] - 1

    @property
    def dim(self) -> int:
        return self.frames.shape[1]

    @property
    def rank(self) -> int:
        return self.frames.shape[2]

    def reversed(self) -> "FrameTrajectory":
        """The same loop traversed backwards over the same time interval."""
        times = self.times[0] + self.times[-1] - self.times[::-1]
        return FrameTrajectory(times=times, frames=self.frames[::-1], cyclic=self.cyclic)

    def to_json(self) -> str:
        """Times plus, per time and per frame vector, interleaved [re, im, re, im, ...] amplitudes."""
        frames = [
            [np.column_stack((col.real, col.imag)).ravel().tolist() for col in frame.T]
            for frame in self.frames
        ]
        return json.dumps({
            "times": self.times.tolist(),
            "dim": self.dim,
            "rank": self.rank,
            "cyclic": self.cyclic,
            "frames": frames,
        })

    @classmethod
    def from_json(cls, data: str) -> "FrameTrajectory":
        payload = json.loads(data)
        flat = np.asarray(payload["frames"], dtype=float)
        amplitudes = flat[..., 0::2] + 1j * flat[..., 1::2]
        return cls(times=np.asarray(payload["times"]),
                   frames=np.swapaxes(amplitudes, 1, 2),
                   cyclic=bool(payload["cyclic"]))


def lift_loop(loop: LoopSpec, steps: int = DEFAULT_LOOP_STEPS) -> FrameTrajectory:
    """
    Single-valued lift of a pi-pulse loop.

    zeta_1(t) = |d>, zeta_2(t) = e^{i delta}(cos(delta)|b> - i sin(delta)|p>) with
    delta(t) the pulse area accumulated up to t and |p> the excited vector the
    bright state couples to (|e> for one ion, e^{-i phi/2}|ee> for two).

    Raises:
        NotCyclicError: If the pulse area differs from pi.
    """
    area = pulse_area(loop.pulse)
    if abs(area - np.pi) > TOL.pulse_area:
        raise NotCyclicError(f"pulse area {area!r} differs from pi by {abs(area - np.pi):.3e}")
    if steps < 2:
        raise PreconditionError("a lift needs at least two steps")

    times = np.linspace(loop.pulse.t_start, loop.pulse.t_end, steps + 1)
    delta = loop.pulse.cumulative_area(times)
    dark, bright, partner = loop.dark_bright()

    zeta1 = np.broadcast_to(dark.amplitudes, (times.shape[0], dark.dim))
    zeta2 = np.exp(1j * delta)[:, None] * (np.cos(delta)[:, None] * bright.amplitudes
                                           - 1j * np.sin(delta)[:, None] * partner.amplitudes)
    frames = orthonormalize(np.stack((zeta1, zeta2), axis=-1))
    return FrameTrajectory(times=times, frames=frames, cyclic=True)


def _gauge_matrices(f: FrameTrajectory, v) -> np.ndarray:
    if callable(v):
        mats = np.stack([np.asarray(v(t), dtype=np.complex128) for t in f.times])
    else:
        mats = np.asarray(v, dtype=np.complex128)
        if mats.ndim == 2:
            mats = np.broadcast_to(mats, (f.times.shape[0], *mats.shape))
    if mats.shape != (f.times.shape[0], f.rank, f.rank):
        raise DimensionError(f"gauge matrices of shape {mats.shape} do not fit rank {f.rank}")
    return mats


def gauge_transform(f: FrameTrajectory,
                    v: np.ndarray | Callable[[float], np.ndarray]) -> FrameTrajectory:
    """
    New frames zeta'_k = sum_l zeta_l V_lk.

    Args:
        f (FrameTrajectory): Trajectory to transform.
        v: A constant K x K unitary, an array of one unitary per grid time, or
            a callable t -> K x K unitary.

    Raises:
        GaugeViolationError: If V is not unitary or V(tau) != V(0) on a cyclic trajectory.
    """
    mats = _gauge_matrices(f, v)
    gram = np.einsum("mlk,mlj->mkj", mats.conj(), mats)
    deviation = float(np.max(np.abs(gram - np.eye(f.rank))))
    if deviation > TOL.unitary:
        raise GaugeViolationError(f"gauge matrices are not unitary (deviation {deviation:.3e})")
    if f.cyclic:
        mismatch = float(np.max(np.abs(mats[-1] - mats[0])))
        if mismatch > TOL.gauge_single_valued:
            raise GaugeViolationError(f"gauge transformation is not single-valued: V(tau) - V(0) = {mismatch:.3e}")

    return FrameTrajectory(times=f.times, frames=f.frames @ mats, cyclic=f.cyclic)
