"""
Approximating arbitrary one-qubit unitaries with words over a finite gate set.

Unitaries are compared modulo global phase through unit quaternions: a 2 x 2
unitary with SU(2) part q0 I - i(q1 X + q2 Y + q3 Z) maps to (q0, q1, q2, q3),
and |<q_u, q_v>| = |tr(U^dagger V)| / 2.
"""

import logging
from dataclasses import dataclass

import numpy as np

from errors import DimensionError, PreconditionError
from gates.gates import gate_distance
from quantum_core import PAULI, ComplexMatrix, as_square


DEFAULT_TABLE_DEPTH = 20
DEFAULT_MAX_GATES = 30

status_logger = logging.getLogger("status_logger")


def default_generators() -> dict[str, ComplexMatrix]:
    """The phase shift diag(1, e^{i pi/4}) and the Hadamard gate."""
    return {
        "T": np.diag([1.0, np.exp(0.25j * np.pi)]).astype(np.complex128),
        "H": np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2),
    }


def quaternions(mats: np.ndarray) -> np.ndarray:
    """Unit quaternions of a stack of 2 x 2 unitaries, sign fixed by the first non-negligible entry."""
    mats = np.asarray(mats, dtype=np.complex128)
    v = mats / np.sqrt(np.linalg.det(mats))[:, None, None]
    q0 = np.trace(v, axis1=1, axis2=2).real / 2
    qk = (0.5j * np.einsum("mij,kji->mk", v, np.asarray(PAULI))).real
    q = np.column_stack((q0, qk))
    lead = np.argmax(np.abs(q) > 1e-9, axis=1)
    sign = np.sign(q[np.arange(q.shape[0]), lead])
    return q * np.where(sign == 0, 1.0, sign)[:, None]


@dataclass(frozen=True)
class WordTable:
    """
    Distinct products of generator words, shortest word first.

    Attributes:
        words (tuple[tuple[str, ...], ...]): Gate names in application order.
        quats (np.ndarray): Quaternion of each word's unitary, shape (N, 4).
        lengths (np.ndarray): Word lengths.
    """
    words: tuple[tuple[str, ...], ...]
    quats: np.ndarray
    lengths: np.ndarray


def word_table(generators: dict[str, ComplexMatrix], depth: int = DEFAULT_TABLE_DEPTH) -> WordTable:
    """Breadth-first enumeration of words up to ``depth``, keeping one word per distinct unitary."""
    names = list(generators)
    gens = [as_square(generators[name]) for name in names]
    if any(g.shape != (2, 2) for g in gens):
        raise DimensionError("generators must be 2 x 2 unitaries")

    frontier = np.eye(2, dtype=np.complex128)[None]
    frontier_words: list[tuple[str, ...]] = [()]
    words = [()]
    quats = [quaternions(frontier)]
    seen = {np.round(quats[0][0] * 1e8).astype(np.int64).tobytes()}

    for _ in range(depth):
        next_mats, next_words = [], []
        for name, g in zip(names, gens):
            products = g @ frontier
            keys = np.round(quaternions(products) * 1e8).astype(np.int64)
            for idx, key in enumerate(keys):
                k = key.tobytes()
                if k not in seen:
                    seen.add(k)
                    next_mats.append(products[idx])
                    next_words.append(frontier_words[idx] + (name,))
        if not next_mats:
            break
        frontier = np.stack(next_mats)
        frontier_words = next_words
        words.extend(next_words)
        quats.append(quaternions(frontier))

    return WordTable(words=tuple(words),
                     quats=np.concatenate(quats),
                     lengths=np.array([len(w) for w in words]))


def word_matrix(word, generators: dict[str, ComplexMatrix]) -> ComplexMatrix:
    """Product of the word's gates, first gate rightmost."""
    result = np.eye(2, dtype=np.complex128)
    for name in word:
        result = as_square(generators[name]) @ result
    return result


def _best_block(table: WordTable, residual: np.ndarray, budget: int, short: np.ndarray):
    """
    Best single word, or pair of words (long after short), approximating ``residual``
    within ``budget`` gates. Returns (overlap, word).
    """
    best_overlap, best_word = -1.0, None

    eligible = table.lengths <= budget
    overlaps = np.abs(table.quats @ quaternions(residual[None])[0])
    overlaps[~eligible] = -1.0
    idx = int(np.argmax(overlaps))
    if overlaps[idx] >= 0:
        best_overlap, best_word = float(overlaps[idx]), table.words[idx]

    short = short[table.lengths[short] < budget]
    if short.size:
        # residual ~ long . short  =>  long ~ residual . short^dagger
        q_r = quaternions(residual[None])[0]
        q_s = table.quats[short]
        # quaternion of residual . s^dagger, for s a unit quaternion
        wanted = _quat_multiply(q_r, _quat_conjugate(q_s))
        scores = np.abs(wanted @ table.quats.T)
        remaining = budget - table.lengths[short]
        scores[table.lengths[None, :] > remaining[:, None]] = -1.0
        i, j = np.unravel_index(int(np.argmax(scores)), scores.shape)
        if scores[i, j] > best_overlap:
            best_overlap = float(scores[i, j])
            best_word = table.words[short[i]] + table.words[j]

    return best_overlap, best_word


def _quat_conjugate(q: np.ndarray) -> np.ndarray:
    return q * np.array([1.0, -1.0, -1.0, -1.0])


def _quat_multiply(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """
    Quaternion of the product of the unitaries of p and q.

    With U = q0 I - i q.sigma, (p0 - i p.sigma)(q0 - i q.sigma)
    = (p0 q0 - p.q) I - i (p0 q + q0 p + p x q).sigma.
    """
    p = np.broadcast_to(p, np.broadcast_shapes(p.shape, q.shape))
    q = np.broadcast_to(q, p.shape)
    scalar = p[..., 0] * q[..., 0] - np.sum(p[..., 1:] * q[..., 1:], axis=-1)
    vector = (p[..., :1] * q[..., 1:] + q[..., :1] * p[..., 1:]
              + np.cross(p[..., 1:], q[..., 1:]))
    return np.concatenate((scalar[..., None], vector), axis=-1)


def greedy_approximation(target,
                         generators: dict[str, ComplexMatrix] | None = None,
                         max_gates: int = DEFAULT_MAX_GATES,
                         depth: int = DEFAULT_TABLE_DEPTH,
                         tolerance: float = 0.1) -> tuple[tuple[str, ...], ComplexMatrix, float]:
    """
    Greedy word search for a one-qubit target.

    A table of distinct words up to ``depth`` is built once; blocks (a table
    word, or a short word followed by a table word) are then appended while
    they reduce the distance to the target and the gate budget allows.

    Args:
        target: 2 x 2 unitary.
        generators (dict): Gate name to 2 x 2 unitary; defaults to {T, H}.
        max_gates (int): Gate budget.
        depth (int): Longest word in the table.
        tolerance (float): Search stops once ``gate_distance`` drops below it.

    Returns:
        tuple: (word in application order, its unitary, its distance to the target).
    """
    target = as_square(target)
    if target.shape != (2, 2):
        raise DimensionError(f"expected a 2 x 2 target, got shape {target.shape}")
    if max_gates < 1:
        raise PreconditionError("max_gates must be positive")
    generators = default_generators() if generators is None else generators

    table = word_table(generators, min(depth, max_gates))
    short = np.flatnonzero(table.lengths <= max(0, max_gates - depth))

    word: tuple[str, ...] = ()
    current = np.eye(2, dtype=np.complex128)
    distance = gate_distance(current, target)

    while distance >= tolerance and len(word) < max_gates:
        residual = target @ current.conj().T
        _, block = _best_block(table, residual, max_gates - len(word), short)
        if not block:
            break
        candidate = word_matrix(block, generators) @ current
        candidate_distance = gate_distance(candidate, target)
        if candidate_distance >= distance - 1e-12:
            break
        word, current, distance = word + block, candidate, candidate_distance

    status_logger.debug("Greedy approximation: %d gates, distance %.4f", len(word), distance)
    return word, current, distance
