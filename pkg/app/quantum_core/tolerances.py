"""Central tolerance table.

All modules read the shared ``TOL`` instance at call time, so a test can
override a single entry with ``monkeypatch.setattr(TOL, "unitary", 1e-8)``.
"""

from dataclasses import dataclass


@dataclass
class Tolerances:
    """
    Numerical tolerances used across the package.

    Attributes:
        hermitian (float): Max entrywise deviation of M from M^dagger.
        unitary (float): Max entrywise deviation of U^dagger U from I.
        normalization (float): Allowed deviation of a squared norm from 1.
        trace (float): Allowed deviation of a density-matrix trace from 1.
        positivity (float): Most negative eigenvalue tolerated in a density matrix.
        orthonormal (float): Max deviation of a Gram matrix from I.
        fidelity_imag (float): Largest imaginary part tolerated in a fidelity.
        evolution_unitary (float): Unitarity bound for time-evolution operators.
        cyclic (float): Max entrywise frame mismatch between loop ends.
        pulse_area (float): Allowed deviation of a loop's pulse area from pi.
        adjacent_overlap (float): Minimal singular value of adjacent-frame overlaps.
        holonomy_unitary (float): Unitarity bound for computed holonomies.
        principal_angle (float): Largest principal angle for "same subspace".
        gauge_single_valued (float): Allowed mismatch V(tau) - V(0).
        lindblad_trace (float): Trace deviation accepted in sweep outputs.
        lindblad_drift (float): Trace drift that aborts an integration.
        lindblad_min_eig (float): Most negative eigenvalue accepted in outputs.
        gate_match (float): Pass threshold of a gate verification.
        max_dim (int): Largest matrix dimension handled by matrix_exponential.
    """
    hermitian: float = 1e-12
    unitary: float = 1e-10
    normalization: float = 1e-12
    trace: float = 1e-10
    positivity: float = 1e-9
    orthonormal: float = 1e-10
    fidelity_imag: float = 1e-10
    evolution_unitary: float = 1e-9
    cyclic: float = 1e-8
    pulse_area: float = 1e-9
    adjacent_overlap: float = 0.99
    holonomy_unitary: float = 1e-8
    principal_angle: float = 1e-8
    gauge_single_valued: float = 1e-8
    lindblad_trace: float = 1e-8
    lindblad_drift: float = 1e-6
    lindblad_min_eig: float = -1e-7
    gate_match: float = 1e-6
    max_dim: int = 16


TOL = Tolerances()
