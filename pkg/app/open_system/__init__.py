from .experiments import (
    ADIABATIC_CORNERS,
    ADIABATIC_DIM,
    NONADIABATIC_DIM,
    AdiabaticLoopSpec,
    ProtocolRun,
    adiabatic_ideal_gate,
    adiabatic_loop,
    adiabatic_phase_gate_run,
    adiabatic_protocol,
    bloch_sphere_amplitudes,
    bloch_sphere_sample,
    nonadiabatic_phase_gate_run,
    nonadiabatic_protocol,
)
from .integrators import (
    DecayModel,
    apply_superoperator,
    dynamical_matrix_elements,
    evolve_commuting,
    evolve_lindblad,
    evolve_unitary,
    evolve_unitary_path,
    free_decay_propagator,
    lindblad_propagator,
    liouvillian,
)
from .sweep import (
    FidelityReport,
    evaluate_protocol,
    fidelity_sweep,
    fidelity_sweep_async,
    run_grid_point,
)

__all__ = [
    "ADIABATIC_CORNERS",
    "ADIABATIC_DIM",
    "NONADIABATIC_DIM",
    "AdiabaticLoopSpec",
    "DecayModel",
    "FidelityReport",
    "ProtocolRun",
    "adiabatic_ideal_gate",
    "adiabatic_loop",
    "adiabatic_phase_gate_run",
    "adiabatic_protocol",
    "apply_superoperator",
    "bloch_sphere_amplitudes",
    "bloch_sphere_sample",
    "dynamical_matrix_elements",
    "evaluate_protocol",
    "evolve_commuting",
    "evolve_lindblad",
    "evolve_unitary",
    "evolve_unitary_path",
    "fidelity_sweep",
    "fidelity_sweep_async",
    "free_decay_propagator",
    "lindblad_propagator",
    "liouvillian",
    "nonadiabatic_phase_gate_run",
    "nonadiabatic_protocol",
    "run_grid_point",
]
