from .gates import (
    GateVerification,
    OneQubitGateSpec,
    TwoQubitGateSpec,
    angles_from_vector,
    compose_two,
    gate_distance,
    gate_from_couplings,
    hadamard_spec,
    normalize_angles,
    one_qubit_gate,
    phase_shift_pair,
    rotation_axis_angle,
    single_loop_shortcut,
    synthesize_one_qubit,
    target_matrix,
    two_qubit_gate,
    verify_gate_against_dynamics,
)
from .universality import (
    WordTable,
    default_generators,
    greedy_approximation,
    word_matrix,
    word_table,
)

__all__ = [
    "GateVerification",
    "OneQubitGateSpec",
    "TwoQubitGateSpec",
    "WordTable",
    "angles_from_vector",
    "compose_two",
    "default_generators",
    "gate_distance",
    "gate_from_couplings",
    "greedy_approximation",
    "hadamard_spec",
    "normalize_angles",
    "one_qubit_gate",
    "phase_shift_pair",
    "rotation_axis_angle",
    "single_loop_shortcut",
    "synthesize_one_qubit",
    "target_matrix",
    "two_qubit_gate",
    "verify_gate_against_dynamics",
    "word_matrix",
    "word_table",
]
