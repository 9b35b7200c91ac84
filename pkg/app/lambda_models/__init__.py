from .hamiltonians import (
    COMPUTATIONAL_TWO_QUBIT,
    INDEX_EE,
    LEVEL_0,
    LEVEL_1,
    LEVEL_A,
    LEVEL_E,
    LEVEL_G,
    TWO_QUBIT_DIM,
    LambdaParams,
    TwoQubitParams,
    coupling_axis,
    coupling_operator,
    dark_bright_states,
    fold_coupling,
    full_hamiltonian,
    sigma_pair_hamiltonian,
    two_ion_index,
    two_qubit_dark_bright,
    two_qubit_generators,
    two_qubit_hamiltonian,
)
from .pulses import (
    DEFAULT_SECH_HALF_WIDTH,
    ENVELOPE_KINDS,
    PulseEnvelope,
    gudermannian,
    piecewise_pulse,
    pulse_area,
    sech_pulse,
    square_pulse,
)

__all__ = [
    "COMPUTATIONAL_TWO_QUBIT",
    "DEFAULT_SECH_HALF_WIDTH",
    "ENVELOPE_KINDS",
    "INDEX_EE",
    "LEVEL_0",
    "LEVEL_1",
    "LEVEL_A",
    "LEVEL_E",
    "LEVEL_G",
    "TWO_QUBIT_DIM",
    "LambdaParams",
    "PulseEnvelope",
    "TwoQubitParams",
    "coupling_axis",
    "coupling_operator",
    "dark_bright_states",
    "fold_coupling",
    "full_hamiltonian",
    "gudermannian",
    "piecewise_pulse",
    "pulse_area",
    "sech_pulse",
    "square_pulse",
    "sigma_pair_hamiltonian",
    "two_ion_index",
    "two_qubit_dark_bright",
    "two_qubit_generators",
    "two_qubit_hamiltonian",
]
