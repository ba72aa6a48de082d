"""qtelsim: density-matrix simulation of qubit teleportation through noisy channels."""

from .quantum import (
    HADAMARD,
    PAULI,
    bell_phi_plus,
    bloch_state,
    bloch_vector,
    check_density_matrix,
    controlled_gate,
    fidelity_pure,
    partial_trace,
    pauli,
    pure_state,
    single_qubit_gate,
    singlet_fraction,
    tensor,
)
from .lindblad import (
    IntegrationError,
    IntegratorConfig,
    NoiseSchedule,
    NoiseTerm,
    depolarization_probe,
    evolve,
    lindblad_rhs,
)
from .pulses import (
    CompileError,
    PulseProgram,
    PulseSegment,
    cnot_pulse,
    controlled_pauli_pulse,
    hadamard_pulse,
    ideal_unitary,
    program_dump,
    rx_pulse,
    ry_pulse,
    xy_coupling_pulse,
)
from .teleport import (
    NoiseCase,
    TeleportResult,
    average_fidelity,
    custom_channel_average,
    custom_channel_surface,
    dephased_bell_channel,
    evolve_through_program,
    fidelity_range_contour,
    fidelity_surface,
    g_statistic,
    maximally_mixed_channel,
    popescu_channel,
    run_case,
    run_custom_channel,
)
from .oracles import f_case_a_iso, f_case_a_x, f_case_a_z, f_case_b, favg, horodecki_optimal
from .sphere import DecayFit, FitError, QuadratureSpec, average_over_sphere, fit_exponential

__version__ = "0.1.0"

__all__ = [
    "HADAMARD",
    "PAULI",
    "bell_phi_plus",
    "bloch_state",
    "bloch_vector",
    "check_density_matrix",
    "controlled_gate",
    "fidelity_pure",
    "partial_trace",
    "pauli",
    "pure_state",
    "single_qubit_gate",
    "singlet_fraction",
    "tensor",
    "IntegrationError",
    "IntegratorConfig",
    "NoiseSchedule",
    "NoiseTerm",
    "depolarization_probe",
    "evolve",
    "lindblad_rhs",
    "CompileError",
    "PulseProgram",
    "PulseSegment",
    "cnot_pulse",
    "controlled_pauli_pulse",
    "hadamard_pulse",
    "ideal_unitary",
    "program_dump",
    "rx_pulse",
    "ry_pulse",
    "xy_coupling_pulse",
    "NoiseCase",
    "TeleportResult",
    "average_fidelity",
    "custom_channel_average",
    "custom_channel_surface",
    "dephased_bell_channel",
    "fidelity_range_contour",
    "fidelity_surface",
    "g_statistic",
    "maximally_mixed_channel",
    "popescu_channel",
    "run_case",
    "evolve_through_program",
    "run_custom_channel",
    "f_case_a_iso",
    "f_case_a_x",
    "f_case_a_z",
    "f_case_b",
    "favg",
    "horodecki_optimal",
    "DecayFit",
    "FitError",
    "QuadratureSpec",
    "average_over_sphere",
    "fit_exponential",
    "__version__",
]
