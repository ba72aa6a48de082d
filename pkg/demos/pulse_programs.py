"""Inspect the pulse-level compilation of the teleportation gates.

Dumps each compiled program (one line per constant-control segment) and checks
its noise-free unitary against the canonical gate matrix.  Durations are in
the package's dimensionless units where the reference field and coupling
amplitudes are 1, so a pi rotation takes time pi.
"""

import numpy as np

from qtelsim import (
    cnot_pulse,
    controlled_gate,
    controlled_pauli_pulse,
    hadamard_pulse,
    ideal_unitary,
    program_dump,
)
from qtelsim.pulses import phase_aligned_distance
from qtelsim.quantum import HADAMARD, PAULI_X, PAULI_Z, single_qubit_gate


def show(name, program, target):
    dist = phase_aligned_distance(ideal_unitary(program), target)
    print(f"--- {name}: {len(program.segments)} segments, "
          f"duration {program.total_duration / np.pi:.3f} pi, "
          f"max deviation from canonical {dist:.2e}")
    print(program_dump(program))
    print()


show("Hadamard (qubit 1)", hadamard_pulse(0), single_qubit_gate(HADAMARD, 0, 1))
show("CNOT (1 -> 2)", cnot_pulse(0, 1), controlled_gate(0, 1, PAULI_X, 2))
show("CZ (1 -> 2)", controlled_pauli_pulse(0, 1, "z"), controlled_gate(0, 1, PAULI_Z, 2))

rotation = cnot_pulse(0, 1, 3) + hadamard_pulse(0, 3)
correction = cnot_pulse(1, 2, 3) + controlled_pauli_pulse(0, 2, "z", 3)
print(f"measurement-basis rotation window: {rotation.total_duration / np.pi:.2f} pi")
print(f"conditional-correction window:     {correction.total_duration / np.pi:.2f} pi")
print("(these set the gate-noise exposure windows: rate = kappa_tau / window)")
