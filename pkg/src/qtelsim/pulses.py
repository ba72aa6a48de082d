"""Piecewise-constant control programs realizing gates on the spin register.

Segments drive the register Hamiltonian

    H = -1/2 sum_i B_i . sigma_i - sum_{i<j} J_ij (sp_i sm_j + sp_j sm_i)

with sp/sm the raising/lowering operators.  Reference amplitudes are
B_REF = J_REF = 1 in the dimensionless units of this package, so durations
equal rotation angles.

Sign conventions (validated at build time, see `cnot_pulse`):

* rotations are R_a(angle) = exp(+i sigma_a angle/2); a positive B_x segment
  of duration d realizes R_x(+B_x d) since exp(-i(-B sx/2)d) = exp(+i B d sx/2),
  and negative angles are realized by flipping the field sign;
* the exchange primitive used by the CNOT sequence is
  U_xy(theta) = exp(-i theta (sp sm + sm sp)), which under the Hamiltonian
  above requires a *negative* coupling amplitude J = -J_REF.  With J = +J_REF
  the same pulse sequence composes to a different two-qubit gate, so the
  compiled CNOT is always checked against the canonical matrix and a
  convention regression raises `CompileError`.

The controlled-NOT is compiled from the sequence (rightmost factor first)

    H_c . Rx_t(pi/2) Rx_c(-pi/2) . U_xy(pi/4) . Rx_c(pi) . U_xy(pi/4) . H_c

where the two adjacent single-qubit rotations commute (different qubits) and
are executed as one segment with both fields on.  Hadamards are compiled as
R_y(pi/2) R_x(pi) = iH; the i is a global phase, invisible at the
density-matrix level.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from .quantum import (
    PAULI_X,
    PAULI_Z,
    SIGMA_MINUS,
    SIGMA_PLUS,
    controlled_gate,
    pauli,
    single_qubit_gate,
)

B_REF = 1.0
J_REF = 1.0

# Tolerance for the build-time comparison of compiled vs canonical unitaries.
COMPILE_TOL = 1e-8


class CompileError(RuntimeError):
    """Raised when a compiled program fails verification against its target gate."""


@dataclass(frozen=True)
class PulseSegment:
    """Constant controls held for `duration`.

    b_fields is one (Bx, By, Bz) triple per qubit; couplings is a tuple of
    (i, j, J) entries for the qubit pairs with the exchange coupling on.
    """

    duration: float
    b_fields: tuple
    couplings: tuple = ()

    def __post_init__(self):
        if self.duration < 0:
            raise ValueError("segment duration must be >= 0")


@dataclass(frozen=True)
class PulseProgram:
    segments: tuple
    n_qubits: int

    @property
    def total_duration(self) -> float:
        return float(sum(seg.duration for seg in self.segments))

    def __add__(self, other: "PulseProgram") -> "PulseProgram":
        if self.n_qubits != other.n_qubits:
            raise ValueError("cannot concatenate programs over different registers")
        return PulseProgram(self.segments + other.segments, self.n_qubits)


def _segment(duration, fields, couplings, n_qubits) -> PulseSegment:
    b = [(0.0, 0.0, 0.0)] * n_qubits
    for q, vec in fields.items():
        b[q] = tuple(float(v) for v in vec)
    cpl = tuple((min(i, j), max(i, j), float(val)) for (i, j), val in sorted(couplings.items()))
    return PulseSegment(float(duration), tuple(b), cpl)


def segment_hamiltonian(seg: PulseSegment) -> np.ndarray:
    """Dense Hamiltonian of one segment over the full register."""
    n = len(seg.b_fields)
    dim = 2**n
    h = np.zeros((dim, dim), dtype=complex)
    paulis = ("x", "y", "z")
    for q, vec in enumerate(seg.b_fields):
        for component, axis in zip(vec, paulis):
            if component != 0.0:
                h -= 0.5 * component * pauli(axis, q, n)
    for i, j, val in seg.couplings:
        if val != 0.0:
            ex = single_qubit_gate(SIGMA_PLUS, i, n) @ single_qubit_gate(SIGMA_MINUS, j, n)
            ex = ex + single_qubit_gate(SIGMA_PLUS, j, n) @ single_qubit_gate(SIGMA_MINUS, i, n)
            h -= val * ex
    return h


def empty_program(n_qubits: int) -> PulseProgram:
    return PulseProgram((), n_qubits)


def _axis_pulse(qubit, angle, axis_slot, n_qubits):
    n = n_qubits if n_qubits is not None else qubit + 1
    if not 0 <= qubit < n:
        raise ValueError(f"qubit {qubit} out of range for {n} qubits")
    if angle == 0.0:
        return empty_program(n)
    sign = 1.0 if angle > 0 else -1.0
    vec = [0.0, 0.0, 0.0]
    vec[axis_slot] = sign * B_REF
    seg = _segment(abs(angle) / B_REF, {qubit: vec}, {}, n)
    return PulseProgram((seg,), n)


def rx_pulse(qubit: int, angle: float, n_qubits: int | None = None) -> PulseProgram:
    """Program realizing exp(+i sigma_x angle/2) on one qubit."""
    return _axis_pulse(qubit, angle, 0, n_qubits)


def ry_pulse(qubit: int, angle: float, n_qubits: int | None = None) -> PulseProgram:
    """Program realizing exp(+i sigma_y angle/2) on one qubit."""
    return _axis_pulse(qubit, angle, 1, n_qubits)


def _rx_pair(qubit_a, angle_a, qubit_b, angle_b, n_qubits) -> PulseProgram:
    # Simultaneous x rotations on two distinct qubits (they commute); the
    # longer rotation runs at full amplitude, the other is scaled down.
    duration = max(abs(angle_a), abs(angle_b)) / B_REF
    fields = {
        qubit_a: (angle_a / duration, 0.0, 0.0),
        qubit_b: (angle_b / duration, 0.0, 0.0),
    }
    return PulseProgram((_segment(duration, fields, {}, n_qubits),), n_qubits)


def hadamard_pulse(qubit: int, n_qubits: int | None = None) -> PulseProgram:
    """Hadamard on one qubit, compiled as R_y(pi/2) R_x(pi) (global phase i)."""
    n = n_qubits if n_qubits is not None else qubit + 1
    return rx_pulse(qubit, np.pi, n) + ry_pulse(qubit, np.pi / 2.0, n)


def xy_coupling_pulse(q1: int, q2: int, theta: float, n_qubits: int | None = None) -> PulseProgram:
    """Exchange pulse exp(-i theta (sp sm + sm sp)) between two qubits.

    Uses coupling amplitude -J_REF for duration theta/J_REF (see module
    docstring for why the sign is negative).
    """
    if q1 == q2:
        raise ValueError("exchange coupling needs two distinct qubits")
    if theta < 0:
        raise ValueError("theta must be >= 0")
    n = n_qubits if n_qubits is not None else max(q1, q2) + 1
    if theta == 0.0:
        return empty_program(n)
    seg = _segment(theta / J_REF, {}, {(q1, q2): -J_REF}, n)
    return PulseProgram((seg,), n)


def ideal_unitary(program: PulseProgram) -> np.ndarray:
    """Noise-free unitary of a program: ordered product of segment exponentials."""
    dim = 2**program.n_qubits
    u = np.eye(dim, dtype=complex)
    for seg in program.segments:
        u = expm(-1j * segment_hamiltonian(seg) * seg.duration) @ u
    return u


def phase_aligned_distance(u: np.ndarray, target: np.ndarray) -> float:
    """Max-abs entry difference after aligning the global phase on the target's largest entry."""
    k = np.unravel_index(np.argmax(np.abs(target)), target.shape)
    if abs(u[k]) < 1e-12:
        return float(np.max(np.abs(u - target)))
    phase = target[k] / u[k]
    phase /= abs(phase)
    return float(np.max(np.abs(u * phase - target)))


@lru_cache(maxsize=None)
def cnot_pulse(control: int, target: int, n_qubits: int | None = None) -> PulseProgram:
    """Controlled-NOT compiled to pulses, verified against the canonical matrix."""
    if control == target:
        raise ValueError("control and target must be distinct qubits")
    n = n_qubits if n_qubits is not None else max(control, target) + 1
    prog = (
        hadamard_pulse(control, n)
        + xy_coupling_pulse(control, target, np.pi / 4.0, n)
        + rx_pulse(control, np.pi, n)
        + xy_coupling_pulse(control, target, np.pi / 4.0, n)
        + _rx_pair(control, -np.pi / 2.0, target, np.pi / 2.0, n)
        + hadamard_pulse(control, n)
    )
    canonical = controlled_gate(control, target, PAULI_X, n)
    dist = phase_aligned_distance(ideal_unitary(prog), canonical)
    if dist > COMPILE_TOL:
        raise CompileError(
            f"compiled CNOT deviates from canonical by {dist:.3e}; "
            "pulse sign conventions are inconsistent"
        )
    return prog


@lru_cache(maxsize=None)
def controlled_pauli_pulse(
    control: int, target: int, axis: str, n_qubits: int | None = None
) -> PulseProgram:
    """Controlled-X or controlled-Z program (CZ = H_t CNOT H_t)."""
    if axis not in ("x", "z"):
        raise ValueError(f"axis must be 'x' or 'z', got {axis!r}")
    n = n_qubits if n_qubits is not None else max(control, target) + 1
    if axis == "x":
        return cnot_pulse(control, target, n)
    prog = hadamard_pulse(target, n) + cnot_pulse(control, target, n) + hadamard_pulse(target, n)
    canonical = controlled_gate(control, target, PAULI_Z, n)
    dist = phase_aligned_distance(ideal_unitary(prog), canonical)
    if dist > COMPILE_TOL:
        raise CompileError(f"compiled CZ deviates from canonical by {dist:.3e}")
    return prog


def program_dump(program: PulseProgram) -> str:
    """One line per segment: duration, then nonzero controls as name=value.

    Control names use 1-based qubit labels, e.g. B1x=1 for the x field on the
    first qubit and J12=-1 for the coupling between the first two.
    """
    lines = []
    for seg in program.segments:
        parts = ["%.12g" % seg.duration]
        for q, vec in enumerate(seg.b_fields):
            for value, axis in zip(vec, ("x", "y", "z")):
                if value != 0.0:
                    parts.append("B%d%s=%.12g" % (q + 1, axis, value))
        for i, j, val in seg.couplings:
            if val != 0.0:
                parts.append("J%d%d=%.12g" % (i + 1, j + 1, val))
        lines.append("\t".join(parts))
    return "\n".join(lines)
