"""Dense complex linear algebra and quantum-state primitives for small registers.

Conventions used throughout the package:

* qubit 0 is the leftmost tensor factor (most significant bit of the basis
  index), so ``|q0 q1 q2>`` maps to index ``4*q0 + 2*q1 + q2`` for three qubits;
* a single-qubit pure state is parametrized by polar/azimuthal angles as

      |psi(theta, phi)> = cos(theta/2) e^{+i phi/2} |0>
                        + sin(theta/2) e^{-i phi/2} |1>

  with half-angle phases on both amplitudes.  Relative to the more common
  convention (phase e^{i phi} on |1> alone) this flips the sign of the
  y component of the Bloch vector, i.e. r = (sin t cos p, -sin t sin p, cos t).
  Every fidelity surface produced by this package depends on phi only through
  even trigonometric terms, so the two conventions give identical surfaces.
"""

from __future__ import annotations

import numpy as np

# Tolerances for density-matrix validity checks.
TOL_TRACE = 1e-9
TOL_HERM = 1e-9
TOL_PSD = 1e-8

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = {"x": PAULI_X, "y": PAULI_Y, "z": PAULI_Z}

IDENTITY_2 = np.eye(2, dtype=complex)
HADAMARD = (PAULI_X + PAULI_Z) / np.sqrt(2.0)

# Raising/lowering in the sigma_z eigenbasis: sp = |0><1|, sm = |1><0|.
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)


def n_qubits_of(dim: int) -> int:
    """Number of qubits for a register dimension, validating it is a power of two."""
    n = int(round(np.log2(dim)))
    if dim < 2 or 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two >= 2")
    return n


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two operators (or vectors)."""
    return np.kron(np.asarray(a), np.asarray(b))


def single_qubit_gate(op: np.ndarray, qubit: int, n_qubits: int) -> np.ndarray:
    """Embed a 2x2 operator on one qubit of an n-qubit register."""
    if not 0 <= qubit < n_qubits:
        raise ValueError(f"qubit index {qubit} out of range for {n_qubits} qubits")
    out = np.array([[1.0 + 0j]])
    for i in range(n_qubits):
        out = np.kron(out, op if i == qubit else IDENTITY_2)
    return out


def pauli(axis: str, qubit: int, n_qubits: int) -> np.ndarray:
    """Pauli operator sigma_axis acting on `qubit` of an n-qubit register."""
    if axis not in PAULI:
        raise ValueError(f"unknown Pauli axis {axis!r}, expected one of x, y, z")
    return single_qubit_gate(PAULI[axis], qubit, n_qubits)


def controlled_gate(control: int, target: int, op: np.ndarray, n_qubits: int) -> np.ndarray:
    """Controlled single-qubit gate: applies `op` to `target` when `control` is |1>."""
    if control == target:
        raise ValueError("control and target must be distinct qubits")
    proj1 = single_qubit_gate(np.array([[0, 0], [0, 1]], dtype=complex), control, n_qubits)
    u_t = single_qubit_gate(op, target, n_qubits)
    dim = 2**n_qubits
    # proj1 commutes with u_t (different qubits), so this is P0*I + P1*U.
    return np.eye(dim, dtype=complex) + proj1 @ (u_t - np.eye(dim, dtype=complex))


def partial_trace(rho: np.ndarray, keep) -> np.ndarray:
    """Reduced density matrix over the kept qubits (original qubit order).

    `keep` is an iterable of qubit indices; all other qubits are traced out.
    """
    rho = np.asarray(rho)
    n = n_qubits_of(rho.shape[0])
    keep = sorted(set(int(q) for q in keep))
    if not keep:
        raise ValueError("keep set must be nonempty")
    if keep[0] < 0 or keep[-1] >= n:
        raise ValueError(f"keep indices {keep} out of range for {n} qubits")

    letters = "abcdefghijklmnopqrstuvwxyz"
    row = list(letters[:n])
    col = []
    out_row, out_col = [], []
    nxt = n
    for q in range(n):
        if q in keep:
            c = letters[nxt]
            nxt += 1
            col.append(c)
            out_row.append(row[q])
            out_col.append(c)
        else:
            col.append(row[q])  # repeated letter contracts the traced qubit
    subs = "".join(row) + "".join(col) + "->" + "".join(out_row) + "".join(out_col)
    reduced = np.einsum(subs, rho.reshape((2,) * (2 * n)))
    d = 2 ** len(keep)
    return reduced.reshape(d, d)


def pure_state(theta: float, phi: float):
    """State vector and rank-one density matrix for the (theta, phi) input state.

    Returns ``(psi, rho)`` with psi the 2-component state vector.
    """
    if not -1e-12 <= theta <= np.pi + 1e-12:
        raise ValueError(f"theta={theta} outside [0, pi]")
    psi = np.array(
        [
            np.cos(theta / 2.0) * np.exp(1j * phi / 2.0),
            np.sin(theta / 2.0) * np.exp(-1j * phi / 2.0),
        ],
        dtype=complex,
    )
    return psi, np.outer(psi, psi.conj())


def bell_phi_plus():
    """The (|00> + |11>)/sqrt(2) pair: returns ``(psi, rho)``."""
    psi = np.zeros(4, dtype=complex)
    psi[0] = psi[3] = 1.0 / np.sqrt(2.0)
    return psi, np.outer(psi, psi.conj())


def fidelity_pure(psi: np.ndarray, rho: np.ndarray) -> float:
    """Overlap <psi|rho|psi> of a pure target state with a density matrix."""
    psi = np.asarray(psi).reshape(-1)
    rho = np.asarray(rho)
    if rho.shape != (psi.size, psi.size):
        raise ValueError(f"dimension mismatch: state {psi.size}, matrix {rho.shape}")
    return float(np.real(psi.conj() @ rho @ psi))


def bloch_vector(rho: np.ndarray) -> np.ndarray:
    """Bloch vector (Tr rho sigma_x, Tr rho sigma_y, Tr rho sigma_z) of a qubit state."""
    rho = np.asarray(rho)
    if rho.shape != (2, 2):
        raise ValueError("bloch_vector requires a single-qubit (2x2) density matrix")
    return np.array([np.real(np.trace(rho @ PAULI[a])) for a in ("x", "y", "z")])


def bloch_state(r) -> np.ndarray:
    """Single-qubit density matrix (I + r . sigma)/2 for a Bloch vector r."""
    rx, ry, rz = (float(v) for v in r)
    return 0.5 * (IDENTITY_2 + rx * PAULI_X + ry * PAULI_Y + rz * PAULI_Z)


def _bell_basis() -> np.ndarray:
    s = 1.0 / np.sqrt(2.0)
    return np.array(
        [
            [s, 0, 0, s],    # (|00> + |11>)/sqrt2
            [0, s, s, 0],    # (|01> + |10>)/sqrt2
            [s, 0, 0, -s],   # (|00> - |11>)/sqrt2
            [0, s, -s, 0],   # (|01> - |10>)/sqrt2
        ],
        dtype=complex,
    )


def singlet_fraction(rho: np.ndarray) -> float:
    """Largest overlap of a two-qubit state with the four maximally entangled basis states."""
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise ValueError("singlet_fraction requires a two-qubit (4x4) density matrix")
    basis = _bell_basis()
    overlaps = np.real(np.einsum("ki,ij,kj->k", basis.conj(), rho, basis))
    return float(np.max(overlaps))


def check_density_matrix(
    rho: np.ndarray,
    tol_trace: float = TOL_TRACE,
    tol_herm: float = TOL_HERM,
    tol_psd: float = TOL_PSD,
) -> None:
    """Raise ValueError unless rho is trace-one, Hermitian and positive within tolerance."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise ValueError("density matrix contains non-finite entries")
    drift = abs(np.trace(rho) - 1.0)
    if drift > tol_trace:
        raise ValueError(f"trace deviates from 1 by {drift:.3e} (tol {tol_trace:.1e})")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > tol_herm:
        raise ValueError(f"Hermiticity violated by {herm:.3e} (tol {tol_herm:.1e})")
    lo = float(np.min(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))))
    if lo < -tol_psd:
        raise ValueError(f"negative eigenvalue {lo:.3e} (tol {tol_psd:.1e})")
