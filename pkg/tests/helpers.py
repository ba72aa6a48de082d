"""Shared test utilities: random states and independent reference computations.

The reference implementations here deliberately avoid the package's own
pipeline code (superoperators, compiled pulses) so that agreement between the
two routes is a real check.
"""

import numpy as np
from scipy.linalg import expm

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
H2 = (SX + SZ) / np.sqrt(2)


def random_state_vector(rng, dim=2):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_density_matrix(rng, dim):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = m @ m.conj().T
    return rho / np.trace(rho)


def random_angles(rng, n):
    return rng.uniform(0.0, np.pi, n), rng.uniform(0.0, 2.0 * np.pi, n)


def input_vector(theta, phi):
    return np.array(
        [
            np.cos(theta / 2.0) * np.exp(1j * phi / 2.0),
            np.sin(theta / 2.0) * np.exp(-1j * phi / 2.0),
        ],
        dtype=complex,
    )


def kron_all(*ops):
    out = np.array([[1.0 + 0j]])
    for op in ops:
        out = np.kron(out, op)
    return out


def teleport_by_measurement(rho_in, rho_channel):
    """Measured-and-corrected teleportation, enumerated branch by branch.

    Rotates to the measurement basis with explicit CNOT/H matrices, projects
    the two measured qubits onto each computational outcome, applies the
    matching Pauli correction, and sums the branches.  Completely independent
    of the package's deferred-measurement pipeline.
    """
    cnot01 = np.zeros((8, 8), dtype=complex)
    for a in range(2):
        for b in range(2):
            for c in range(2):
                src = 4 * a + 2 * b + c
                dst = 4 * a + 2 * (b ^ a) + c
                cnot01[dst, src] = 1.0
    h0 = kron_all(H2, I2, I2)
    u_rot = h0 @ cnot01

    rho = np.kron(rho_in, rho_channel)
    rho = u_rot @ rho @ u_rot.conj().T
    r = rho.reshape(2, 2, 2, 2, 2, 2)
    out = np.zeros((2, 2), dtype=complex)
    for a in range(2):
        for b in range(2):
            branch = r[a, b, :, a, b, :]
            corr = np.linalg.matrix_power(SZ, a) @ np.linalg.matrix_power(SX, b)
            out += corr @ branch @ corr.conj().T
    return out


def dephasing_solution(rho0, kappa, t):
    """Exact single-qubit z-dephasing: off-diagonals scaled by exp(-2 kappa t)."""
    rho = np.array(rho0, dtype=complex)
    rho[0, 1] *= np.exp(-2.0 * kappa * t)
    rho[1, 0] *= np.exp(-2.0 * kappa * t)
    return rho


def pauli_channel_exact(rho0, rates, t):
    """Exact evolution under Pauli dissipators via the vectorized generator.

    `rates` maps sigma matrices to their kappa values; the generator
    kappa * (S (.) S - id) is exponentiated with scipy's expm, independent of
    the package's RK4 machinery.
    """
    dim = rho0.shape[0]
    gen = np.zeros((dim * dim, dim * dim), dtype=complex)
    eye = np.eye(dim * dim, dtype=complex)
    for sig, kappa in rates:
        gen += kappa * (np.kron(sig, sig.T) - eye)
    prop = expm(gen * t)
    return (prop @ np.asarray(rho0).reshape(-1)).reshape(dim, dim)
