"""Teleportation of one qubit through a noisy channel, for four noise placements.

The register holds the input qubit (0) and an entangled pair shared by sender
(1) and receiver (2).  The circuit is: CNOT(0->1), H(0) - the measurement-basis
rotation - then the conditional corrections X(1->2) and Z(0->2) applied as
controlled gates, and a partial trace over qubits 0 and 1.  Measurements are
deferred: conditional classical operations are replaced by the corresponding
controlled unitaries, which leaves the traced-out state identical to the
measured-and-corrected ensemble and makes the output deterministic.

Noise placements (`NoiseCase.tag`):

    A - the input qubit decoheres for a unit window before the (ideal) circuit
    B - both pair qubits decohere for a unit window before the (ideal) circuit
    C - noise on qubits 0 and 1 while the measurement-basis rotation runs as
        compiled pulses; the rest of the circuit is ideal
    D - ideal measurement-basis rotation, then noise on qubit 2 while the
        corrections run as compiled pulses

`kappa_tau` is the dimensionless exposure: rate times window length.  For A/B
the window is 1 and the rate equals kappa_tau; for C/D the window is the
compiled program duration and the rate is kappa_tau divided by it.

Note on symmetry: for z-axis noise the surfaces of cases A and B are exactly
independent of the azimuth phi.  In cases C and D the x-axis control pulses
running during the noise break rotational symmetry about z, so those surfaces
carry a small phi modulation (order 1e-2 near the most sensitive exposures);
see the g-statistic helpers which scan theta at fixed phi.

Evolution is linear in the density matrix, so each (case, exposure) pipeline
is built once as a superoperator and reused across all grid points of a
surface or quadrature sweep; the builder is cached.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .lindblad import (
    IntegrationError,
    IntegratorConfig,
    NoiseSchedule,
    default_dt,
    evolve,
    liouvillian,
    rk4_window_propagator,
    unitary_superop,
)
from .pulses import cnot_pulse, controlled_pauli_pulse, hadamard_pulse, segment_hamiltonian
from .quantum import (
    HADAMARD,
    PAULI_X,
    PAULI_Z,
    bell_phi_plus,
    check_density_matrix,
    controlled_gate,
    pauli,
    single_qubit_gate,
)

N_QUBITS = 3
_DIM = 2**N_QUBITS

# Length of the idle decoherence window for cases A and B; only the product
# rate * window matters, so it is fixed at 1 and the rate carries kappa_tau.
AB_WINDOW = 1.0

CASE_TAGS = ("A", "B", "C", "D")


@dataclass(frozen=True)
class NoiseCase:
    """Noise placement tag, axis set and dimensionless exposure kappa_tau."""

    tag: str
    axes: tuple = ("z",)
    kappa_tau: float = 0.0

    def __post_init__(self):
        if self.tag not in CASE_TAGS:
            raise ValueError(f"tag must be one of {CASE_TAGS}, got {self.tag!r}")
        axes = tuple(sorted(set(self.axes)))
        for a in axes:
            if a not in ("x", "y", "z"):
                raise ValueError(f"invalid axis {a!r}")
        if self.kappa_tau < 0:
            raise ValueError("kappa_tau must be >= 0")
        if not axes and self.kappa_tau > 0:
            raise ValueError("axes must be nonempty when kappa_tau > 0")
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "kappa_tau", float(self.kappa_tau))


@dataclass(frozen=True)
class TeleportResult:
    rho_out: np.ndarray
    fidelity: float
    theta: float
    phi: float


# --- ideal circuit pieces --------------------------------------------------


@lru_cache(maxsize=None)
def _ideal_gates():
    cnot01 = controlled_gate(0, 1, PAULI_X, N_QUBITS)
    h0 = single_qubit_gate(HADAMARD, 0, N_QUBITS)
    cx12 = controlled_gate(1, 2, PAULI_X, N_QUBITS)
    cz02 = controlled_gate(0, 2, PAULI_Z, N_QUBITS)
    u_rotate = h0 @ cnot01          # measurement-basis rotation
    u_correct = cz02 @ cx12         # conditional corrections (X first, then Z)
    return u_rotate, u_correct, u_correct @ u_rotate


@lru_cache(maxsize=None)
def _programs():
    rotate = cnot_pulse(0, 1, N_QUBITS) + hadamard_pulse(0, N_QUBITS)
    correct = cnot_pulse(1, 2, N_QUBITS) + controlled_pauli_pulse(0, 2, "z", N_QUBITS)
    return rotate, correct


def rotation_program_duration() -> float:
    """Total pulse time of the compiled measurement-basis rotation (case C window)."""
    return _programs()[0].total_duration


def correction_program_duration() -> float:
    """Total pulse time of the compiled corrections (case D window)."""
    return _programs()[1].total_duration


# --- noisy pipelines as superoperators -------------------------------------


def _rate_ops(axes, qubits, kappa):
    return tuple(
        (kappa, pauli(axis, q, N_QUBITS)) for q in qubits for axis in axes if kappa > 0
    )


def _program_propagator(program, rate_ops, dt):
    out = np.eye(_DIM * _DIM, dtype=complex)
    for seg in program.segments:
        lv = liouvillian(segment_hamiltonian(seg), rate_ops, _DIM)
        out = rk4_window_propagator(lv, seg.duration, dt) @ out
    return out


def _case_window(tag: str) -> float:
    if tag == "C":
        return rotation_program_duration()
    if tag == "D":
        return correction_program_duration()
    return AB_WINDOW


@lru_cache(maxsize=256)
def _pipeline(tag: str, axes: tuple, kappa_tau: float, dt: float) -> np.ndarray:
    """Superoperator taking vec(rho_in x rho_pair) to the pre-trace output state."""
    u_rotate, u_correct, u_tel = _ideal_gates()
    if tag == "A":
        kappa = kappa_tau / AB_WINDOW
        lv = liouvillian(None, _rate_ops(axes, (0,), kappa), _DIM)
        return unitary_superop(u_tel) @ rk4_window_propagator(lv, AB_WINDOW, dt)
    if tag == "B":
        kappa = kappa_tau / AB_WINDOW
        lv = liouvillian(None, _rate_ops(axes, (1, 2), kappa), _DIM)
        return unitary_superop(u_tel) @ rk4_window_propagator(lv, AB_WINDOW, dt)
    if tag == "C":
        rotate, _ = _programs()
        kappa = kappa_tau / rotate.total_duration
        prop = _program_propagator(rotate, _rate_ops(axes, (0, 1), kappa), dt)
        return unitary_superop(u_correct) @ prop
    if tag == "D":
        _, correct = _programs()
        kappa = kappa_tau / correct.total_duration
        prop = _program_propagator(correct, _rate_ops(axes, (2,), kappa), dt)
        return prop @ unitary_superop(u_rotate)
    raise ValueError(f"unknown case tag {tag!r}")


def _case_superop(case: NoiseCase, cfg: IntegratorConfig | None) -> np.ndarray:
    if cfg is not None:
        dt = cfg.dt
    else:
        kappa = case.kappa_tau / _case_window(case.tag)
        omega = 1.0 if case.tag in ("C", "D") else 0.0  # B_REF = J_REF = 1 during pulses
        dt = default_dt(kappa_max=kappa, omega_max=omega)
    return _pipeline(case.tag, case.axes, case.kappa_tau, dt)


def evolve_through_program(
    rho0: np.ndarray,
    program,
    schedule: NoiseSchedule | None = None,
    cfg: IntegratorConfig | None = None,
) -> np.ndarray:
    """Integrate a density matrix segment by segment through a pulse program.

    Each segment is integrated as its own window (so switching times land
    exactly on step boundaries); schedule windows are evaluated in the
    segment's local time, so use unbounded windows for noise that stays on for
    the whole program.
    """
    schedule = schedule or NoiseSchedule()
    cfg = cfg or IntegratorConfig()
    rho = np.array(rho0, dtype=complex)
    for seg in program.segments:
        rho = evolve(rho, segment_hamiltonian(seg), schedule, 0.0, seg.duration, cfg)
    return rho


# --- batch evaluation -------------------------------------------------------


def _input_vectors(thetas, phis):
    thetas = np.asarray(thetas, dtype=float).reshape(-1)
    phis = np.asarray(phis, dtype=float).reshape(-1)
    psi = np.empty((thetas.size, 2), dtype=complex)
    psi[:, 0] = np.cos(thetas / 2.0) * np.exp(1j * phis / 2.0)
    psi[:, 1] = np.sin(thetas / 2.0) * np.exp(-1j * phis / 2.0)
    return psi


def _apply_pipeline(superop, psi_batch, channel_rho):
    """Send each |psi><psi| x channel through the pipeline; return output qubit states."""
    m = psi_batch.shape[0]
    rho_in = np.einsum("mi,mj->mij", psi_batch, psi_batch.conj())
    rho0 = np.einsum("mij,kl->mikjl", rho_in, channel_rho).reshape(m, _DIM, _DIM)
    out = (superop @ rho0.reshape(m, _DIM * _DIM).T).T.reshape(m, 2, 2, 2, 2, 2, 2)
    rho_out = np.einsum("mabcabf->mcf", out)  # trace over qubits 0 and 1
    return rho_out


def _check_outputs(rho_out, tol_trace=1e-8):
    if not np.all(np.isfinite(rho_out)):
        raise IntegrationError("non-finite entries in teleported states")
    drift = float(np.max(np.abs(np.einsum("mii->m", rho_out) - 1.0)))
    if drift > tol_trace:
        raise IntegrationError(f"trace drift {drift:.3e} in teleported states")


def _fidelities(superop, thetas, phis, channel_rho):
    psi = _input_vectors(thetas, phis)
    rho_out = _apply_pipeline(superop, psi, channel_rho)
    _check_outputs(rho_out)
    f = np.real(np.einsum("mi,mij,mj->m", psi.conj(), rho_out, psi))
    return f, rho_out


# --- public operations ------------------------------------------------------


def run_case(
    case: NoiseCase, theta: float, phi: float, cfg: IntegratorConfig | None = None
) -> TeleportResult:
    """Teleport the (theta, phi) input state under the given noise case."""
    superop = _case_superop(case, cfg)
    _, pair = bell_phi_plus()
    f, rho_out = _fidelities(superop, [theta], [phi], pair)
    rho = rho_out[0]
    check_density_matrix(rho)
    return TeleportResult(rho_out=rho, fidelity=float(f[0]), theta=float(theta), phi=float(phi))


def fidelity_surface(
    case: NoiseCase, theta_grid, phi_grid, cfg: IntegratorConfig | None = None
) -> np.ndarray:
    """Fidelity on the outer product of the two angle grids, shape (n_theta, n_phi)."""
    theta_grid = np.asarray(theta_grid, dtype=float)
    phi_grid = np.asarray(phi_grid, dtype=float)
    if theta_grid.size == 0 or phi_grid.size == 0:
        raise ValueError("angle grids must be nonempty")
    superop = _case_superop(case, cfg)
    _, pair = bell_phi_plus()
    th, ph = np.meshgrid(theta_grid, phi_grid, indexing="ij")
    f, _ = _fidelities(superop, th.ravel(), ph.ravel(), pair)
    return f.reshape(theta_grid.size, phi_grid.size)


def fidelity_range_contour(surface: np.ndarray, level: float) -> np.ndarray:
    """Boolean mask of grid points whose fidelity reaches `level`."""
    if not 0.0 < level <= 1.0:
        raise ValueError(f"level must be in (0, 1], got {level}")
    return np.asarray(surface) >= level


def average_fidelity(
    case: NoiseCase, quad=None, cfg: IntegratorConfig | None = None
) -> float:
    """Solid-angle average fidelity via Gauss-Legendre x uniform quadrature."""
    from .sphere import QuadratureSpec, sphere_nodes

    thetas, tw, phis, pw = sphere_nodes(quad or QuadratureSpec())
    superop = _case_superop(case, cfg)
    _, pair = bell_phi_plus()
    th, ph = np.meshgrid(thetas, phis, indexing="ij")
    f, _ = _fidelities(superop, th.ravel(), ph.ravel(), pair)
    return float(np.sum(f.reshape(thetas.size, phis.size) * tw[:, None]) * pw)


def g_statistic(
    case: NoiseCase,
    kappa_tau_grid,
    cfg: IntegratorConfig | None = None,
    theta_points: int = 41,
) -> np.ndarray:
    """Spread max F - min F over theta (phi = 0) for each exposure in the grid.

    Only meaningful for the gate-noise placements; returns an (m, 2) array of
    (kappa_tau, g) rows.
    """
    if case.tag not in ("C", "D"):
        raise ValueError("g_statistic applies to cases C and D")
    thetas = np.linspace(0.0, np.pi, theta_points)
    rows = []
    for kt in np.asarray(kappa_tau_grid, dtype=float).reshape(-1):
        point = NoiseCase(case.tag, case.axes, kt)
        surf = fidelity_surface(point, thetas, [0.0], cfg)[:, 0]
        rows.append((kt, float(surf.max() - surf.min())))
    return np.array(rows)


# --- arbitrary two-qubit channels -------------------------------------------


def run_custom_channel(rho_channel: np.ndarray, theta: float, phi: float) -> TeleportResult:
    """Teleport through an arbitrary two-qubit channel state with ideal gates."""
    rho_channel = np.asarray(rho_channel, dtype=complex)
    if rho_channel.shape != (4, 4):
        raise ValueError("channel state must be a two-qubit (4x4) density matrix")
    check_density_matrix(rho_channel)
    _, _, u_tel = _ideal_gates()
    f, rho_out = _fidelities(unitary_superop(u_tel), [theta], [phi], rho_channel)
    rho = rho_out[0]
    check_density_matrix(rho)
    return TeleportResult(rho_out=rho, fidelity=float(f[0]), theta=float(theta), phi=float(phi))


def custom_channel_surface(rho_channel: np.ndarray, theta_grid, phi_grid) -> np.ndarray:
    rho_channel = np.asarray(rho_channel, dtype=complex)
    check_density_matrix(rho_channel)
    theta_grid = np.asarray(theta_grid, dtype=float)
    phi_grid = np.asarray(phi_grid, dtype=float)
    _, _, u_tel = _ideal_gates()
    th, ph = np.meshgrid(theta_grid, phi_grid, indexing="ij")
    f, _ = _fidelities(unitary_superop(u_tel), th.ravel(), ph.ravel(), rho_channel)
    return f.reshape(theta_grid.size, phi_grid.size)


def custom_channel_average(rho_channel: np.ndarray, quad=None) -> float:
    from .sphere import QuadratureSpec, sphere_nodes

    thetas, tw, phis, pw = sphere_nodes(quad or QuadratureSpec())
    surf = custom_channel_surface(rho_channel, thetas, phis)
    return float(np.sum(surf * tw[:, None]) * pw)


# --- channel constructors ---------------------------------------------------


def popescu_channel() -> np.ndarray:
    """Mixed pair I/8 + (1/2) |pair><pair| teleporting every state with fidelity 3/4.

    Expressed relative to this circuit's resource state, the (|00>+|11>)/sqrt2
    pair.  The classic presentation of the same channel uses the singlet with
    singlet-matched corrections; the two differ by the local unitary I x sigma_y
    and give identical fidelity under their respective protocols.  Fed raw into
    this circuit, the singlet-form matrix would describe a different physical
    situation (mismatched corrections) with angle-dependent fidelity.
    """
    _, pair = bell_phi_plus()
    return np.eye(4, dtype=complex) / 8.0 + 0.5 * pair


def dephased_bell_channel(exposure: float) -> np.ndarray:
    """The entangled pair after both halves dephase along z with total exposure 4*kappa*tau."""
    if exposure < 0:
        raise ValueError("exposure must be >= 0")
    _, pair = bell_phi_plus()
    rho = pair.copy()
    rho[0, 3] *= np.exp(-exposure)
    rho[3, 0] *= np.exp(-exposure)
    return rho


def maximally_mixed_channel() -> np.ndarray:
    return np.eye(4, dtype=complex) / 4.0
