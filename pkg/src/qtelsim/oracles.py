"""Closed-form fidelity results used as independent oracles for the simulator.

These are plain formula evaluations with no shared code with the integrator or
the circuit pipeline, so agreement between the two paths is meaningful
verification rather than a tautology.  Tags name the noise placement/axis
combinations:

    A1z, A1x  - input qubit dephased along z (or x) before the circuit
    A2iso     - input qubit under isotropic noise before the circuit
    B1z, B1x  - both channel qubits dephased along z (or x)
    B2iso     - both channel qubits under isotropic noise
    CDfit     - empirical decay model for noise during gate operations

All functions accept scalars or numpy arrays for the angle arguments.
"""

from __future__ import annotations

import numpy as np


def f_case_a_z(theta, phi, kappa_tau):
    """Fidelity surface for z-axis noise on the input qubit: depends on theta only."""
    del phi  # azimuth drops out for z-axis noise
    return 1.0 - 0.5 * (1.0 - np.exp(-2.0 * kappa_tau)) * np.sin(theta) ** 2


def f_case_a_x(theta, phi, kappa_tau):
    """Fidelity surface for x-axis noise on the input qubit."""
    s2 = np.sin(theta) ** 2
    return 0.5 * (
        1.0
        + s2 * np.cos(phi) ** 2
        + np.exp(-2.0 * kappa_tau) * (np.cos(theta) ** 2 + s2 * np.sin(phi) ** 2)
    )


def f_case_a_iso(theta, phi, kappa_tau):
    """Fidelity surface for isotropic noise on the input qubit: angle independent."""
    del theta, phi
    return 0.5 + 0.5 * np.exp(-4.0 * kappa_tau)


def f_case_b(axis, theta, phi, kappa_tau):
    """Fidelity surface for single-axis noise on both channel qubits.

    Same functional form as the matching case-A surface with the exponent
    2*kappa_tau replaced by 4*kappa_tau.
    """
    if axis == "z":
        return 1.0 - 0.5 * (1.0 - np.exp(-4.0 * kappa_tau)) * np.sin(theta) ** 2
    if axis == "x":
        s2 = np.sin(theta) ** 2
        return 0.5 * (
            1.0
            + s2 * np.cos(phi) ** 2
            + np.exp(-4.0 * kappa_tau) * (np.cos(theta) ** 2 + s2 * np.sin(phi) ** 2)
        )
    raise ValueError(f"no closed form for axis {axis!r}")


_FAVG = {
    "A1z": lambda kt: 2.0 / 3.0 + np.exp(-2.0 * kt) / 3.0,
    "A1x": lambda kt: 2.0 / 3.0 + np.exp(-2.0 * kt) / 3.0,
    "A2iso": lambda kt: 0.5 + 0.5 * np.exp(-4.0 * kt),
    "B1z": lambda kt: 2.0 / 3.0 + np.exp(-4.0 * kt) / 3.0,
    "B1x": lambda kt: 2.0 / 3.0 + np.exp(-4.0 * kt) / 3.0,
    "B2iso": lambda kt: 0.5 + 0.5 * np.exp(-8.0 * kt),
    "CDfit": lambda kt: 0.5 + 0.5 * np.exp(-1.25 * kt),
}


def favg(tag: str, kappa_tau):
    """Average fidelity over the sphere for a tagged noise configuration.

    The CDfit tag is an empirical fit, not an exact result; it is provided for
    overlay/reference purposes only.
    """
    if tag not in _FAVG:
        raise ValueError(f"unknown tag {tag!r}, expected one of {sorted(_FAVG)}")
    return _FAVG[tag](np.asarray(kappa_tau, dtype=float))


def horodecki_optimal(f_ab: float) -> float:
    """Best achievable average teleportation fidelity for a channel with singlet fraction f_ab."""
    if not -1e-12 <= f_ab <= 1.0 + 1e-12:
        raise ValueError(f"singlet fraction {f_ab} outside [0, 1]")
    return (2.0 * f_ab + 1.0) / 3.0
