"""Solid-angle averaging over the Bloch sphere and exponential-decay fitting.

The average (1/4pi) int F(theta, phi) sin(theta) dtheta dphi is computed with
Gauss-Legendre nodes in u = cos(theta) (which absorbs the sin weight exactly)
and a uniform periodic rule in phi.  Polynomials in cos(theta) up to degree
2*n_theta - 1 and trigonometric polynomials in phi up to order n_phi - 1 are
integrated exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares


class FitError(RuntimeError):
    """Raised for degenerate fit data or non-convergence."""


@dataclass(frozen=True)
class QuadratureSpec:
    n_theta: int = 32
    n_phi: int = 32

    def __post_init__(self):
        if self.n_theta < 2 or self.n_phi < 2:
            raise ValueError("need at least 2 nodes per direction")


def sphere_nodes(spec: QuadratureSpec | None = None):
    """Quadrature nodes and weights: (thetas, theta_weights, phis, phi_weight).

    The average of f is sum_ij theta_weights[i] * phi_weight * f(theta_i, phi_j).
    """
    spec = spec or QuadratureSpec()
    u, w = np.polynomial.legendre.leggauss(spec.n_theta)
    thetas = np.arccos(u)
    phis = np.linspace(0.0, 2.0 * np.pi, spec.n_phi, endpoint=False)
    # (1/4pi) * w_u * (2pi/n_phi) = w_u / (2 n_phi)
    return thetas, w / 2.0, phis, 1.0 / spec.n_phi


def average_over_sphere(f, spec: QuadratureSpec | None = None) -> float:
    """Solid-angle average of f(theta, phi); f must accept numpy array arguments."""
    thetas, tw, phis, pw = sphere_nodes(spec)
    th, ph = np.meshgrid(thetas, phis, indexing="ij")
    vals = np.asarray(f(th, ph), dtype=float)
    if vals.shape != th.shape:
        vals = np.broadcast_to(vals, th.shape)
    return float(np.sum(vals * tw[:, None]) * pw)


@dataclass(frozen=True)
class DecayFit:
    """Parameters of the model asymptote + amplitude * exp(-rate * x)."""

    asymptote: float
    amplitude: float
    rate: float
    residual_rms: float

    def __call__(self, x):
        return self.asymptote + self.amplitude * np.exp(-self.rate * np.asarray(x))


def fit_exponential(x, y, fix_asymptote: float | None = None) -> DecayFit:
    """Least-squares fit of y = a + b exp(-c x); `fix_asymptote` freezes a.

    Deterministic given its inputs: fixed initialization a = min(y),
    b = max(y) - a, c = 1, parameter-step tolerance 1e-10.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be 1-d arrays of equal length")
    if x.size < 3:
        raise FitError("need at least 3 points to fit a three-parameter decay")
    if np.unique(x).size != x.size:
        raise FitError("x values must be distinct")
    if np.ptp(y) < 1e-14:
        raise FitError("degenerate data: all y values equal")

    a0 = fix_asymptote if fix_asymptote is not None else float(np.min(y))
    b0 = float(np.max(y) - a0)
    if b0 == 0.0:
        b0 = 1.0
    c0 = 1.0

    if fix_asymptote is None:
        def resid(p):
            return p[0] + p[1] * np.exp(-p[2] * x) - y

        p0 = [a0, b0, c0]
    else:
        def resid(p):
            return fix_asymptote + p[0] * np.exp(-p[1] * x) - y

        p0 = [b0, c0]

    sol = least_squares(resid, p0, method="lm", xtol=1e-10, ftol=1e-14, max_nfev=2000)
    if not sol.success:
        raise FitError(f"fit did not converge: {sol.message}")
    if fix_asymptote is None:
        a, b, c = (float(v) for v in sol.x)
    else:
        a = float(fix_asymptote)
        b, c = (float(v) for v in sol.x)
    rms = float(np.sqrt(np.mean(sol.fun**2)))
    return DecayFit(asymptote=a, amplitude=b, rate=c, residual_rms=rms)
