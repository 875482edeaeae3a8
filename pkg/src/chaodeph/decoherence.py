"""Decoherence parameter of a beam scattered by a moving classical center.

The central quantity is epsilon in [0, 1]: 0 means the scatterer leaves
the branch waves fully coherent, 1 means it acts as a perfect detector
(complete dephasing). Three routes are provided for the solid-angle
version, intended to cross-check each other:

* epsilon_empirical      - direct window average over an explicit
                           trajectory of scatterer positions;
* epsilon_gaussian_closed_form - analytic model that replaces the
                           position average by a Gaussian of total
                           variance n_p * step_length**2 per axis and
                           expands the window to second order;
* epsilon_gaussian_quadrature / epsilon_walk_sum - numerical window
                           averages of the Gaussian model without the
                           window expansion, the latter keeping the exact
                           per-encounter variance l * step_length**2
                           instead of the aged-walk replacement.

The one-dimensional transmission version (epsilon_1d) is the same
visibility measure for an ensemble of complex transmission coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import kernels
from .amplitudes import AmplitudeModel, amplitude_vs_theta
from .quadrature import QuadratureSpec, converge_by_doubling, window_nodes
from .trajectories import Trajectory

COHERENT = "coherent"
INTERMEDIATE = "intermediate"
DEPHASED = "dephased"

# window-term thresholds: below the first the interference survives,
# above the second it is destroyed
COHERENT_THRESHOLD = 0.01
DEPHASED_THRESHOLD = 10.0


class UndefinedEpsilonError(ValueError):
    """Raised when the mean transmitted intensity vanishes."""


@dataclass(frozen=True)
class DetectorWindow:
    """Solid-angle acceptance (theta0, phi0, dtheta, dphi) of the detector."""

    theta0: float
    dtheta: float
    dphi: float
    phi0: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.theta0 < math.pi:
            raise ValueError("DetectorWindow.theta0 must lie in [0, pi)")
        if not self.dtheta > 0:
            raise ValueError("DetectorWindow.dtheta must be positive")
        if self.theta0 + self.dtheta > math.pi + 1e-12:
            raise ValueError("DetectorWindow: theta0 + dtheta must not exceed pi")
        if not 0.0 <= self.phi0 < 2.0 * math.pi:
            raise ValueError("DetectorWindow.phi0 must lie in [0, 2 pi)")
        if not 0.0 < self.dphi <= 2.0 * math.pi:
            raise ValueError("DetectorWindow.dphi must lie in (0, 2 pi]")

    def expansion_factor(self) -> float:
        """Second-order window factor dtheta sin(t0) + dtheta^2/2 cos(t0)."""
        return self.dtheta * math.sin(self.theta0) + 0.5 * self.dtheta**2 * math.cos(self.theta0)


@dataclass
class DecoherenceReport:
    """Epsilon estimates plus the scales that classify the regime.

    Estimator fields are None until the corresponding route has run;
    intermediates holds (numerator window integral, mean denominator
    integral) of the empirical estimator.
    """

    n_p: int
    epsilon_empirical: float | None = None
    epsilon_gaussian: float | None = None
    epsilon_walk_sum: float | None = None
    window_term_x: float | None = None
    prefactor_exponent: float | None = None
    regime: str | None = None
    intermediates: tuple[complex, float] | None = None


class OneDResult(NamedTuple):
    t: float
    epsilon: float
    arg_tbar: float


def _clamp_unit(x: float) -> float:
    # the defining ratios are in [0, 1]; rounding may step a few ulp outside
    return min(1.0, max(0.0, x))


def epsilon_1d(values) -> OneDResult:
    """Transmission probability, decoherence parameter and mean phase.

    values are the complex transmission coefficients T_l of an ensemble;
    t = mean |T|^2 and epsilon = 1 - |mean T|^2 / t. epsilon = 1 exactly
    when the ensemble mean vanishes (perfect dephasing), 0 for a constant
    ensemble (perfect coherence).
    """
    arr = np.asarray(values, dtype=complex)
    if arr.size == 0:
        raise ValueError("transmission ensemble must contain at least one value")
    t = float(np.mean(np.abs(arr) ** 2))
    if t == 0.0:
        raise UndefinedEpsilonError("mean |T|^2 vanishes; epsilon is undefined")
    tbar = complex(np.mean(arr))
    eps = _clamp_unit(1.0 - abs(tbar) ** 2 / t)
    return OneDResult(t=t, epsilon=eps, arg_tbar=float(np.angle(tbar)))


def accumulated_distribution(values) -> float:
    """Accumulated two-path intensity 1 + t + 2 sqrt(t (1-eps)) cos(arg T-bar).

    Equals the direct ensemble average of |1 + T|^2; the interference
    term dies as epsilon -> 1.
    """
    t, eps, arg = epsilon_1d(values)
    return 1.0 + t + 2.0 * math.sqrt(t * (1.0 - eps)) * math.cos(arg)


def momentum_transfer_nodes(k: float, theta: np.ndarray, phi: np.ndarray):
    """Momentum-transfer components at quadrature nodes, incident along +z."""
    st = np.sin(theta)
    return k * st * np.cos(phi), k * st * np.sin(phi), k * (np.cos(theta) - 1.0)


def epsilon_empirical(
    traj: Trajectory,
    window: DetectorWindow,
    k: float,
    model: AmplitudeModel,
    quad: QuadratureSpec = QuadratureSpec(),
) -> DecoherenceReport:
    """Decoherence parameter measured directly on a trajectory.

    Averages the shifted amplitudes F_l(omega) = exp(-i K . r_l) F0(omega)
    over the trajectory and over the detector window:

        epsilon = 1 - |I[F-bar]|^2 / (Omega * mean_l I[|F_l|^2])

    with I[.] the window integral and Omega the window solid angle. The
    normalization by Omega makes the ratio the squared window-averaged
    phase coherence whenever |F0| is constant over the window, and keeps
    the result in [0, 1] in general.
    """
    if len(traj) < 1:
        raise ValueError("trajectory must contain at least one position")
    if not k > 0:
        raise ValueError("wavenumber k must be positive")

    positions = np.ascontiguousarray(traj.positions, dtype=float)
    last = {}

    def eval_at(order: int) -> float:
        theta, phi, wts = window_nodes(window.theta0, window.dtheta, window.phi0, window.dphi, order)
        kx, ky, kz = momentum_transfer_nodes(k, theta, phi)
        mean_phase, mean_sq = kernels.phase_window_moments(kx, ky, kz, positions)
        f0 = amplitude_vs_theta(model, k, theta)
        numerator = complex(np.sum(wts * f0 * mean_phase))
        denominator = float(np.sum(wts * f0 * f0 * mean_sq))
        omega = float(np.sum(wts))
        eps = _clamp_unit(1.0 - abs(numerator) ** 2 / (omega * denominator))
        last["intermediates"] = (numerator, denominator)
        return eps

    eps = converge_by_doubling(eval_at, quad)
    report = _scale_report(len(traj), traj.step_length, k, window)
    report.epsilon_empirical = eps
    report.intermediates = last["intermediates"]
    return report


def epsilon_gaussian_closed_form(
    n_p: int, step_length: float, k: float, window: DetectorWindow
) -> DecoherenceReport:
    """Analytic epsilon for an aged Gaussian walk and a narrow window.

    With y = n_p step_length^2 k^2, a = y (1 - cos theta0) and the window
    term w = y (dtheta sin theta0 + dtheta^2/2 cos theta0):

        epsilon = 1 - [exp(-a) (1 - exp(-w)) / w]^2

    The w -> 0 limit is taken analytically, giving 1 - exp(-2a).
    """
    _check_scales(n_p, step_length, k)
    report = _scale_report(n_p, step_length, k, window)
    a = report.prefactor_exponent
    w = report.window_term_x
    if w < 1e-8:
        bracket = math.exp(-a) * (1.0 - 0.5 * w)
    else:
        bracket = math.exp(-a) * (1.0 - math.exp(-w)) / w
    report.epsilon_gaussian = _clamp_unit(1.0 - bracket * bracket)
    return report


def epsilon_gaussian_quadrature(
    n_p: int,
    step_length: float,
    k: float,
    window: DetectorWindow,
    quad: QuadratureSpec = QuadratureSpec(),
) -> float:
    """Gaussian-model epsilon by direct window quadrature (no expansion).

    Numerically averages exp(-y (1 - cos theta)) over the window and
    returns 1 - average^2. Serves as the independent oracle for the
    closed form, whose window expansion it does not share.
    """
    _check_scales(n_p, step_length, k)
    y = n_p * step_length**2 * k**2

    def averaged(theta, phi):
        return np.exp(-y * (1.0 - np.cos(theta)))

    return _epsilon_from_window_average(averaged, window, quad)


def epsilon_walk_sum(
    n_p: int,
    step_length: float,
    k: float,
    window: DetectorWindow,
    quad: QuadratureSpec = QuadratureSpec(),
) -> float:
    """Epsilon from the exact per-encounter walk expectation.

    Encounter l sees the walk at per-axis variance l * step_length^2, so
    the expected phase average is the finite geometric mean

        S(theta) = (1/n_p) sum_{l=1..n_p} exp(-l c),
        c = step_length^2 k^2 (1 - cos theta),

    which replaces the aged-walk factor exp(-n_p c) of the closed-form
    model. epsilon = 1 - (window average of S)^2.
    """
    _check_scales(n_p, step_length, k)
    c0 = step_length**2 * k**2

    def averaged(theta, phi):
        return _geometric_phase_mean(c0 * (1.0 - np.cos(theta)), n_p)

    return _epsilon_from_window_average(averaged, window, quad)


def window_phase_average(
    traj: Trajectory,
    window: DetectorWindow,
    k: float,
    quad: QuadratureSpec = QuadratureSpec(),
) -> complex:
    """Window average of the trajectory-mean phase factor.

    Returns (1/Omega) integral of (1/n_p) sum_l exp(-i K . r_l) over the
    window; its squared modulus is the empirical epsilon complement for a
    flat amplitude. Used to compare Monte Carlo runs against the
    walk-expectation model.
    """
    if len(traj) < 1:
        raise ValueError("trajectory must contain at least one position")
    if not k > 0:
        raise ValueError("wavenumber k must be positive")
    positions = np.ascontiguousarray(traj.positions, dtype=float)

    def eval_at(order: int) -> complex:
        theta, phi, wts = window_nodes(window.theta0, window.dtheta, window.phi0, window.dphi, order)
        kx, ky, kz = momentum_transfer_nodes(k, theta, phi)
        mean_phase, _ = kernels.phase_window_moments(kx, ky, kz, positions)
        return complex(np.sum(wts * mean_phase) / np.sum(wts))

    return complex(converge_by_doubling(eval_at, quad))


def walk_sum_window_average(
    n_p: int,
    step_length: float,
    k: float,
    window: DetectorWindow,
    quad: QuadratureSpec = QuadratureSpec(),
) -> float:
    """Window average of the walk-expectation phase model S(theta)."""
    _check_scales(n_p, step_length, k)
    c0 = step_length**2 * k**2

    def eval_at(order: int) -> float:
        theta, phi, wts = window_nodes(window.theta0, window.dtheta, window.phi0, window.dphi, order)
        s = _geometric_phase_mean(c0 * (1.0 - np.cos(theta)), n_p)
        return float(np.sum(wts * s) / np.sum(wts))

    return converge_by_doubling(eval_at, quad)


def classify_regime(
    x,
    coherent_below: float = COHERENT_THRESHOLD,
    dephased_above: float = DEPHASED_THRESHOLD,
) -> str:
    """Classify by the window term x = n_p dL^2 k^2 (dt sin t0 + dt^2/2 cos t0).

    Accepts either the scalar x or a DecoherenceReport carrying it.
    """
    if isinstance(x, DecoherenceReport):
        if x.window_term_x is None:
            raise ValueError("report carries no window term")
        x = x.window_term_x
    x = float(x)
    if x < 0:
        raise ValueError("window term x must be >= 0")
    if x < coherent_below:
        return COHERENT
    if x > dephased_above:
        return DEPHASED
    return INTERMEDIATE


def _check_scales(n_p: int, step_length: float, k: float):
    if n_p < 1:
        raise ValueError("n_p must be >= 1")
    if step_length < 0 or not math.isfinite(step_length):
        raise ValueError("step_length must be >= 0 and finite")
    if not k > 0:
        raise ValueError("wavenumber k must be positive")


def _scale_report(n_p: int, step_length: float, k: float, window: DetectorWindow) -> DecoherenceReport:
    y = n_p * step_length**2 * k**2
    x = y * window.expansion_factor()
    a = y * (1.0 - math.cos(window.theta0))
    return DecoherenceReport(
        n_p=n_p,
        window_term_x=x,
        prefactor_exponent=a,
        regime=classify_regime(x),
    )


def _epsilon_from_window_average(fn, window: DetectorWindow, quad: QuadratureSpec) -> float:
    def eval_at(order: int) -> float:
        theta, phi, wts = window_nodes(window.theta0, window.dtheta, window.phi0, window.dphi, order)
        avg = float(np.sum(wts * fn(theta, phi))) / float(np.sum(wts))
        return _clamp_unit(1.0 - avg * avg)

    return converge_by_doubling(eval_at, quad)


def _geometric_phase_mean(c: np.ndarray, n_p: int) -> np.ndarray:
    """(1/n) sum_{l=1..n} exp(-l c), stable for c near 0 and c large."""
    c = np.asarray(c, dtype=float)
    out = np.empty_like(c)
    zero = c <= 0.0
    out[zero] = 1.0
    nz = ~zero
    cn = c[nz]
    # q (1 - q^n) / (1 - q) with q = exp(-c), via expm1 for small c
    out[nz] = np.expm1(-n_p * cn) * np.exp(-cn) / (n_p * np.expm1(-cn))
    return out
