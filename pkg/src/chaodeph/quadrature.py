"""Tensor-product Gauss-Legendre quadrature over a solid-angle window.

The detector window is a rectangle [theta0, theta0 + dtheta] x
[phi0, phi0 + dphi] integrated with measure sin(theta) dtheta dphi. All
integrands here are smooth, so fixed-order Gauss-Legendre converges
spectrally; accuracy is controlled by doubling the per-axis order until
two successive estimates agree to a relative tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

# near-zero results cannot meet a relative tolerance; treat them as converged
ABS_FLOOR = 1e-15


class QuadratureConvergenceError(RuntimeError):
    """Successive order doublings failed to agree to the requested tolerance."""

    def __init__(self, requested: float, achieved: float, order: int):
        self.requested = requested
        self.achieved = achieved
        self.order = order
        super().__init__(
            f"quadrature did not converge: achieved relative difference "
            f"{achieved:.3e} at per-axis order {order}, requested {requested:.3e}"
        )


@dataclass(frozen=True)
class QuadratureSpec:
    """Per-axis Gauss-Legendre order and the doubling convergence rule.

    max_doublings = 0 evaluates once at the base order with no
    convergence check (used by Monte Carlo loops where the quadrature
    error is far below the statistical one).
    """

    order: int = 32
    rel_tol: float = 1e-9
    max_doublings: int = 6

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("QuadratureSpec.order must be >= 1")
        if not (self.rel_tol > 0):
            raise ValueError("QuadratureSpec.rel_tol must be positive")
        if self.max_doublings < 0:
            raise ValueError("QuadratureSpec.max_doublings must be >= 0")


@lru_cache(maxsize=64)
def _leggauss(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def mapped_nodes(a: float, b: float, order: int):
    """Gauss-Legendre nodes and weights mapped from [-1, 1] to [a, b]."""
    x, w = _leggauss(order)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def window_nodes(theta0, dtheta, phi0, dphi, order):
    """Flattened tensor: theta, phi node grids and combined weights.

    Weights already include the sin(theta) surface element, so
    sum(weights) approximates the window solid angle.
    """
    th, wth = mapped_nodes(theta0, theta0 + dtheta, order)
    ph, wph = mapped_nodes(phi0, phi0 + dphi, order)
    theta = np.repeat(th, order)
    phi = np.tile(ph, order)
    weights = np.repeat(wth * np.sin(th), order) * np.tile(wph, order)
    return theta, phi, weights


def solid_angle_exact(theta0: float, dtheta: float, dphi: float) -> float:
    """Closed form of the window measure: dphi (cos t0 - cos(t0 + dt))."""
    return dphi * (math.cos(theta0) - math.cos(theta0 + dtheta))


def integrate_window(fn, theta0, dtheta, phi0, dphi, order: int) -> float:
    """Integrate fn(theta, phi) over the window with measure sin(theta)."""
    theta, phi, weights = window_nodes(theta0, dtheta, phi0, dphi, order)
    return float(weights @ np.asarray(fn(theta, phi), dtype=float))


def converge_by_doubling(eval_at_order, spec: QuadratureSpec):
    """Run eval_at_order at spec.order, 2x, 4x, ... until stable.

    Convergence means the last two estimates differ by less than
    spec.rel_tol relatively (or by less than an absolute floor, for
    results indistinguishable from zero). Works for real or complex
    estimates.
    """
    order = spec.order
    prev = eval_at_order(order)
    if spec.max_doublings == 0:
        return prev
    for _ in range(spec.max_doublings):
        order *= 2
        cur = eval_at_order(order)
        diff = abs(cur - prev)
        if diff <= spec.rel_tol * max(abs(cur), abs(prev)) or diff <= ABS_FLOOR:
            return cur
        prev = cur
    achieved = diff / max(abs(cur), ABS_FLOOR)
    raise QuadratureConvergenceError(spec.rel_tol, achieved, order)
