"""Elastic scattering amplitudes for a potential centered off the origin.

Incident direction is fixed to +z; outgoing directions are standard
spherical angles (theta, phi) about it. Moving the potential center to r
multiplies the fixed-center amplitude by exp(-i K . r) with K the momentum
transfer, which is the only way the scatterer position enters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SQRT_TWO_PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class Kinematics:
    """Incident wavenumber k and outgoing direction (theta, phi)."""

    k: float
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (self.k > 0 and math.isfinite(self.k)):
            raise ValueError("Kinematics.k must be positive and finite")
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError("Kinematics.theta must lie in [0, pi]")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise ValueError("Kinematics.phi must lie in [0, 2 pi)")


@dataclass(frozen=True)
class LowEnergy:
    """Contact interaction: F0 = -k * scattering_length, angle independent."""

    scattering_length: float


@dataclass(frozen=True)
class BornGaussian:
    """First-order amplitude of V(r) = strength * exp(-r^2 / 2 width^2)."""

    strength: float
    width: float

    def __post_init__(self):
        if not (self.width > 0 and math.isfinite(self.width)):
            raise ValueError("BornGaussian.width must be positive and finite")


AmplitudeModel = LowEnergy | BornGaussian


def momentum_transfer(kin: Kinematics) -> np.ndarray:
    """K = k_out - k_in for elastic scattering; |K| = 2 k sin(theta / 2)."""
    k, t, p = kin.k, kin.theta, kin.phi
    st = math.sin(t)
    return np.array([k * st * math.cos(p), k * st * math.sin(p), k * (math.cos(t) - 1.0)])


def phase_factor(K: np.ndarray, r: np.ndarray) -> complex:
    """Unit-modulus factor exp(-i K . r) carried by a shifted potential."""
    dot = float(np.asarray(K) @ np.asarray(r))
    return complex(math.cos(dot), -math.sin(dot))


def base_amplitude(model: AmplitudeModel, kin: Kinematics) -> complex:
    """Amplitude of the potential centered at the origin."""
    if isinstance(model, LowEnergy):
        return complex(-kin.k * model.scattering_length)
    if isinstance(model, BornGaussian):
        k2 = float(momentum_transfer(kin) @ momentum_transfer(kin))
        return complex(_born_gaussian_value(model, k2))
    raise TypeError(f"unknown amplitude model {type(model).__name__}")


def shifted_amplitude(model: AmplitudeModel, kin: Kinematics, r: np.ndarray) -> complex:
    """Amplitude with the potential center moved to r."""
    return phase_factor(momentum_transfer(kin), r) * base_amplitude(model, kin)


def amplitude_vs_theta(model: AmplitudeModel, k: float, theta: np.ndarray) -> np.ndarray:
    """Origin-centered amplitude sampled over polar angles (phi-independent).

    Vectorized form used by the solid-angle estimators; agrees with
    base_amplitude at every angle.
    """
    theta = np.asarray(theta, dtype=float)
    if isinstance(model, LowEnergy):
        return np.full(theta.shape, -k * model.scattering_length)
    if isinstance(model, BornGaussian):
        k_sq = 2.0 * k * k * (1.0 - np.cos(theta))  # |K|^2 elastic
        return _born_gaussian_value(model, k_sq)
    raise TypeError(f"unknown amplitude model {type(model).__name__}")


def _born_gaussian_value(model: BornGaussian, k_transfer_sq):
    # analytic 3D Fourier transform of the Gaussian times -m / (2 pi hbar^2)
    w = model.width
    return -model.strength * w**3 * SQRT_TWO_PI * np.exp(-0.5 * k_transfer_sq * w * w)
