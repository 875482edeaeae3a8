"""Rapid-motion branch: the beam sees a time-averaged occupation density.

When the scatterer moves much faster than a wave packet takes to pass,
the interaction reduces to scattering off the effective potential built
from the fraction of time the scatterer spends in each region. For a
contact interaction of scattering length b this effective potential is
2 pi b times the occupation density (natural units), and a dilute broad
cloud only imprints the small overall phase chi = -lambda b / dR^2: a
phase shifter, not a detector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import fftconvolve


@dataclass(frozen=True)
class GridSpec:
    """Uniform cubic-cell grid: corner origin, cells per axis, cell size."""

    origin: tuple[float, float, float]
    shape: tuple[int, int, int]
    cell_size: float

    def __post_init__(self):
        if any(n < 1 for n in self.shape):
            raise ValueError("GridSpec.shape must be positive per axis")
        if not self.cell_size > 0:
            raise ValueError("GridSpec.cell_size must be positive")

    @classmethod
    def centered(cls, half_extent: float, cells: int) -> "GridSpec":
        size = 2.0 * half_extent / cells
        return cls(origin=(-half_extent,) * 3, shape=(cells,) * 3, cell_size=size)


@dataclass
class OccupationDensity:
    """Normalized cell-occupation histogram of the scatterer positions.

    grid holds the probability mass per cell (sums to 1); center and
    width are the per-axis mean and standard deviation of the samples.
    """

    grid: np.ndarray
    origin: np.ndarray
    cell_size: float
    center: np.ndarray
    width: np.ndarray

    @property
    def cell_volume(self) -> float:
        return self.cell_size**3

    def values(self) -> np.ndarray:
        """Density values (mass per unit volume) per cell."""
        return self.grid / self.cell_volume


@dataclass
class EffectivePotential:
    """Potential values on the same grid as the source density."""

    grid: np.ndarray
    origin: np.ndarray
    cell_size: float
    scattering_length: float | None = None


def occupation_density(samples, grid: GridSpec) -> OccupationDensity:
    """Histogram the visited positions into the grid, one 1/M per sample."""
    pts = np.atleast_2d(np.asarray(samples, dtype=float))
    if pts.shape[0] < 1 or pts.shape[1] != 3:
        raise ValueError("samples must be a non-empty (M, 3) array")
    origin = np.asarray(grid.origin, dtype=float)
    idx = np.floor((pts - origin) / grid.cell_size).astype(int)
    shape = np.asarray(grid.shape)
    if np.any(idx < 0) or np.any(idx >= shape):
        bad = int(np.flatnonzero(np.any((idx < 0) | (idx >= shape), axis=1))[0])
        raise ValueError(f"sample {bad} at {pts[bad]} falls outside the grid")

    hist = np.zeros(grid.shape)
    np.add.at(hist, (idx[:, 0], idx[:, 1], idx[:, 2]), 1.0)
    hist /= pts.shape[0]
    return OccupationDensity(
        grid=hist,
        origin=origin,
        cell_size=grid.cell_size,
        center=pts.mean(axis=0),
        width=pts.std(axis=0),
    )


def effective_potential(density: OccupationDensity, b: float) -> EffectivePotential:
    """Contact-interaction effective potential 2 pi b * density value."""
    return EffectivePotential(
        grid=2.0 * math.pi * b * density.values(),
        origin=density.origin,
        cell_size=density.cell_size,
        scattering_length=b,
    )


def effective_potential_convolved(
    density: OccupationDensity, strength: float, width: float
) -> EffectivePotential:
    """Finite-range potential V(r) = strength exp(-r^2 / 2 width^2).

    Convolves the occupation mass with the analytically sampled kernel,
    treating each cell's mass as a point at the cell center.
    """
    if not width > 0:
        raise ValueError("potential width must be positive")
    h = density.cell_size
    reach = max(1, int(math.ceil(5.0 * width / h)))
    offs = np.arange(-reach, reach + 1) * h
    ox, oy, oz = np.meshgrid(offs, offs, offs, indexing="ij")
    kernel = strength * np.exp(-(ox**2 + oy**2 + oz**2) / (2.0 * width**2))
    grid = fftconvolve(density.grid, kernel, mode="same")
    return EffectivePotential(
        grid=grid, origin=density.origin, cell_size=h, scattering_length=None
    )


def phase_shift(wavelength: float, b: float, delta_r: float) -> float:
    """Overall phase chi = -wavelength * b / delta_r^2 of a dilute cloud."""
    if not wavelength > 0:
        raise ValueError("wavelength must be positive")
    if not delta_r > 0:
        raise ValueError("delta_r must be positive")
    return -wavelength * b / delta_r**2


def is_phase_shifter(chi: float, threshold: float) -> bool:
    """True when the imprinted phase is too small to count as dephasing."""
    if not threshold > 0:
        raise ValueError("threshold must be positive")
    return abs(chi) < threshold
