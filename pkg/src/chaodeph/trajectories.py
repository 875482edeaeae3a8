"""Classical scatterer trajectories: one 3D position per incoming particle.

Positions are plain float64 arrays of shape (n, 3), in natural units
(hbar = m = 1); only products like step_length * k are physical. The walk
starts at the potential origin, so position 1 is already one step away
from (0, 0, 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Fixed:
    """Scatterer pinned at one point (no motion, no dephasing)."""

    position: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if len(self.position) != 3 or not all(math.isfinite(c) for c in self.position):
            raise ValueError("Fixed.position must be three finite components")


@dataclass(frozen=True)
class GaussianWalk:
    """Random walk with independent Gaussian steps.

    step_length is the per-axis standard deviation of each step, so the
    endpoint after n steps has per-axis variance n * step_length**2.
    """

    step_length: float

    def __post_init__(self):
        if not (self.step_length > 0 and math.isfinite(self.step_length)):
            raise ValueError("GaussianWalk.step_length must be positive and finite")


@dataclass(frozen=True)
class StandardMapWalk:
    """Deterministic chaotic walk driven by three Chirikov standard maps.

    Each axis carries an independent kicked-rotor map
        p <- p + kick_strength * sin(x),   x <- x + p  (mod 2 pi)
    and contributes a step step_length * sin(x) after the update. The
    default kick_strength 7 sits deep in the chaotic regime. When
    initial_state is None the six map coordinates are drawn uniformly
    from [0, 2 pi) using the trajectory seed.
    """

    step_length: float
    kick_strength: float = 7.0
    initial_state: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        if not (self.step_length > 0 and math.isfinite(self.step_length)):
            raise ValueError("StandardMapWalk.step_length must be positive and finite")
        if self.kick_strength < 0:
            raise ValueError("StandardMapWalk.kick_strength must be >= 0")
        if self.initial_state is not None and len(self.initial_state) != 3:
            raise ValueError("StandardMapWalk.initial_state needs 3 (x, p) pairs")


TrajectoryModel = Fixed | GaussianWalk | StandardMapWalk


@dataclass
class Trajectory:
    """Scatterer positions r_1 .. r_n plus the recipe that generated them."""

    positions: np.ndarray  # (n, 3) float64
    model: TrajectoryModel
    seed: int

    def __len__(self):
        return self.positions.shape[0]

    @property
    def step_length(self) -> float:
        """Walk step length, 0 for a fixed scatterer."""
        return getattr(self.model, "step_length", 0.0)


def gen_trajectory(model: TrajectoryModel, n: int, seed: int = 0) -> Trajectory:
    """Generate n scatterer positions for the given model.

    Deterministic: the same (model, n, seed) always reproduces the same
    positions bit for bit, and the first m positions of an n-point
    trajectory equal the m-point trajectory for the same seed.
    """
    if n < 1:
        raise ValueError("trajectory length n must be >= 1")

    if isinstance(model, Fixed):
        positions = np.tile(np.asarray(model.position, dtype=float), (n, 1))
    elif isinstance(model, GaussianWalk):
        rng = np.random.default_rng(seed)
        steps = model.step_length * rng.standard_normal((n, 3))
        positions = np.cumsum(steps, axis=0)
    elif isinstance(model, StandardMapWalk):
        positions = np.cumsum(_standard_map_steps(model, n, seed), axis=0)
    else:
        raise TypeError(f"unknown trajectory model {type(model).__name__}")

    return Trajectory(positions=positions, model=model, seed=seed)


def _standard_map_steps(model: StandardMapWalk, n: int, seed: int) -> np.ndarray:
    if model.initial_state is not None:
        x = [float(xp[0]) for xp in model.initial_state]
        p = [float(xp[1]) for xp in model.initial_state]
    else:
        rng = np.random.default_rng(seed)
        x = list(rng.uniform(0.0, TWO_PI, 3))
        p = list(rng.uniform(0.0, TWO_PI, 3))

    kick = model.kick_strength
    steps = np.empty((n, 3))
    for axis in range(3):
        xa, pa = x[axis], p[axis]
        col = steps[:, axis]
        for i in range(n):
            pa += kick * math.sin(xa)
            xa = math.fmod(xa + pa, TWO_PI)
            col[i] = math.sin(xa)
        # chaotic recurrence: keep the scalar loop, vectorization cannot help
    steps *= model.step_length
    return steps
