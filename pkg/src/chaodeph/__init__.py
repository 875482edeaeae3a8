"""Dephasing of a quantum beam by a chaotically moving classical scatterer."""

__version__ = "0.1.0"

from .amplitudes import (
    AmplitudeModel,
    BornGaussian,
    Kinematics,
    LowEnergy,
    base_amplitude,
    momentum_transfer,
    phase_factor,
    shifted_amplitude,
)
from .decoherence import (
    COHERENT,
    DEPHASED,
    INTERMEDIATE,
    DecoherenceReport,
    DetectorWindow,
    UndefinedEpsilonError,
    accumulated_distribution,
    classify_regime,
    epsilon_1d,
    epsilon_empirical,
    epsilon_gaussian_closed_form,
    epsilon_gaussian_quadrature,
    epsilon_walk_sum,
    walk_sum_window_average,
    window_phase_average,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .quadrature import QuadratureConvergenceError, QuadratureSpec
from .rapid import (
    EffectivePotential,
    GridSpec,
    OccupationDensity,
    effective_potential,
    effective_potential_convolved,
    is_phase_shifter,
    occupation_density,
    phase_shift,
)
from .sweep import ConfigError, RunManifest, SweepSpec, parse_config, run_sweep
from .trajectories import Fixed, GaussianWalk, StandardMapWalk, Trajectory, gen_trajectory

__all__ = [
    "AmplitudeModel", "BornGaussian", "Kinematics", "LowEnergy",
    "base_amplitude", "momentum_transfer", "phase_factor", "shifted_amplitude",
    "COHERENT", "DEPHASED", "INTERMEDIATE",
    "DecoherenceReport", "DetectorWindow", "UndefinedEpsilonError",
    "accumulated_distribution", "classify_regime", "epsilon_1d",
    "epsilon_empirical", "epsilon_gaussian_closed_form",
    "epsilon_gaussian_quadrature", "epsilon_walk_sum",
    "walk_sum_window_average", "window_phase_average",
    "KERNEL_BACKEND", "QuadratureConvergenceError", "QuadratureSpec",
    "EffectivePotential", "GridSpec", "OccupationDensity",
    "effective_potential", "effective_potential_convolved",
    "is_phase_shifter", "occupation_density", "phase_shift",
    "ConfigError", "RunManifest", "SweepSpec", "parse_config", "run_sweep",
    "Fixed", "GaussianWalk", "StandardMapWalk", "Trajectory", "gen_trajectory",
    "__version__",
]
