"""Parameter sweeps: config parsing, seeded execution, CSV/JSON output.

A sweep runs every grid point of (np x dl x k x theta0 x dtheta x dphi)
in that nesting order. Each point gets a seed derived from the base seed
and its grid index through a splitmix64 chain, so points are independent
yet fully reproducible; the run seed for ensemble repetition j of point i
is derive_seed(base, i, j). Rows are emitted in grid order regardless of
how many workers computed them, and every float is formatted to 9
significant digits, so identical specs produce identical bytes.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from itertools import product

import numpy as np

from . import __version__
from .amplitudes import LowEnergy
from .decoherence import (
    COHERENT_THRESHOLD,
    DEPHASED_THRESHOLD,
    DetectorWindow,
    classify_regime,
    epsilon_empirical,
    epsilon_gaussian_closed_form,
    epsilon_walk_sum,
)
from .quadrature import QuadratureSpec
from .trajectories import Fixed, GaussianWalk, StandardMapWalk, gen_trajectory

CSV_COLUMNS = [
    "model", "np", "dl", "k", "theta0", "dtheta", "dphi", "seed", "runs",
    "eps_empirical_mean", "eps_empirical_se", "eps_gaussian", "eps_walksum",
    "window_term_x", "regime",
]

ESTIMATORS = ("empirical", "gaussian", "walksum")
MODELS = ("fixed", "gwalk", "smap")

_MASK64 = (1 << 64) - 1


class ConfigError(ValueError):
    """Config text could not be turned into a valid sweep spec."""


@dataclass
class SweepSpec:
    np_values: list[int]
    dl_values: list[float]
    k_values: list[float]
    theta0_values: list[float]
    dtheta_values: list[float]
    dphi_values: list[float]
    model: str = "gwalk"
    fixed_position: tuple[float, float, float] = (0.0, 0.0, 0.0)
    kick_strength: float = 7.0
    phi0: float = 0.0
    ensemble_runs: int = 1
    base_seed: int = 0
    estimators: tuple[str, ...] = ("empirical", "gaussian", "walksum")
    output_path: str = "results.csv"
    output_format: str = "csv"
    quad_order: int = 32
    quad_tol: float = 1e-9
    coherent_threshold: float = COHERENT_THRESHOLD
    dephased_threshold: float = DEPHASED_THRESHOLD
    workers: int = 1

    def validate(self):
        for name in ("np", "dl", "k", "theta0", "dtheta", "dphi"):
            if not getattr(self, f"{name}_values"):
                raise ConfigError(f"field '{name}': needs at least one value")
        if any(n < 1 for n in self.np_values):
            raise ConfigError("field 'np': values must be >= 1")
        if any(not v > 0 for v in self.dl_values):
            raise ConfigError("field 'dl': values must be > 0")
        if any(not v > 0 for v in self.k_values):
            raise ConfigError("field 'k': values must be > 0")
        if self.model not in MODELS:
            raise ConfigError(f"field 'model': must be one of {MODELS}")
        if not self.estimators:
            raise ConfigError("field 'estimators': needs at least one estimator")
        for est in self.estimators:
            if est not in ESTIMATORS:
                raise ConfigError(f"field 'estimators': unknown estimator '{est}'")
        if self.ensemble_runs < 1:
            raise ConfigError("field 'runs': must be >= 1")
        if self.output_format not in ("csv", "json"):
            raise ConfigError("field 'format': must be csv or json")
        if self.workers < 1:
            raise ConfigError("field 'workers': must be >= 1")
        # window bounds are validated per point by DetectorWindow
        return self

    def grid(self):
        return list(
            product(
                self.np_values, self.dl_values, self.k_values,
                self.theta0_values, self.dtheta_values, self.dphi_values,
            )
        )

    def trajectory_model(self, dl: float):
        if self.model == "fixed":
            return Fixed(self.fixed_position)
        if self.model == "gwalk":
            return GaussianWalk(dl)
        return StandardMapWalk(dl, self.kick_strength)


@dataclass
class RunManifest:
    """Everything needed to reproduce the output bit for bit."""

    tool: str
    version: str
    created: str
    base_seed: int
    parameters: dict
    points: list = field(default_factory=list)


def splitmix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(base: int, *indices: int) -> int:
    """Chain splitmix64 over the base seed and grid/run indices."""
    s = splitmix64(base & _MASK64)
    for ix in indices:
        s = splitmix64(s ^ (ix & _MASK64))
    return s


# ---------------------------------------------------------------------------
# config parsing

_LIST_KEYS = {
    "np": ("np_values", int),
    "dl": ("dl_values", float),
    "k": ("k_values", float),
    "theta0": ("theta0_values", float),
    "dtheta": ("dtheta_values", float),
    "dphi": ("dphi_values", float),
}
_SCALAR_KEYS = {
    "model": ("model", str),
    "kick": ("kick_strength", float),
    "phi0": ("phi0", float),
    "runs": ("ensemble_runs", int),
    "seed": ("base_seed", int),
    "out": ("output_path", str),
    "format": ("output_format", str),
    "quad_order": ("quad_order", int),
    "quad_tol": ("quad_tol", float),
    "coherent_threshold": ("coherent_threshold", float),
    "dephased_threshold": ("dephased_threshold", float),
    "workers": ("workers", int),
}
REQUIRED_KEYS = tuple(_LIST_KEYS)


def parse_config(text: str) -> SweepSpec:
    """Parse flat 'key = value' config text into a validated SweepSpec.

    Sweep axes take comma-separated lists; '#' starts a comment. Unknown
    keys are rejected with their line number.
    """
    values: dict = {}
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, val = line.partition("=")
        key = key.strip().lower()
        val = val.strip()
        if key in seen:
            raise ConfigError(f"line {lineno}: duplicate key '{key}'")
        seen.add(key)
        try:
            if key in _LIST_KEYS:
                attr, cast = _LIST_KEYS[key]
                items = [v.strip() for v in val.split(",") if v.strip()]
                if not items:
                    raise ValueError("empty list")
                values[attr] = [cast(v) for v in items]
            elif key in _SCALAR_KEYS:
                attr, cast = _SCALAR_KEYS[key]
                values[attr] = cast(val)
            elif key == "estimators":
                values["estimators"] = tuple(v.strip() for v in val.split(",") if v.strip())
            elif key == "fixed_pos":
                parts = [float(v) for v in val.split(",")]
                if len(parts) != 3:
                    raise ValueError("needs three components")
                values["fixed_position"] = tuple(parts)
            else:
                raise ConfigError(f"line {lineno}: unknown key '{key}'")
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for '{key}': {exc}") from None

    missing = [k for k in REQUIRED_KEYS if _LIST_KEYS[k][0] not in values]
    if missing:
        raise ConfigError(f"missing required keys: {', '.join(missing)}")
    return SweepSpec(**values).validate()


# ---------------------------------------------------------------------------
# execution

def _compute_point(spec: SweepSpec, index: int, params) -> dict:
    n_p, dl, k, theta0, dtheta, dphi = params
    window = DetectorWindow(theta0=theta0, dtheta=dtheta, dphi=dphi, phi0=spec.phi0)
    quad = QuadratureSpec(order=spec.quad_order, rel_tol=spec.quad_tol)
    point_seed = derive_seed(spec.base_seed, index)

    row = {
        "model": spec.model,
        "np": n_p,
        "dl": dl,
        "k": k,
        "theta0": theta0,
        "dtheta": dtheta,
        "dphi": dphi,
        "seed": point_seed,
        "runs": spec.ensemble_runs,
        "eps_empirical_mean": math.nan,
        "eps_empirical_se": math.nan,
        "eps_gaussian": math.nan,
        "eps_walksum": math.nan,
    }

    if "empirical" in spec.estimators:
        amp = LowEnergy(scattering_length=1.0 / k)  # angle-flat reference amplitude
        eps_runs = []
        for j in range(spec.ensemble_runs):
            traj = gen_trajectory(spec.trajectory_model(dl), n_p, derive_seed(spec.base_seed, index, j))
            eps_runs.append(epsilon_empirical(traj, window, k, amp, quad).epsilon_empirical)
        mean = math.fsum(eps_runs) / len(eps_runs)
        row["eps_empirical_mean"] = mean
        if len(eps_runs) > 1:
            var = math.fsum((e - mean) ** 2 for e in eps_runs) / (len(eps_runs) - 1)
            row["eps_empirical_se"] = math.sqrt(var / len(eps_runs))

    if "gaussian" in spec.estimators:
        row["eps_gaussian"] = epsilon_gaussian_closed_form(n_p, dl, k, window).epsilon_gaussian

    if "walksum" in spec.estimators:
        row["eps_walksum"] = epsilon_walk_sum(n_p, dl, k, window, quad)

    x = n_p * dl * dl * k * k * window.expansion_factor()
    row["window_term_x"] = x
    row["regime"] = classify_regime(x, spec.coherent_threshold, spec.dephased_threshold)
    return row


def _point_task(args):
    spec, index, params = args
    return index, _compute_point(spec, index, params)


def run_sweep(spec: SweepSpec) -> tuple[list[dict], RunManifest]:
    """Execute the sweep; rows come back in canonical grid order."""
    spec.validate()
    grid = spec.grid()
    tasks = [(spec, i, params) for i, params in enumerate(grid)]

    if spec.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            results = dict(pool.map(_point_task, tasks, chunksize=1))
        rows = [results[i] for i in range(len(grid))]
    else:
        rows = [_compute_point(spec, i, params) for i, params in enumerate(grid)]

    manifest = RunManifest(
        tool="chaodeph",
        version=__version__,
        created=datetime.now(timezone.utc).isoformat(),
        base_seed=spec.base_seed,
        parameters=asdict(spec),
        points=[
            {
                "index": i,
                "np": params[0], "dl": params[1], "k": params[2],
                "theta0": params[3], "dtheta": params[4], "dphi": params[5],
                "seed": derive_seed(spec.base_seed, i),
                "run_seeds": [derive_seed(spec.base_seed, i, j) for j in range(spec.ensemble_runs)],
            }
            for i, params in enumerate(grid)
        ],
    )
    return rows, manifest


# ---------------------------------------------------------------------------
# serialization

def format_number(v) -> str:
    """Locale-independent, 9 significant digits, lowercase exponent."""
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".9g")


def _cell(v) -> str:
    return v if isinstance(v, str) else format_number(v)


def rows_to_csv(rows: list[dict], columns=None) -> str:
    columns = columns or CSV_COLUMNS
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_cell(row[c]) for c in columns))
    return "\n".join(lines) + "\n"


def rows_to_json(rows: list[dict], columns=None) -> str:
    columns = columns or CSV_COLUMNS
    out = []
    for row in rows:
        obj = {}
        for c in columns:
            v = row[c]
            if isinstance(v, str):
                obj[c] = v
            elif isinstance(v, (int, np.integer)):
                obj[c] = int(v)
            elif math.isnan(v):
                obj[c] = None
            else:
                obj[c] = float(format_number(v))
        out.append(obj)
    return json.dumps(out, indent=2) + "\n"


def write_results(rows: list[dict], manifest: RunManifest, path: str, fmt: str, columns=None):
    """Write rows as CSV/JSON plus the manifest next to them."""
    text = rows_to_csv(rows, columns) if fmt == "csv" else rows_to_json(rows, columns)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write output path '{path}': {exc}") from None
    with open(f"{path}.manifest.json", "w", encoding="utf-8") as fh:
        json.dump(asdict(manifest), fh, indent=2)
        fh.write("\n")
