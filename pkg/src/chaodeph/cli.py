"""Command-line interface.

Subcommands:
  adiabatic  3D decoherence sweeps over a parameter grid
  regimes    closed-form-only fast sweeps (same grid and output schema)
  oned       transmission-ensemble experiments (t, epsilon, P-bar)
  rapid      occupation density / effective potential / phase shift

Flags override values from --config; see parse_config for the file keys.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .decoherence import accumulated_distribution, epsilon_1d
from .rapid import GridSpec, effective_potential, is_phase_shifter, occupation_density, phase_shift
from .sweep import (
    ConfigError,
    SweepSpec,
    parse_config,
    rows_to_csv,
    rows_to_json,
    run_sweep,
    write_results,
)
from .trajectories import Fixed, GaussianWalk, StandardMapWalk, gen_trajectory


def _add_sweep_flags(p: argparse.ArgumentParser, with_estimators: bool):
    p.add_argument("--config", help="flat key = value config file")
    for axis in ("np", "dl", "k", "theta0", "dtheta", "dphi"):
        p.add_argument(f"--{axis}", help=f"comma-separated {axis} values")
    p.add_argument("--model", choices=("fixed", "gwalk", "smap"))
    p.add_argument("--kick", type=float, help="standard-map kick strength")
    p.add_argument("--fixed-pos", help="x,y,z of the fixed scatterer")
    p.add_argument("--phi0", type=float)
    p.add_argument("--seed", type=int, help="base seed")
    p.add_argument("--runs", type=int, help="ensemble repetitions per grid point")
    if with_estimators:
        p.add_argument("--estimators", help="subset of empirical,gaussian,walksum")
    p.add_argument("--out", help="output path")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--quad-order", type=int)
    p.add_argument("--quad-tol", type=float)
    p.add_argument("--workers", type=int)


def _build_spec(args, forced_estimators=None) -> SweepSpec:
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            spec = parse_config(fh.read())
    else:
        required = {"np": args.np, "dl": args.dl, "k": args.k,
                    "theta0": args.theta0, "dtheta": args.dtheta, "dphi": args.dphi}
        missing = [k for k, v in required.items() if v is None]
        if missing:
            raise ConfigError(
                f"missing required keys: {', '.join(missing)} (give --config or flags)"
            )
        spec = SweepSpec(
            np_values=[int(v) for v in args.np.split(",")],
            dl_values=[float(v) for v in args.dl.split(",")],
            k_values=[float(v) for v in args.k.split(",")],
            theta0_values=[float(v) for v in args.theta0.split(",")],
            dtheta_values=[float(v) for v in args.dtheta.split(",")],
            dphi_values=[float(v) for v in args.dphi.split(",")],
        )

    if args.config:  # flags override file values
        for axis, attr, cast in (
            ("np", "np_values", int), ("dl", "dl_values", float), ("k", "k_values", float),
            ("theta0", "theta0_values", float), ("dtheta", "dtheta_values", float),
            ("dphi", "dphi_values", float),
        ):
            v = getattr(args, axis)
            if v is not None:
                setattr(spec, attr, [cast(x) for x in v.split(",")])
    if args.model is not None:
        spec.model = args.model
    if args.kick is not None:
        spec.kick_strength = args.kick
    if args.fixed_pos is not None:
        spec.fixed_position = tuple(float(v) for v in args.fixed_pos.split(","))
    if args.phi0 is not None:
        spec.phi0 = args.phi0
    if args.seed is not None:
        spec.base_seed = args.seed
    if args.runs is not None:
        spec.ensemble_runs = args.runs
    if getattr(args, "estimators", None) is not None:
        spec.estimators = tuple(v.strip() for v in args.estimators.split(","))
    if forced_estimators is not None:
        spec.estimators = forced_estimators
    if args.out is not None:
        spec.output_path = args.out
    if args.format is not None:
        spec.output_format = args.format
    if args.quad_order is not None:
        spec.quad_order = args.quad_order
    if args.quad_tol is not None:
        spec.quad_tol = args.quad_tol
    if args.workers is not None:
        spec.workers = args.workers
    return spec.validate()


def _cmd_sweep(args, forced_estimators=None) -> int:
    spec = _build_spec(args, forced_estimators)
    rows, manifest = run_sweep(spec)
    write_results(rows, manifest, spec.output_path, spec.output_format)
    print(f"wrote {len(rows)} rows to {spec.output_path}")
    return 0


ONED_COLUMNS = ["tmodel", "np", "tvalue", "seed", "t", "epsilon", "arg_tbar", "pbar"]


def _cmd_oned(args) -> int:
    n = args.np
    if n < 1:
        raise ConfigError("field 'np': must be >= 1")
    if args.tmodel == "constant":
        values = np.full(n, complex(args.tvalue))
    elif args.tmodel == "alternating":
        values = np.where(np.arange(n) % 2 == 0, args.tvalue, -args.tvalue).astype(complex)
    else:  # random-phase
        rng = np.random.default_rng(args.seed)
        values = args.tvalue * np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, n))
    t, eps, arg = epsilon_1d(values)
    row = {
        "tmodel": args.tmodel, "np": n, "tvalue": args.tvalue, "seed": args.seed,
        "t": t, "epsilon": eps, "arg_tbar": arg, "pbar": accumulated_distribution(values),
    }
    _write_rows([row], ONED_COLUMNS, args.out, args.format)
    print(f"wrote 1 row to {args.out}")
    return 0


RAPID_COLUMNS = [
    "model", "samples", "dl", "kick", "seed", "b", "k",
    "mass", "center_x", "center_y", "center_z", "width_x", "width_y", "width_z",
    "delta_r", "chi", "chi_eikonal", "phase_shifter",
]


def _cmd_rapid(args) -> int:
    if args.model == "fixed":
        model = Fixed()
    elif args.model == "gwalk":
        model = GaussianWalk(args.dl)
    else:
        model = StandardMapWalk(args.dl, args.kick)
    traj = gen_trajectory(model, args.samples, args.seed)
    pts = traj.positions

    half = args.half_extent
    if half is None:
        half = float(np.abs(pts).max()) * 1.05 + 1e-9
    grid = GridSpec.centered(half, args.cells)
    density = occupation_density(pts, grid)
    potential = effective_potential(density, args.b)

    delta_r = float(np.linalg.norm(density.width))
    if delta_r == 0.0:
        chi = 0.0 if args.b == 0 else math.inf
    else:
        chi = phase_shift(2.0 * math.pi / args.k, args.b, delta_r)
    # independent traversal estimate: line integral of the effective
    # potential along z through the cloud center
    h = grid.cell_size
    cx = int(np.clip((density.center[0] - density.origin[0]) // h, 0, args.cells - 1))
    cy = int(np.clip((density.center[1] - density.origin[1]) // h, 0, args.cells - 1))
    chi_eik = -float(potential.grid[cx, cy, :].sum()) * h / args.k

    row = {
        "model": args.model, "samples": args.samples, "dl": args.dl,
        "kick": args.kick, "seed": args.seed, "b": args.b, "k": args.k,
        "mass": float(density.grid.sum()),
        "center_x": density.center[0], "center_y": density.center[1], "center_z": density.center[2],
        "width_x": density.width[0], "width_y": density.width[1], "width_z": density.width[2],
        "delta_r": delta_r, "chi": chi, "chi_eikonal": chi_eik,
        "phase_shifter": str(is_phase_shifter(chi, args.threshold)).lower(),
    }
    _write_rows([row], RAPID_COLUMNS, args.out, args.format)
    print(f"wrote 1 row to {args.out}")
    return 0


def _write_rows(rows, columns, path, fmt):
    text = rows_to_csv(rows, columns) if fmt == "csv" else rows_to_json(rows, columns)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write output path '{path}': {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chaodeph", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_ad = sub.add_parser("adiabatic", help="3D decoherence sweeps")
    _add_sweep_flags(p_ad, with_estimators=True)
    p_ad.set_defaults(func=_cmd_sweep)

    p_rg = sub.add_parser("regimes", help="closed-form-only fast sweeps")
    _add_sweep_flags(p_rg, with_estimators=False)
    p_rg.set_defaults(func=lambda a: _cmd_sweep(a, forced_estimators=("gaussian",)))

    p_1d = sub.add_parser("oned", help="transmission-ensemble experiments")
    p_1d.add_argument("--np", type=int, required=True)
    p_1d.add_argument("--tmodel", choices=("constant", "alternating", "random-phase"),
                      default="random-phase")
    p_1d.add_argument("--tvalue", type=float, default=1.0, help="|T| of each member")
    p_1d.add_argument("--seed", type=int, default=0)
    p_1d.add_argument("--out", default="oned.csv")
    p_1d.add_argument("--format", choices=("csv", "json"), default="csv")
    p_1d.set_defaults(func=_cmd_oned)

    p_rp = sub.add_parser("rapid", help="density / potential / phase shift")
    p_rp.add_argument("--model", choices=("fixed", "gwalk", "smap"), default="smap")
    p_rp.add_argument("--dl", type=float, default=1.0, help="walk step length")
    p_rp.add_argument("--kick", type=float, default=7.0)
    p_rp.add_argument("--samples", type=int, default=10000)
    p_rp.add_argument("--seed", type=int, default=0)
    p_rp.add_argument("--half-extent", type=float, default=None,
                      help="grid half width (default: cover the samples)")
    p_rp.add_argument("--cells", type=int, default=32, help="grid cells per axis")
    p_rp.add_argument("--b", type=float, default=0.01, help="scattering length")
    p_rp.add_argument("--k", type=float, default=1.0, help="incident wavenumber")
    p_rp.add_argument("--threshold", type=float, default=1e-2,
                      help="|chi| below this counts as a pure phase shifter")
    p_rp.add_argument("--out", default="rapid.csv")
    p_rp.add_argument("--format", choices=("csv", "json"), default="csv")
    p_rp.set_defaults(func=_cmd_rapid)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
