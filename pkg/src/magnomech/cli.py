"""Command-line front end.

Exit status: 0 on success, 2 on usage or validation errors, 1 on runtime errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import replace
from importlib import resources
from pathlib import Path

import numpy as np

from . import drive, figures, floquet, rwa_spectrum, steadystate, sweep
from .params import TWO_PI, ParameterError, SystemParams, load_config
from .tables import Table, render, write_atomic


def shipped_config(name: str = "baseline.json") -> str:
    return resources.files("magnomech").joinpath("configs", name).read_text()


def _read_config(path: str | None) -> str:
    if path is None:
        return shipped_config()
    if path.startswith("shipped:"):
        return shipped_config(path.split(":", 1)[1])
    return Path(path).read_text()


def _load_params(args) -> SystemParams:
    params = load_config(_read_config(args.config))
    if getattr(args, "temperature_k", None) is not None:
        params = replace(params, temperature=args.temperature_k)
    if getattr(args, "g_plus_hz", None) is not None:
        params = replace(params, g_plus=TWO_PI * args.g_plus_hz)
    return params


def _emit(table: Table, args) -> None:
    text = render(table, args.format)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        write_atomic(args.output, text)


def _omega_grid(args) -> np.ndarray:
    return TWO_PI * np.linspace(-args.omega_max_hz, args.omega_max_hz, args.points)


def _point_row(point: rwa_spectrum.NsdPoint) -> dict:
    return {
        "omega_over_2pi_hz": point.omega / TWO_PI,
        "s_a": point.s_a,
        "s_m": point.s_m,
        "s_b": point.s_b,
        "s_total": point.s_total,
        "squeezing_db": point.squeezing_db,
    }


def cmd_spectrum(args) -> int:
    params = _load_params(args)
    if args.optimize_gplus:
        opt = sweep.optimize_gplus(params, "rwa-nsd", 0.0, args.phi)
        params = replace(params, g_plus=opt.g_plus_opt)
    spec = rwa_spectrum.spectrum(params, _omega_grid(args), args.phi)
    _emit(Table("spectrum", params, spec.rows()), args)
    return 0


def cmd_floquet(args) -> int:
    params = _load_params(args)
    rows = []
    for w in _omega_grid(args):
        row = _point_row(floquet.floquet_nsd(params, float(w), args.phi, args.l))
        if args.compare_rwa:
            ref = rwa_spectrum.nsd_components(params, float(w), args.phi)
            row["s_total_rwa"] = ref.s_total
            row["squeezing_db_rwa"] = ref.squeezing_db
        rows.append(row)
    _emit(Table("floquet", params, rows), args)
    return 0


def _axis_values(args) -> tuple[str, np.ndarray]:
    if args.scale == "log":
        return args.axis, np.geomspace(args.start, args.stop, args.num)
    return args.axis, np.linspace(args.start, args.stop, args.num)


def _variance_row(params: SystemParams) -> dict:
    row: dict = {}
    stability = steadystate.is_stable(params)
    if not stability.stable:
        row["stable"] = 0
        return row
    state = steadystate.steady_covariance(params)
    for mv in steadystate.quadrature_variances(state):
        row[f"var_x_{mv.mode}"] = mv.var_x
        row[f"var_y_{mv.mode}"] = mv.var_y
        row[f"squeezing_db_{mv.mode}"] = mv.squeezing_db
    row["stable"] = 1
    return row


def cmd_steadystate(args) -> int:
    params = _load_params(args)
    rows = []
    if args.axis is None:
        rows.append(_variance_row(params))
    else:
        name, values = _axis_values(args)
        for v in values:
            if name == "ratio":
                p = replace(params, g_plus=v * params.g_minus)
            elif name == "temperature_k":
                p = replace(params, temperature=v)
            elif name.endswith("_hz"):
                p = replace(params, **{name[:-3]: TWO_PI * v})
            else:
                raise ParameterError([f"unknown axis {name!r}"])
            rows.append({name: float(v), **_variance_row(p)})
    _emit(Table("steadystate", params, rows), args)
    return 0


def cmd_optimize(args) -> int:
    params = _load_params(args)
    omega = TWO_PI * args.omega_hz
    opt = sweep.optimize_gplus(params, args.objective, omega, args.phi, truncation_l=args.l)
    row = {
        "g_plus_opt_hz": opt.g_plus_opt / TWO_PI,
        "ratio_opt": opt.ratio_opt,
        "objective": opt.value,
        "squeezing_db": opt.squeezing_db,
        "iterations": opt.iterations,
    }
    if args.delta_ratio is not None:
        sens = sweep.sensitivity(params, omega, args.phi, args.delta_ratio, args.objective, opt)
        row["delta_ratio"] = args.delta_ratio
        row["loss_db"] = sens.loss_db
    _emit(Table("optimize", replace(params, g_plus=opt.g_plus_opt), [row]), args)
    return 0


def cmd_sweep(args) -> int:
    doc = json.loads(_read_config(args.config))
    spec = sweep.spec_from_mapping(doc)
    rows = sweep.sweep(spec, args.workers)
    _emit(Table("sweep", spec.base, rows), args)
    return 0


def cmd_calibrate(args) -> int:
    params = _load_params(args)
    sidebands = ("plus", "minus") if args.sideband == "both" else (args.sideband,)
    rows = []
    for sb in sidebands:
        rabi = drive.calibrate_rabi(params, TWO_PI * args.g_target_hz, TWO_PI * args.g0_hz, sb)
        rows.append({
            "sideband": sb,
            "g_target_hz": args.g_target_hz,
            "g0_hz": args.g0_hz,
            "rabi_abs_hz": abs(rabi) / TWO_PI,
            "rabi_phase_rad": math.atan2(rabi.imag, rabi.real),
            "rabi_real_hz": rabi.real / TWO_PI,
            "rabi_imag_hz": rabi.imag / TWO_PI,
        })
    _emit(Table("calibrate", params, rows), args)
    return 0


def cmd_reproduce(args) -> int:
    outdir = Path(args.outdir)
    for table in figures.REPRODUCERS[args.target]():
        path = outdir / f"{table.name}.{args.format}"
        write_atomic(path, render(table, args.format))
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="magnomech",
        description="Output-field squeezing of a two-tone driven cavity magnomechanical system.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, output=True):
        p.add_argument("--config", help="JSON parameter config (default: shipped baseline); "
                                        "'shipped:<name>' selects another shipped config")
        if output:
            p.add_argument("--output", "-o", help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    def overrides(p):
        p.add_argument("--temperature-k", type=float, help="override bath temperature")
        p.add_argument("--g-plus-hz", type=float, help="override G+/2pi")

    p = sub.add_parser("spectrum", help="RWA output NSD versus frequency")
    common(p)
    overrides(p)
    p.add_argument("--phi", type=float, default=math.pi / 2)
    p.add_argument("--omega-max-hz", type=float, default=5e6)
    p.add_argument("--points", type=int, default=401)
    p.add_argument("--optimize-gplus", action="store_true")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("floquet", help="output NSD with counter-rotating terms")
    common(p)
    overrides(p)
    p.add_argument("--l", type=int, default=1, help="harmonic truncation")
    p.add_argument("--phi", type=float, default=math.pi / 2)
    p.add_argument("--omega-max-hz", type=float, default=5e6)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--compare-rwa", action="store_true")
    p.set_defaults(func=cmd_floquet)

    p = sub.add_parser("steadystate", help="stationary quadrature variances")
    common(p)
    overrides(p)
    p.add_argument("--axis", help="swept quantity: ratio, temperature_k or a <param>_hz key")
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--num", type=int, default=101)
    p.add_argument("--scale", choices=("linear", "log"), default="linear")
    p.set_defaults(func=cmd_steadystate)

    p = sub.add_parser("optimize", help="optimize G+ for a given objective")
    common(p)
    p.add_argument("--temperature-k", type=float, help="override bath temperature")
    p.add_argument("--objective", choices=sweep.OBJECTIVES, default="rwa-nsd")
    p.add_argument("--omega-hz", type=float, default=0.0)
    p.add_argument("--phi", type=float, default=math.pi / 2)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--delta-ratio", type=float, help="also report the loss for this ratio error")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("sweep", help="1-D/2-D sweep from a config with an 'axes' section")
    common(p)
    p.add_argument("--workers", type=int, help="worker processes (default: $MAGNOMECH_THREADS or 1)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("calibrate", help="drive Rabi frequency for a target coupling")
    common(p)
    p.add_argument("--g-target-hz", type=float, required=True)
    p.add_argument("--g0-hz", type=float, required=True)
    p.add_argument("--sideband", choices=("plus", "minus", "both"), default="both")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("reproduce", help="write the data tables of a reference figure")
    p.add_argument("target", choices=sorted(figures.REPRODUCERS))
    p.add_argument("--outdir", default=".")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "axis", None) is not None and (args.start is None or args.stop is None):
        parser.error("--axis needs --start and --stop")
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"magnomech: invalid parameters: {exc}", file=sys.stderr)
        return 2
    except (json.JSONDecodeError, KeyError, ValueError, FileNotFoundError) as exc:
        print(f"magnomech: invalid input: {exc}", file=sys.stderr)
        return 2
    except (RuntimeError, OSError, np.linalg.LinAlgError) as exc:
        print(f"magnomech: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
