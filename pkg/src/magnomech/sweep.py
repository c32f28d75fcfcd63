"""Optimization of the blue-sideband coupling G+ and parameter sweeps.

Objectives are quantities to *minimize*:

``rwa-nsd``          analytic output NSD at (omega, phi)
``floquet-nsd``      output NSD with counter-rotating terms (truncation ``l``)
``mech-variance``    stationary variance of the mechanical X quadrature
``cavity-variance``  stationary variance of the cavity Y quadrature
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from itertools import product
from typing import Any, Mapping, NamedTuple, Sequence

import numpy as np

from . import floquet, rwa_spectrum, steadystate
from .params import (FREQUENCY_FIELDS, ParameterError, SystemParams, TWO_PI,
                     params_from_mapping)

OBJECTIVES = ("rwa-nsd", "floquet-nsd", "mech-variance", "cavity-variance")
STABILITY_EPSILON = 1e-6
COARSE_POINTS = 1000
RATIO_XTOL = 1e-12
INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class OptimizationError(RuntimeError):
    """An objective evaluation failed; ``g_plus`` records where."""

    def __init__(self, message: str, g_plus: float):
        self.g_plus = g_plus
        super().__init__(f"{message} (at g_plus = {g_plus!r} rad/s)")


def default_workers() -> int:
    value = os.environ.get("MAGNOMECH_THREADS", "")
    try:
        return max(1, int(value))
    except ValueError:
        return 1


def _rwa_objective(params: SystemParams, omega: float, phi: float):
    # occupations do not depend on G+; compute them once per optimization
    occ = params.occupations()
    phi = rwa_spectrum.reduce_phase(phi)
    fixed = (params.kappa_a, params.kappa_m, params.gamma_b, params.g, params.g_minus)

    def fun(g_plus):
        s_a, s_m, s_b = rwa_spectrum.nsd_arrays(*fixed, g_plus, occ.n_a, occ.n_m, occ.n_b,
                                                omega, phi)
        return s_a + s_m + s_b

    return fun


def evaluate_objective(params: SystemParams, objective: str, g_plus, omega: float = 0.0,
                       phi: float = math.pi / 2, truncation_l: int = 1) -> np.ndarray:
    """Objective values for each ``g_plus`` (rad/s), other parameters fixed."""
    g_plus = np.atleast_1d(np.asarray(g_plus, dtype=float))
    if objective == "rwa-nsd":
        return _rwa_objective(params, omega, phi)(g_plus)
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}; choose from {OBJECTIVES}")
    out = np.empty(g_plus.shape)
    for i, gp in enumerate(g_plus):
        try:
            p = replace(params, g_plus=float(gp))
            if objective == "floquet-nsd":
                out[i] = floquet.floquet_nsd(p, omega, phi, truncation_l).s_total
            else:
                v = steadystate.steady_covariance(p).v
                out[i] = v[2, 2] if objective == "mech-variance" else v[1, 1]
        except (floquet.FloquetError, steadystate.StabilityError, ParameterError) as exc:
            raise OptimizationError(str(exc), float(gp)) from exc
    return out


def coarse_ratios(points: int = COARSE_POINTS, epsilon: float = STABILITY_EPSILON) -> np.ndarray:
    """Ratio grid on ``[0, 1 - epsilon]``: half uniform, half log-spaced toward 1.

    Optima of the output squeezing sit within ~1e-4 of the stability
    boundary, which a uniform grid alone cannot resolve.
    """
    half = points // 2
    uniform = np.linspace(0.0, 1.0 - epsilon, points - half)
    edge = 1.0 - np.geomspace(1.0, epsilon, half + 1)[1:]
    return np.unique(np.concatenate([uniform, edge]))


def golden_section(fun, lo: float, hi: float, xtol: float):
    """Minimize a scalar function on ``[lo, hi]``; returns ``(x, f(x), iterations)``."""
    c = hi - INV_GOLDEN * (hi - lo)
    d = lo + INV_GOLDEN * (hi - lo)
    fc, fd = fun(c), fun(d)
    iterations = 0
    while hi - lo > xtol:
        iterations += 1
        if fc <= fd:
            hi, d, fd = d, c, fc
            c = hi - INV_GOLDEN * (hi - lo)
            fc = fun(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + INV_GOLDEN * (hi - lo)
            fd = fun(d)
    return (c, fc, iterations) if fc <= fd else (d, fd, iterations)


@dataclass(frozen=True)
class Optimum:
    g_plus_opt: float
    ratio_opt: float
    value: float
    iterations: int

    @property
    def squeezing_db(self) -> float:
        return -10.0 * math.log10(self.value / rwa_spectrum.S_VAC)


def optimize_gplus(params: SystemParams, objective: str = "rwa-nsd", omega: float = 0.0,
                   phi: float = math.pi / 2, *, epsilon: float = STABILITY_EPSILON,
                   coarse_points: int = COARSE_POINTS, xtol: float = RATIO_XTOL,
                   truncation_l: int = 1) -> Optimum:
    """Minimize ``objective`` over ``G+ in [0, G-(1 - epsilon)]`` with ``G-`` fixed.

    A coarse ratio grid locates the basin, golden-section search refines it
    between the neighbouring grid points.  Deterministic for fixed inputs.
    """
    if not params.g_minus > 0:
        raise ValueError("g_minus must be > 0 to optimize G+")
    gm = params.g_minus
    ratios = coarse_ratios(coarse_points, epsilon)
    if objective == "rwa-nsd":
        rwa = _rwa_objective(params, omega, phi)
        batch = lambda g_plus: rwa(np.atleast_1d(g_plus))
    else:
        batch = lambda g_plus: evaluate_objective(params, objective, g_plus, omega, phi,
                                                  truncation_l)
    values = batch(ratios * gm)
    i = int(np.argmin(values))
    lo = ratios[max(i - 1, 0)]
    hi = ratios[min(i + 1, len(ratios) - 1)]

    def fun(r):
        return float(batch(r * gm)[0])

    r_best, f_best, iterations = golden_section(fun, lo, hi, xtol)
    if not f_best <= values[i]:
        r_best, f_best = float(ratios[i]), float(values[i])
    return Optimum(float(r_best * gm), float(r_best), float(f_best), iterations)


class Sensitivity(NamedTuple):
    loss_db: float
    optimum: Optimum
    db_low: float
    db_high: float


def sensitivity(params: SystemParams, omega: float = 0.0, phi: float = math.pi / 2,
                delta_ratio: float = 0.0015, objective: str = "rwa-nsd",
                optimum: Optimum | None = None) -> Sensitivity:
    """Worst-case squeezing loss (dB) for a relative error ``delta_ratio`` in G+/G-.

    A perturbed point without a stationary state counts as an infinite loss.
    """
    if optimum is None:
        optimum = optimize_gplus(params, objective, omega, phi)
    dbs = []
    for sign in (-1.0, 1.0):
        p = replace(params, g_plus=optimum.ratio_opt * (1.0 + sign * delta_ratio) * params.g_minus)
        if objective in ("rwa-nsd", "floquet-nsd") and not steadystate.is_stable(p).stable:
            dbs.append(-math.inf)
            continue
        value = float(evaluate_objective(p, objective, p.g_plus, omega, phi)[0])
        dbs.append(-10.0 * math.log10(value / rwa_spectrum.S_VAC) if value > 0 else -math.inf)
    loss = max(0.0, optimum.squeezing_db - min(dbs))
    return Sensitivity(loss, optimum, dbs[0], dbs[1])


@dataclass(frozen=True)
class Axis:
    """A swept parameter; ``values`` in internal units (rad/s or K)."""

    name: str
    values: tuple[float, ...]


@dataclass(frozen=True)
class SweepSpec:
    base: SystemParams
    axes: tuple[Axis, ...]
    objective: str = "rwa-nsd"
    omega: float = 0.0
    phi: float = math.pi / 2
    optimize: bool = True
    truncation_l: int = 1
    names: tuple[str, ...] = field(init=False)

    def __post_init__(self):
        allowed = {f.name for f in fields(SystemParams)}
        errors = []
        if not 1 <= len(self.axes) <= 2:
            errors.append("a sweep takes one or two axes")
        for axis in self.axes:
            if axis.name not in allowed:
                errors.append(f"axis {axis.name!r} is not a SystemParams field")
            if not axis.values:
                errors.append(f"axis {axis.name!r} has an empty grid")
            elif not all(math.isfinite(v) for v in axis.values):
                errors.append(f"axis {axis.name!r} has non-finite values")
        if self.objective not in OBJECTIVES:
            errors.append(f"unknown objective {self.objective!r}")
        if errors:
            raise ParameterError(errors)
        object.__setattr__(self, "names", tuple(a.name for a in self.axes))


def _column(name: str) -> tuple[str, float]:
    if name in FREQUENCY_FIELDS:
        return f"{name}_hz", TWO_PI
    return f"{name}_k", 1.0


def _sweep_point(spec: SweepSpec, values: tuple[float, ...]) -> dict[str, Any]:
    row: dict[str, Any] = {}
    for name, v in zip(spec.names, values):
        col, scale = _column(name)
        row[col] = v / scale
    row.update(objective=math.nan, squeezing_db=math.nan, g_plus_opt_hz=math.nan, error="")
    try:
        p = replace(spec.base, **dict(zip(spec.names, values)))
        if spec.optimize:
            opt = optimize_gplus(p, spec.objective, spec.omega, spec.phi,
                                 truncation_l=spec.truncation_l)
            value, gp = opt.value, opt.g_plus_opt
        else:
            value = float(evaluate_objective(p, spec.objective, p.g_plus, spec.omega,
                                             spec.phi, spec.truncation_l)[0])
            gp = p.g_plus
        row["objective"] = value
        row["g_plus_opt_hz"] = gp / TWO_PI
        if value > 0:
            row["squeezing_db"] = -10.0 * math.log10(value / rwa_spectrum.S_VAC)
    except (ParameterError, OptimizationError, ValueError) as exc:
        row["error"] = str(exc)
    return row


def _sweep_chunk(args):
    spec, chunk = args
    return [_sweep_point(spec, values) for values in chunk]


def sweep(spec: SweepSpec, workers: int | None = None) -> list[dict[str, Any]]:
    """Evaluate the objective over the axis grid, rows in grid (row-major) order.

    Per-point failures are recorded in the ``error`` column and do not stop
    the sweep.
    """
    grid = list(product(*(axis.values for axis in spec.axes)))
    workers = default_workers() if workers is None else max(1, workers)
    if workers == 1 or len(grid) < 2 * workers:
        return _sweep_chunk((spec, grid))
    size = math.ceil(len(grid) / (4 * workers))
    chunks = [(spec, grid[i:i + size]) for i in range(0, len(grid), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_sweep_chunk, chunks))
    return [row for part in parts for row in part]


def axis_from_mapping(doc: Mapping[str, Any]) -> Axis:
    """Axis from a config entry.

    Either ``{"name": "g_minus_hz", "values": [...]}`` or
    ``{"name": "gamma_b_hz", "start": 10, "stop": 1e7, "num": 61, "scale": "log"}``.
    The unit tag in ``name`` follows the parameter-config convention.
    """
    name = doc.get("name")
    if not isinstance(name, str):
        raise ParameterError(["axis entry needs a string 'name'"])
    if name == "temperature_k":
        field_name, scale = "temperature", 1.0
    elif name.endswith("_hz"):
        field_name, scale = name[:-3], TWO_PI
    elif name.endswith("_rad_s"):
        field_name, scale = name[:-6], 1.0
    else:
        raise ParameterError([f"axis {name!r}: unknown unit tag"])
    if "values" in doc:
        raw = [float(v) for v in doc["values"]]
    else:
        try:
            start, stop, num = float(doc["start"]), float(doc["stop"]), int(doc["num"])
        except KeyError as exc:
            raise ParameterError([f"axis {name!r}: missing key {exc.args[0]}"]) from None
        kind = doc.get("scale", "linear")
        if kind == "log":
            raw = list(np.geomspace(start, stop, num))
        elif kind == "linear":
            raw = list(np.linspace(start, stop, num))
        else:
            raise ParameterError([f"axis {name!r}: unknown scale {kind!r}"])
    return Axis(field_name, tuple(float(v) * scale for v in raw))


def spec_from_mapping(doc: Mapping[str, Any]) -> SweepSpec:
    """Sweep spec from a parameter config document with an ``axes`` section."""
    base = params_from_mapping(doc)
    axes = doc.get("axes")
    if not isinstance(axes, Sequence) or isinstance(axes, (str, bytes)):
        raise ParameterError(["sweep config needs an 'axes' list"])
    options = dict(doc.get("sweep", {}))
    return SweepSpec(
        base=base,
        axes=tuple(axis_from_mapping(a) for a in axes),
        objective=options.get("objective", "rwa-nsd"),
        omega=TWO_PI * float(options.get("omega_hz", 0.0)),
        phi=float(options.get("phi", math.pi / 2)),
        optimize=bool(options.get("optimize_gplus", True)),
        truncation_l=int(options.get("truncation_l", 1)),
    )
