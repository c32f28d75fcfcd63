"""Physical parameter set of the two-tone driven cavity magnomechanical system.

All rates and frequencies are stored as angular quantities (rad/s).  Config
documents carry ordinary frequencies in Hz (keys ending in ``_hz``) or, for
lossless round trips, angular values (keys ending in ``_rad_s``).
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields
from typing import Any, Mapping

import numpy as np

# CODATA-2018 exact values
PLANCK_H = 6.62607015e-34
HBAR = PLANCK_H / (2.0 * math.pi)
BOLTZMANN_K = 1.380649e-23

TWO_PI = 2.0 * math.pi

#: ratio max(kappa_a, kappa_m, g, G-, G+) / omega_b below which the RWA is trusted
RWA_RATIO = 0.1

FREQUENCY_FIELDS = (
    "omega_a", "omega_m", "omega_b", "kappa_a", "kappa_m", "gamma_b",
    "g", "g_minus", "g_plus",
)
_POSITIVE = ("omega_a", "omega_m", "omega_b", "kappa_a", "kappa_m", "gamma_b")
_NONNEGATIVE = ("g", "g_minus", "g_plus")
_UNIT_SCALE = {"hz": TWO_PI, "rad_s": 1.0}


class ParameterError(ValueError):
    """Raised when a parameter set violates one or more invariants.

    ``errors`` holds every violation found, not just the first.
    """

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass(frozen=True)
class ThermalOccupations:
    n_a: float
    n_m: float
    n_b: float


@dataclass(frozen=True)
class SystemParams:
    """Validated parameters (angular units, rad/s; temperature in K).

    Construction runs the full validation; use :func:`dataclasses.replace`
    to derive variants.
    """

    omega_a: float
    omega_m: float
    omega_b: float
    kappa_a: float
    kappa_m: float
    gamma_b: float
    g: float
    g_minus: float
    g_plus: float
    temperature: float

    def __post_init__(self):
        errors = _violations(self)
        if errors:
            raise ParameterError(errors)

    @property
    def omega_0(self) -> float:
        return self.omega_a

    @property
    def rwa_valid(self) -> bool:
        fastest = max(self.kappa_a, self.kappa_m, self.g, self.g_minus, self.g_plus)
        # inclusive: the reference point has g = G- = omega_b / 10 exactly
        return fastest <= RWA_RATIO * self.omega_b * (1.0 + 1e-12)

    @property
    def drive_hierarchy_ok(self) -> bool:
        return self.g_minus > self.g_plus

    @property
    def g_tilde_sq(self) -> float:
        """Signed G-^2 - G+^2 (negative in the unstable region)."""
        return self.g_minus**2 - self.g_plus**2

    @property
    def ratio(self) -> float:
        return self.g_plus / self.g_minus if self.g_minus > 0 else math.inf

    def occupations(self) -> ThermalOccupations:
        return ThermalOccupations(
            n_a=float(thermal_occupation(self.omega_a, self.temperature)),
            n_m=float(thermal_occupation(self.omega_m, self.temperature)),
            n_b=float(thermal_occupation(self.omega_b, self.temperature)),
        )

    def as_dict(self) -> dict:
        return asdict(self)


def _violations(p: SystemParams) -> list[str]:
    errors = []
    for f in fields(p):
        value = getattr(p, f.name)
        if isinstance(value, bool) or not isinstance(value, (int, float, np.floating, np.integer)):
            errors.append(f"{f.name} must be a real number, got {value!r}")
        elif not math.isfinite(value):
            errors.append(f"{f.name} must be finite, got {value!r}")
    if errors:
        return errors
    for name in _POSITIVE:
        if getattr(p, name) <= 0:
            errors.append(f"{name} must be > 0, got {getattr(p, name)!r}")
    for name in _NONNEGATIVE:
        if getattr(p, name) < 0:
            errors.append(f"{name} must be >= 0, got {getattr(p, name)!r}")
    if p.temperature < 0:
        errors.append(f"temperature must be >= 0, got {p.temperature!r}")
    if not math.isclose(p.omega_a, p.omega_m, rel_tol=1e-12, abs_tol=0.0):
        errors.append(
            f"resonance condition omega_a == omega_m violated ({p.omega_a!r} != {p.omega_m!r})"
        )
    return errors


def thermal_occupation(omega, temperature):
    """Bose-Einstein occupation ``1 / (exp(hbar*omega / kB*T) - 1)``.

    Works elementwise on arrays.  Returns exactly 0 at ``T = 0``.

    Raises
    ------
    ValueError
        If any ``omega`` is not strictly positive or any temperature is negative.
    """
    omega = np.asarray(omega, dtype=float)
    temperature = np.asarray(temperature, dtype=float)
    if np.any(~(omega > 0)):
        raise ValueError("omega must be > 0")
    if np.any(~(temperature >= 0)):
        raise ValueError("temperature must be >= 0")
    omega, temperature = np.broadcast_arrays(omega, temperature)
    out = np.zeros(omega.shape)
    hot = temperature > 0
    with np.errstate(divide="ignore", over="ignore"):  # subnormal T -> x = inf -> N = 0
        x = HBAR * omega[hot] / (BOLTZMANN_K * temperature[hot])
    # exp(-x) / (1 - exp(-x)) stays finite for any x > 0
    out[hot] = np.exp(-x) / -np.expm1(-x)
    return out[()] if out.ndim == 0 else out


def validate(raw: Mapping[str, Any]) -> SystemParams:
    """Build a :class:`SystemParams` from a mapping of angular-unit values.

    Missing or unknown keys are reported together with invariant violations.
    """
    expected = [f.name for f in fields(SystemParams)]
    errors = [f"missing key {k}" for k in expected if k not in raw]
    errors += [f"unknown key {k}" for k in raw if k not in expected]
    if errors:
        raise ParameterError(errors)
    values = {k: _as_float(raw[k]) for k in expected}
    return SystemParams(**values)


def _as_float(value):
    if isinstance(value, (int, float, np.floating, np.integer)) and not isinstance(value, bool):
        return float(value)
    return value


def _split_key(key: str) -> tuple[str, str]:
    if key == "temperature_k":
        return "temperature", "k"
    for unit in ("rad_s", "hz"):
        if key.endswith("_" + unit):
            return key[: -len(unit) - 1], unit
    stem, _, unit = key.rpartition("_")
    return stem, unit


def params_from_mapping(doc: Mapping[str, Any]) -> SystemParams:
    """Convert a config mapping (unit-tagged keys) into validated params.

    Keys other than parameter keys (for example an ``axes`` section) are
    ignored here; sweep specs read them separately.
    """
    converted: dict[str, Any] = {}
    errors = []
    known = set(FREQUENCY_FIELDS) | {"temperature"}
    for key, value in doc.items():
        if key in ("axes", "sweep"):
            continue
        stem, unit = _split_key(key)
        if stem not in known:
            errors.append(f"unknown key {key}")
            continue
        if stem == "temperature":
            if unit != "k":
                errors.append(f"unknown unit tag {unit!r} in key {key}")
                continue
            scale = 1.0
        else:
            if unit not in _UNIT_SCALE:
                errors.append(f"unknown unit tag {unit!r} in key {key}")
                continue
            scale = _UNIT_SCALE[unit]
        if stem in converted:
            errors.append(f"duplicate key for {stem}")
            continue
        try:
            converted[stem] = float(value) * scale
        except (TypeError, ValueError):
            errors.append(f"{key} is not a number: {value!r}")
    for name in (*FREQUENCY_FIELDS, "temperature"):
        if name not in converted:
            tag = "temperature_k" if name == "temperature" else f"{name}_hz"
            errors.append(f"missing key {name} (expected {tag})")
    if errors:
        raise ParameterError(errors)
    return validate(converted)


def load_config(text: str) -> SystemParams:
    """Parse a JSON config document into :class:`SystemParams`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParameterError([f"config parse failure: {exc}"]) from exc
    if not isinstance(doc, dict):
        raise ParameterError(["config must be a JSON object"])
    return params_from_mapping(doc)


def config_dict(params: SystemParams, unit: str = "rad_s") -> dict[str, float]:
    if unit not in _UNIT_SCALE:
        raise ValueError(f"unit must be one of {sorted(_UNIT_SCALE)}")
    scale = _UNIT_SCALE[unit]
    doc = {f"{name}_{unit}": getattr(params, name) / scale for name in FREQUENCY_FIELDS}
    doc["temperature_k"] = params.temperature
    return doc


def emit_config(params: SystemParams, unit: str = "rad_s") -> str:
    """Serialize params to JSON.

    The default ``rad_s`` tagging round-trips bit-for-bit through
    :func:`load_config`; ``unit="hz"`` is friendlier to read but the
    2*pi rescaling may move the last bit.
    """
    return json.dumps(config_dict(params, unit), indent=2)


def from_hz(**kwargs) -> SystemParams:
    """Convenience constructor taking ``*_hz`` frequencies and ``temperature``."""
    raw = {}
    for key, value in kwargs.items():
        if key == "temperature":
            raw[key] = value
        elif key.endswith("_hz"):
            raw[key[:-3]] = TWO_PI * value
        else:
            raise ParameterError([f"unknown key {key}"])
    return validate(raw)


def baseline(**overrides_hz) -> SystemParams:
    """Operating point of the 100 Hz mechanical-damping reference setup.

    ``g_plus`` defaults to zero; optimize it with
    :func:`magnomech.sweep.optimize_gplus`.  Keyword overrides use the
    ``*_hz`` / ``temperature`` convention of :func:`from_hz`.
    """
    values = dict(
        omega_a_hz=10e9, omega_m_hz=10e9, omega_b_hz=30e6,
        kappa_a_hz=1e6, kappa_m_hz=1e6, gamma_b_hz=100.0,
        g_hz=3e6, g_minus_hz=3e6, g_plus_hz=0.0, temperature=0.01,
    )
    values.update(overrides_hz)
    return from_hz(**values)
