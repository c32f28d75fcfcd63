"""Classical mean-field layer: drive Rabi frequencies to magnon amplitudes.

The two drive tones sit on the mechanical sidebands of the magnon,
``omega_pm = omega_m +- omega_b``.  The effective magnomechanical couplings
are ``G_pm = G0 * m_pm``; the phases of the drives are chosen so that the
``m_pm`` are real and positive.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .params import SystemParams

Sideband = Literal["plus", "minus"]


@dataclass(frozen=True)
class DriveSpec:
    """Two-tone drive.  ``rabi_*`` are complex angular rates (rad/s)."""

    omega_plus: float
    omega_minus: float
    rabi_plus: complex
    rabi_minus: complex
    g0: float

    def __post_init__(self):
        if not self.g0 > 0:
            raise ValueError(f"g0 must be > 0, got {self.g0!r}")

    @classmethod
    def on_sidebands(cls, params: SystemParams, rabi_plus: complex, rabi_minus: complex,
                     g0: float) -> DriveSpec:
        return cls(
            omega_plus=params.omega_m + params.omega_b,
            omega_minus=params.omega_m - params.omega_b,
            rabi_plus=complex(rabi_plus),
            rabi_minus=complex(rabi_minus),
            g0=g0,
        )

    def check_against(self, params: SystemParams, rel_tol: float = 1e-12) -> None:
        """Raise ``ValueError`` unless the tones sit on the mechanical sidebands."""
        scale = params.omega_m
        if abs(self.omega_plus - self.omega_minus - 2 * params.omega_b) > rel_tol * scale:
            raise ValueError("drive tones must be separated by 2*omega_b")
        if abs(0.5 * (self.omega_plus + self.omega_minus) - params.omega_m) > rel_tol * scale:
            raise ValueError("drive tones must be centred on omega_m")


def _detuning(params: SystemParams, sideband: Sideband, drive: DriveSpec | None = None) -> float:
    if sideband not in ("plus", "minus"):
        raise ValueError(f"sideband must be 'plus' or 'minus', got {sideband!r}")
    if drive is not None:
        tone = drive.omega_plus if sideband == "plus" else drive.omega_minus
        return tone - params.omega_m
    return params.omega_b if sideband == "plus" else -params.omega_b


def response_denominator(params: SystemParams, sideband: Sideband,
                         drive: DriveSpec | None = None) -> complex:
    """Denominator ``D`` of ``m = Omega / D`` including cavity back-action."""
    delta_m = _detuning(params, sideband, drive)
    # omega_a == omega_m, so the cavity sees the same detuning
    delta_a = delta_m + (params.omega_m - params.omega_a)
    return (delta_m + 0.5j * params.kappa_m
            - params.g**2 / (delta_a + 0.5j * params.kappa_a))


def mean_amplitude(params: SystemParams, drive: DriveSpec, sideband: Sideband) -> complex:
    """Mean magnon amplitude at the ``sideband`` drive tone."""
    drive.check_against(params)
    rabi = drive.rabi_plus if sideband == "plus" else drive.rabi_minus
    return rabi / response_denominator(params, sideband, drive)


def calibrate_rabi(params: SystemParams, g_target: float, g0: float,
                   sideband: Sideband) -> complex:
    """Rabi frequency giving a real, positive effective coupling ``g_target``.

    Inverts the mean-amplitude relation: ``Omega = (g_target / g0) * D``.
    """
    if not g_target >= 0:
        raise ValueError(f"g_target must be >= 0, got {g_target!r}")
    if not g0 > 0:
        raise ValueError(f"g0 must be > 0, got {g0!r}")
    return (g_target / g0) * response_denominator(params, sideband)
