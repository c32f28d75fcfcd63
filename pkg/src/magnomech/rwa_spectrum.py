"""Analytic output-field noise spectral density under the rotating-wave approximation.

Convention: vacuum (shot) noise is ``1/2`` and squeezing in dB is
``-10 log10(S / (1/2))``, positive below shot noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .params import SystemParams
from .susceptibility import chi_arrays

S_VAC = 0.5


def squeezing_db(s_total):
    """Degree of squeezing in dB relative to the vacuum level ``1/2``."""
    s = np.asarray(s_total, dtype=float)
    if np.any(~(s > 0)):
        raise ValueError("noise spectral density must be > 0")
    out = -10.0 * np.log10(s / S_VAC)
    return out[()] if out.ndim == 0 else out


def reduce_phase(phi: float) -> float:
    """Quadrature angle folded into ``[0, pi)``; the NSD has period pi in phi."""
    return float(np.mod(phi, math.pi))


@dataclass(frozen=True)
class NsdPoint:
    omega: float
    phi: float
    s_a: float
    s_m: float
    s_b: float

    @property
    def s_total(self) -> float:
        return self.s_a + self.s_m + self.s_b

    @property
    def squeezing_db(self) -> float:
        return float(squeezing_db(self.s_total))


def nsd_arrays(kappa_a, kappa_m, gamma_b, g, g_minus, g_plus, n_a, n_m, n_b, omega, phi):
    """Vectorized noise decomposition ``(s_a, s_m, s_b)``; all inputs broadcast."""
    g_minus = np.asarray(g_minus, dtype=float)
    g_plus = np.asarray(g_plus, dtype=float)
    gt2 = g_minus**2 - g_plus**2
    _, chi_b, _, chi_mb, _, chi_a_eff, _, _ = chi_arrays(kappa_a, kappa_m, gamma_b, g, gt2, omega)
    transfer = chi_a_eff * g * chi_mb
    s_a = np.abs(kappa_a * chi_a_eff - 1.0) ** 2 * (n_a + 0.5)
    s_m = kappa_a * kappa_m * np.abs(transfer) ** 2 * (n_m + 0.5)
    mixing = g_minus**2 + g_plus**2 + 2.0 * g_minus * g_plus * np.cos(2.0 * np.asarray(phi))
    s_b = kappa_a * gamma_b * np.abs(transfer * chi_b) ** 2 * mixing * (n_b + 0.5)
    return s_a, s_m, s_b


def _occupations(params: SystemParams):
    occ = params.occupations()
    return occ.n_a, occ.n_m, occ.n_b


def nsd_components(params: SystemParams, omega: float, phi: float) -> NsdPoint:
    """Per-source output NSD at rotating-frame frequency ``omega`` and angle ``phi``."""
    phi = reduce_phase(phi)
    s_a, s_m, s_b = nsd_arrays(params.kappa_a, params.kappa_m, params.gamma_b, params.g,
                               params.g_minus, params.g_plus, *_occupations(params),
                               float(omega), phi)
    return NsdPoint(float(omega), phi, float(s_a), float(s_m), float(s_b))


def zero_freq_arrays(kappa_a, kappa_m, gamma_b, g, g_minus, g_plus, n_a, n_m, n_b):
    """Closed-form ``(s_a, s_m, s_b)`` at ``omega = 0``, ``phi = pi/2`` (broadcasting)."""
    g_minus = np.asarray(g_minus, dtype=float)
    g_plus = np.asarray(g_plus, dtype=float)
    g2 = np.asarray(g, dtype=float) ** 2
    xi = 1.0 / (4.0 * (g_minus**2 - g_plus**2) * kappa_a + 4.0 * g2 * gamma_b
                + kappa_a * gamma_b * kappa_m)
    s_a = (1.0 - 8.0 * g2 * gamma_b * xi) ** 2 * (n_a + 0.5)
    s_m = 16.0 * kappa_a * kappa_m * g2 * gamma_b**2 * xi**2 * (n_m + 0.5)
    s_b = 64.0 * kappa_a * gamma_b * g2 * xi**2 * (g_minus - g_plus) ** 2 * (n_b + 0.5)
    return s_a, s_m, s_b


def nsd_zero_freq(params: SystemParams) -> NsdPoint:
    """Closed form of the NSD at resonance and the optimal angle ``pi/2``."""
    s_a, s_m, s_b = zero_freq_arrays(params.kappa_a, params.kappa_m, params.gamma_b, params.g,
                                     params.g_minus, params.g_plus, *_occupations(params))
    return NsdPoint(0.0, math.pi / 2, float(s_a), float(s_m), float(s_b))


@dataclass(frozen=True)
class NoiseSpectrum:
    params: SystemParams
    points: tuple[NsdPoint, ...]
    argmin: int = field(init=False)

    def __post_init__(self):
        if not self.points:
            raise ValueError("empty spectrum")
        omegas = np.array([p.omega for p in self.points])
        if np.any(np.diff(omegas) <= 0):
            raise ValueError("frequency grid must be strictly increasing")
        totals = [p.s_total for p in self.points]
        object.__setattr__(self, "argmin", int(np.argmin(totals)))

    @property
    def omega(self) -> np.ndarray:
        return np.array([p.omega for p in self.points])

    @property
    def s_total(self) -> np.ndarray:
        return np.array([p.s_total for p in self.points])

    def rows(self) -> list[dict]:
        """Table rows with the documented column names."""
        return [
            {
                "omega_over_2pi_hz": p.omega / (2 * math.pi),
                "s_a": p.s_a,
                "s_m": p.s_m,
                "s_b": p.s_b,
                "s_total": p.s_total,
                "squeezing_db": p.squeezing_db,
            }
            for p in self.points
        ]


def spectrum(params: SystemParams, omega_grid, phi: float) -> NoiseSpectrum:
    """Evaluate the RWA NSD over an increasing frequency grid."""
    grid = np.asarray(omega_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("omega_grid must be a non-empty 1-D array")
    if not np.all(np.isfinite(grid)):
        raise ValueError("omega_grid must be finite")
    phi = reduce_phase(phi)
    s_a, s_m, s_b = nsd_arrays(params.kappa_a, params.kappa_m, params.gamma_b, params.g,
                               params.g_minus, params.g_plus, *_occupations(params), grid, phi)
    points = tuple(NsdPoint(float(w), phi, float(a), float(m), float(b))
                   for w, a, m, b in zip(grid, s_a, s_m, s_b))
    return NoiseSpectrum(params, points)

