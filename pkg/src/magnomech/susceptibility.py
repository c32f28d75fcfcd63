"""Natural, composite and effective susceptibilities of the RWA model.

Frequencies are rotating-frame angular frequencies.  ``G~^2 = G-^2 - G+^2``
is carried as a signed real so the formulas stay evaluable past the
stability boundary; stability is judged in :mod:`magnomech.steadystate`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import SystemParams


def natural_chi(kappa, omega):
    """``1 / (kappa/2 - i*omega)``, elementwise."""
    return 1.0 / (0.5 * np.asarray(kappa) - 1j * np.asarray(omega))


def chi_arrays(kappa_a, kappa_m, gamma_b, g, g_tilde_sq, omega):
    """Broadcasting kernel behind :func:`chi_set`.

    Returns ``(chi_a, chi_b, chi_m, chi_mb, chi_ma, chi_a_eff, chi_b_eff, chi_m_eff)``.
    """
    chi_a = natural_chi(kappa_a, omega)
    chi_b = natural_chi(gamma_b, omega)
    chi_m = natural_chi(kappa_m, omega)
    g2 = np.asarray(g) ** 2
    chi_mb = 1.0 / (1.0 / chi_m + g_tilde_sq * chi_b)
    chi_ma = 1.0 / (1.0 / chi_m + g2 * chi_a)
    chi_a_eff = 1.0 / (1.0 / chi_a + g2 * chi_mb)
    chi_b_eff = 1.0 / (1.0 / chi_b + g_tilde_sq * chi_ma)
    chi_m_eff = 1.0 / (1.0 / chi_m + g2 * chi_a + g_tilde_sq * chi_b)
    return chi_a, chi_b, chi_m, chi_mb, chi_ma, chi_a_eff, chi_b_eff, chi_m_eff


@dataclass(frozen=True)
class ChiSet:
    """Susceptibilities (units of s) at a single frequency ``omega``."""

    omega: float
    chi_a: complex
    chi_b: complex
    chi_m: complex
    chi_mb: complex
    chi_ma: complex
    chi_a_eff: complex
    chi_b_eff: complex
    chi_m_eff: complex
    g_tilde_sq: float

    @property
    def g_tilde(self) -> float:
        """``sqrt(G-^2 - G+^2)``; NaN when ``G+ > G-``."""
        return float(np.sqrt(self.g_tilde_sq)) if self.g_tilde_sq >= 0 else float("nan")


def chi_set(params: SystemParams, omega: float) -> ChiSet:
    values = chi_arrays(params.kappa_a, params.kappa_m, params.gamma_b,
                        params.g, params.g_tilde_sq, float(omega))
    return ChiSet(float(omega), *(complex(v) for v in values), params.g_tilde_sq)
