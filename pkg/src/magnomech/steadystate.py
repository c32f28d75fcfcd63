"""Stationary Gaussian state of the RWA dynamics in quadrature space.

Quadratures are ``X = (O + O+)/sqrt(2)`` and ``Y = (O - O+)/(i sqrt(2))``,
ordered ``(X_a, Y_a, X_b, Y_b, X_m, Y_m)``; the vacuum variance is 1/2.
The covariance matrix solves ``A' V + V A'^T = -D'``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .params import SystemParams

MODES = ("a", "b", "m")
MARGINAL_FRACTION = 1e-6


class StabilityError(RuntimeError):
    """No stationary state: the drift matrix has an eigenvalue with Re >= 0."""


@dataclass(frozen=True)
class QuadratureModel:
    a_prime: np.ndarray
    d_prime: np.ndarray


def quadrature_model(params: SystemParams) -> QuadratureModel:
    ka, gb, km = params.kappa_a, params.gamma_b, params.kappa_m
    g, gm, gp = params.g, params.g_minus, params.g_plus
    a = np.diag([-ka / 2, -ka / 2, -gb / 2, -gb / 2, -km / 2, -km / 2])
    a[0, 5] = g
    a[1, 4] = -g
    a[2, 5] = gm - gp
    a[3, 4] = -(gm + gp)
    a[4, 1] = g
    a[4, 3] = gm - gp
    a[5, 0] = -g
    a[5, 2] = -(gm + gp)
    occ = params.occupations()
    d = np.diag([
        ka * (occ.n_a + 0.5), ka * (occ.n_a + 0.5),
        gb * (occ.n_b + 0.5), gb * (occ.n_b + 0.5),
        km * (occ.n_m + 0.5), km * (occ.n_m + 0.5),
    ])
    return QuadratureModel(a, d)


class Stability(NamedTuple):
    stable: bool
    abscissa: float
    marginal: bool


def is_stable(params: SystemParams) -> Stability:
    """Spectral abscissa test of the quadrature drift matrix.

    ``marginal`` flags a stable system whose abscissa lies within
    ``1e-6 * kappa_m`` of zero, where the Lyapunov solve degrades.
    """
    abscissa = float(np.max(np.linalg.eigvals(quadrature_model(params).a_prime).real))
    stable = abscissa < 0
    marginal = stable and abscissa > -MARGINAL_FRACTION * params.kappa_m
    return Stability(stable, abscissa, marginal)


def solve_lyapunov(a: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Solve ``a V + V a^T = -d`` through the Kronecker-sum linear system."""
    n = a.shape[0]
    eye = np.eye(n)
    # row-major vec: vec(a V) = (a kron I) vec V, vec(V a^T) = (I kron a) vec V
    op = np.kron(a, eye) + np.kron(eye, a)
    v = np.linalg.solve(op, -d.reshape(-1)).reshape(n, n)
    return 0.5 * (v + v.T)


def solve_lyapunov_eig(a: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Independent solve in the eigenbasis of ``a`` (assumes ``a`` diagonalizable)."""
    lam, p = np.linalg.eig(a)
    p_inv = np.linalg.inv(p)
    d_t = p_inv @ d @ p_inv.T
    v_t = -d_t / (lam[:, None] + lam[None, :])
    v = (p @ v_t @ p.T).real
    return 0.5 * (v + v.T)


def lyapunov_residual(a: np.ndarray, v: np.ndarray, d: np.ndarray) -> float:
    return float(np.linalg.norm(a @ v + v @ a.T + d))


@dataclass(frozen=True)
class CovarianceState:
    v: np.ndarray
    stable: bool
    residual: float

    @property
    def var_x(self) -> np.ndarray:
        return np.diag(self.v)[0::2].copy()

    @property
    def var_y(self) -> np.ndarray:
        return np.diag(self.v)[1::2].copy()


def steady_covariance(params: SystemParams) -> CovarianceState:
    """Stationary covariance matrix of the RWA quadrature dynamics.

    Raises
    ------
    StabilityError
        If the drift matrix is not Hurwitz.
    """
    stability = is_stable(params)
    if not stability.stable:
        raise StabilityError(
            f"no stationary state (spectral abscissa {stability.abscissa:.3e} rad/s)"
        )
    model = quadrature_model(params)
    v = solve_lyapunov(model.a_prime, model.d_prime)
    residual = lyapunov_residual(model.a_prime, v, model.d_prime)
    if residual > 1e-10 * np.linalg.norm(model.d_prime):
        warnings.warn(f"ill-conditioned Lyapunov solve, residual {residual:.3e}", RuntimeWarning)
    return CovarianceState(v, True, residual)


class ModeVariance(NamedTuple):
    mode: str
    var_x: float
    var_y: float
    squeezing_db: float


def quadrature_variances(state: CovarianceState) -> list[ModeVariance]:
    """Per-mode quadrature variances and squeezing of the better quadrature."""
    out = []
    for mode, vx, vy in zip(MODES, state.var_x, state.var_y):
        db = -10.0 * np.log10(min(vx, vy) / 0.5)
        out.append(ModeVariance(mode, float(vx), float(vy), float(db)))
    return out


def symplectic_eigenvalues(v: np.ndarray) -> np.ndarray:
    """Symplectic spectrum of a real covariance matrix in (X, Y) pair ordering."""
    n = v.shape[0] // 2
    omega = np.kron(np.eye(n), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    nu = np.abs(np.linalg.eigvals(1j * omega @ v))
    return np.sort(nu)[::2]
