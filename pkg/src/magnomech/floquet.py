"""Linear response with the counter-rotating terms kept (harmonic expansion).

The fluctuation drift matrix is periodic, ``A(t) = A0 + A1 e^{2i wb t} + A-1 e^{-2i wb t}``,
in the basis ``(da, da+, db, db+, dm, dm+)``.  In frequency space each
component ``u[w]`` couples to ``u[w +- 2 wb]``.  Keeping sidebands
``s = -(l+1) .. l+1`` gives a block-tridiagonal system; block row ``s`` reads

    -i w u_s = (A0 + 2 i s wb) u_s + A1 u_{s+1} + A-1 u_{s-1} + n_s .

Blocks are ordered from the highest sideband down, so ``A1`` sits below
the diagonal and ``A-1`` above it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .params import SystemParams
from .rwa_spectrum import NsdPoint, reduce_phase

# channel order of u and of the noise vector n
A, A_DAG, B, B_DAG, M, M_DAG = range(6)


class FloquetError(RuntimeError):
    """The frequency-space system could not be solved."""


@dataclass(frozen=True)
class HarmonicBlocks:
    a0: np.ndarray
    a1: np.ndarray
    a_minus1: np.ndarray

    def drift(self, t: float, omega_b: float) -> np.ndarray:
        """Time-dependent drift matrix rebuilt from its harmonics."""
        phase = np.exp(2j * omega_b * t)
        return self.a0 + self.a1 * phase + self.a_minus1 / phase


def harmonic_blocks(params: SystemParams, counter_rotating: bool = True) -> HarmonicBlocks:
    """Static, ``e^{+2i wb t}`` and ``e^{-2i wb t}`` parts of the drift matrix.

    With ``counter_rotating=False`` the oscillating parts are zeroed, which
    recovers the RWA dynamics.
    """
    ka, gb, km = params.kappa_a, params.gamma_b, params.kappa_m
    g, gm, gp = params.g, params.g_minus, params.g_plus
    a0 = np.diag([-ka / 2, -ka / 2, -gb / 2, -gb / 2, -km / 2, -km / 2]).astype(complex)
    a0[A, M] = -1j * g
    a0[A_DAG, M_DAG] = 1j * g
    a0[B, M], a0[B, M_DAG] = -1j * gm, -1j * gp
    a0[B_DAG, M], a0[B_DAG, M_DAG] = 1j * gp, 1j * gm
    a0[M, A] = -1j * g
    a0[M, B], a0[M, B_DAG] = -1j * gm, -1j * gp
    a0[M_DAG, A_DAG] = 1j * g
    a0[M_DAG, B], a0[M_DAG, B_DAG] = 1j * gp, 1j * gm

    a1 = np.zeros((6, 6), dtype=complex)
    am1 = np.zeros((6, 6), dtype=complex)
    if counter_rotating:
        a1[B, M], a1[B, M_DAG] = -1j * gp, -1j * gm
        a1[M, B_DAG] = -1j * gm
        a1[M_DAG, B_DAG] = 1j * gp

        am1[B_DAG, M], am1[B_DAG, M_DAG] = 1j * gm, 1j * gp
        am1[M, B] = -1j * gp
        am1[M_DAG, B] = 1j * gm
    return HarmonicBlocks(a0, a1, am1)


def conjugation_swap(matrix: np.ndarray) -> np.ndarray:
    """Apply the operator conjugation ``dO <-> dO+`` to a drift block.

    For a drift block ``X`` multiplying ``e^{i k t}``, the conjugate equations
    give ``P conj(X) P`` multiplying ``e^{-i k t}``, with ``P`` the pairwise swap.
    """
    perm = np.array([A_DAG, A, B_DAG, B, M_DAG, M])
    return np.conj(matrix)[np.ix_(perm, perm)]


@dataclass(frozen=True)
class FloquetSystem:
    """Truncated frequency-space generator at one probe frequency."""

    truncation_l: int
    probe_omega: float
    sidebands: tuple[int, ...]
    diag: tuple[np.ndarray, ...]
    lower: np.ndarray
    upper: np.ndarray

    @property
    def dimension(self) -> int:
        return 6 * len(self.sidebands)

    @property
    def block_matrix(self) -> np.ndarray:
        """Dense generator ``M`` of ``-i w U = M U + N``."""
        n = len(self.sidebands)
        out = np.zeros((6 * n, 6 * n), dtype=complex)
        for i in range(n):
            out[6 * i:6 * i + 6, 6 * i:6 * i + 6] = self.diag[i]
            if i > 0:
                out[6 * i:6 * i + 6, 6 * (i - 1):6 * i] = self.lower
            if i < n - 1:
                out[6 * i:6 * i + 6, 6 * (i + 1):6 * (i + 2)] = self.upper
        return out

    def system_matrix(self) -> np.ndarray:
        """``K = -i w I - M`` so that ``K U = N``."""
        return -1j * self.probe_omega * np.eye(self.dimension) - self.block_matrix

    def index(self, sideband: int) -> int:
        return self.sidebands.index(sideband)


def assemble(params: SystemParams, probe_omega: float, truncation_l: int,
             blocks: HarmonicBlocks | None = None) -> FloquetSystem:
    if truncation_l < 0 or int(truncation_l) != truncation_l:
        raise ValueError("truncation_l must be a non-negative integer")
    truncation_l = int(truncation_l)
    if blocks is None:
        blocks = harmonic_blocks(params)
    top = truncation_l + 1
    sidebands = tuple(range(top, -top - 1, -1))
    eye = np.eye(6)
    diag = tuple(blocks.a0 + 2j * s * params.omega_b * eye for s in sidebands)
    return FloquetSystem(truncation_l, float(probe_omega), sidebands, diag,
                         blocks.a1, blocks.a_minus1)


def block_tridiag_solve(lower, diag, upper, rhs):
    """Solve a block-tridiagonal system by block forward elimination.

    Row ``i`` of the system is ``lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]``
    (``lower[0]`` and ``upper[-1]`` are ignored).  ``rhs`` has shape
    ``(n, b, k)``; the result has the same shape.
    """
    n = len(diag)
    c_prime = [None] * n
    d_prime = [None] * n
    try:
        c_prime[0] = np.linalg.solve(diag[0], upper[0]) if n > 1 else None
        d_prime[0] = np.linalg.solve(diag[0], rhs[0])
        for i in range(1, n):
            pivot = diag[i] - lower[i] @ c_prime[i - 1]
            if i < n - 1:
                c_prime[i] = np.linalg.solve(pivot, upper[i])
            d_prime[i] = np.linalg.solve(pivot, rhs[i] - lower[i] @ d_prime[i - 1])
    except np.linalg.LinAlgError as exc:
        raise FloquetError(f"singular block pivot: {exc}") from exc
    x = np.empty_like(np.asarray(d_prime))
    x[-1] = d_prime[-1]
    for i in range(n - 2, -1, -1):
        x[i] = d_prime[i] - c_prime[i] @ x[i + 1]
    return x


def transfer_rows(system: FloquetSystem, channels=(A, A_DAG), method: str = "block") -> np.ndarray:
    """Rows of ``K^{-1}`` belonging to ``channels`` of the central (s = 0) block.

    Returns an array of shape ``(len(channels), n_sidebands, 6)``: entry
    ``[c, i, j]`` is the weight of noise channel ``j`` at sideband
    ``system.sidebands[i]`` in the response of channel ``c`` at the probe
    frequency.
    """
    n = len(system.sidebands)
    centre = system.index(0)
    rows = [6 * centre + c for c in channels]
    if method == "dense":
        kmat = system.system_matrix()
        unit = np.zeros((6 * n, len(rows)), dtype=complex)
        unit[rows, range(len(rows))] = 1.0
        try:
            sol = np.linalg.solve(kmat.T, unit)
        except np.linalg.LinAlgError as exc:
            raise FloquetError(f"singular frequency-space system: {exc}") from exc
        return sol.T.reshape(len(rows), n, 6)
    if method != "block":
        raise ValueError("method must be 'block' or 'dense'")
    # rows of K^{-1} are columns of K^{-T}; K^T is block-tridiagonal with swapped,
    # transposed off-diagonal blocks
    shift = -1j * system.probe_omega * np.eye(6)
    diag_t = [(shift - d).T for d in system.diag]
    lower_t = [(-system.upper).T] * n
    upper_t = [(-system.lower).T] * n
    rhs = np.zeros((n, 6, len(rows)), dtype=complex)
    for k, c in enumerate(channels):
        rhs[centre, c, k] = 1.0
    sol = block_tridiag_solve(lower_t, diag_t, upper_t, rhs)
    return np.moveaxis(sol, 2, 0)


def _quadrature_weights(params: SystemParams, omega: float, phi: float, truncation_l: int,
                        blocks: HarmonicBlocks, method: str) -> dict[int, np.ndarray]:
    """Output-quadrature weights on the bath operators, keyed by sideband.

    The output quadrature at ``omega`` is
    ``(e^{-i phi} a_out[omega] + e^{i phi} (a_out^+)[omega]) / sqrt(2)`` with
    ``a_out = sqrt(kappa_a) da - a_in``.  Weights multiply the bare input
    operators (``a_in``, ``a_in^+``, ``b_in``, ...), not the scaled noise vector.
    """
    system = assemble(params, omega, truncation_l, blocks)
    rows = transfer_rows(system, (A, A_DAG), method)
    rates = np.sqrt(np.array([params.kappa_a, params.kappa_a, params.gamma_b,
                              params.gamma_b, params.kappa_m, params.kappa_m]))
    quad = (np.exp(-1j * phi) * rows[0] + np.exp(1j * phi) * rows[1]) / math.sqrt(2.0)
    quad = math.sqrt(params.kappa_a) * quad * rates
    centre = system.index(0)
    quad[centre, A] -= np.exp(-1j * phi) / math.sqrt(2.0)
    quad[centre, A_DAG] -= np.exp(1j * phi) / math.sqrt(2.0)
    return dict(zip(system.sidebands, quad))


def _contract(p: dict[int, np.ndarray], q: dict[int, np.ndarray], occupations) -> np.ndarray:
    """Symmetrized correlator of the quadratures at ``omega`` (p) and ``-omega`` (q).

    Input noise is delta-correlated, so sideband ``k`` of the ``omega`` solve
    pairs only with sideband ``-k`` of the ``-omega`` solve.  Returns complex
    contributions per bath (cavity, mechanics, magnon).
    """
    out = np.zeros(3, dtype=complex)
    for k, wk in p.items():
        wq = q.get(-k)
        if wq is None:
            continue
        for mode, n_th in enumerate(occupations):
            ann, cre = 2 * mode, 2 * mode + 1
            forward = wk[ann] * wq[cre] * (n_th + 1) + wk[cre] * wq[ann] * n_th
            backward = wq[ann] * wk[cre] * (n_th + 1) + wq[cre] * wk[ann] * n_th
            out[mode] += 0.5 * (forward + backward)
    return out


def floquet_components(params: SystemParams, omega: float, phi: float, truncation_l: int,
                       counter_rotating: bool = True, method: str = "block") -> np.ndarray:
    """Complex ``(s_a, s_b, s_m)`` before the imaginary residue is discarded."""
    blocks = harmonic_blocks(params, counter_rotating)
    occ = params.occupations()
    p = _quadrature_weights(params, omega, phi, truncation_l, blocks, method)
    q = _quadrature_weights(params, -omega, phi, truncation_l, blocks, method)
    return _contract(p, q, (occ.n_a, occ.n_b, occ.n_m))


def floquet_nsd(params: SystemParams, omega: float, phi: float, truncation_l: int = 1,
                counter_rotating: bool = True, method: str = "block") -> NsdPoint:
    """Output NSD from the truncated harmonic expansion."""
    phi = reduce_phase(phi)
    s_a, s_b, s_m = floquet_components(params, omega, phi, truncation_l,
                                       counter_rotating, method)
    total = s_a + s_b + s_m
    if abs(total.imag) > 1e-8 * max(abs(total.real), 1e-300):
        raise FloquetError(f"NSD has a non-negligible imaginary part: {total}")
    return NsdPoint(float(omega), phi, float(s_a.real), float(s_m.real), float(s_b.real))


class ConvergenceResult(NamedTuple):
    point: NsdPoint
    l_used: int
    converged: bool


def converge(params: SystemParams, omega: float, phi: float, rel_tol: float = 1e-3,
             l_max: int = 6) -> ConvergenceResult:
    """Raise the truncation until successive NSD values agree to ``rel_tol``.

    The RWA value (no sidebands coupled) serves as the level before ``l = 0``,
    so a system with no counter-rotating influence converges at ``l = 0``.
    """
    if not rel_tol > 0:
        raise ValueError("rel_tol must be > 0")
    if l_max < 1:
        raise ValueError("l_max must be >= 1")
    previous = floquet_nsd(params, omega, phi, 0, counter_rotating=False).s_total
    point = None
    for l in range(l_max + 1):
        point = floquet_nsd(params, omega, phi, l)
        if abs(point.s_total - previous) <= rel_tol * point.s_total:
            return ConvergenceResult(point, l, True)
        previous = point.s_total
    return ConvergenceResult(point, l_max, False)
