import math
from dataclasses import replace

import numpy as np
import pytest
from scipy.linalg import solve_continuous_lyapunov

from conftest import random_params
from magnomech.figures import low_damping
from magnomech.floquet import harmonic_blocks
from magnomech.params import baseline
from magnomech.steadystate import (CovarianceState, StabilityError, is_stable, lyapunov_residual,
                                   quadrature_model, quadrature_variances, solve_lyapunov,
                                   solve_lyapunov_eig, steady_covariance, symplectic_eigenvalues)
from magnomech.sweep import optimize_gplus

N_B_10MK = 6.457533672265776


def _mode_to_quadrature():
    blk = np.array([[1, 1], [-1j, 1j]]) / math.sqrt(2)
    return np.kron(np.eye(3), blk)


def test_drift_matches_mode_equations(rng):
    # X = (O + O+)/sqrt2, Y = (O - O+)/(i sqrt2) applied to the RWA mode-basis drift
    t = _mode_to_quadrature()
    for _ in range(20):
        p = random_params(rng, stable=False)
        a0 = harmonic_blocks(p, counter_rotating=False).a0
        converted = t @ a0 @ np.linalg.inv(t)
        assert np.abs(converted.imag).max() < 1e-9 * np.abs(a0).max()
        np.testing.assert_allclose(converted.real, quadrature_model(p).a_prime,
                                   atol=1e-9 * np.abs(a0).max())


def test_reference_entries(reference_point):
    a = quadrature_model(reference_point).a_prime
    gm, gp, g = reference_point.g_minus, reference_point.g_plus, reference_point.g
    assert a[3, 4] == -(gm + gp)
    assert a[2, 5] == gm - gp
    assert a[0, 5] == g and a[1, 4] == -g


def test_no_blue_drive_symmetric_couplings():
    a = quadrature_model(baseline(g_plus_hz=0.0)).a_prime
    assert abs(a[2, 5]) == abs(a[3, 4]) == baseline().g_minus


def test_balanced_drive_cancels_x_coupling():
    a = quadrature_model(baseline(g_plus_hz=3e6)).a_prime
    assert a[2, 5] == 0 and a[4, 3] == 0


def test_diffusion_diagonal(reference_point):
    p = reference_point
    d = quadrature_model(p).d_prime
    occ = p.occupations()
    expected = [p.kappa_a * (occ.n_a + .5)] * 2 + [p.gamma_b * (occ.n_b + .5)] * 2 \
        + [p.kappa_m * (occ.n_m + .5)] * 2
    np.testing.assert_array_equal(np.diag(d), expected)
    assert np.count_nonzero(d - np.diag(np.diag(d))) == 0


def test_stability_cases(reference_point):
    assert is_stable(reference_point).stable
    assert not is_stable(baseline(g_plus_hz=3.3e6, gamma_b_hz=10.0)).stable
    bare = baseline(g_hz=0.0, g_minus_hz=0.0, g_plus_hz=0.0)
    res = is_stable(bare)
    assert res.stable and not res.marginal
    assert res.abscissa == pytest.approx(-min(bare.kappa_a, bare.gamma_b, bare.kappa_m) / 2)


def test_unstable_raises():
    with pytest.raises(StabilityError, match="no stationary state"):
        steady_covariance(baseline(g_plus_hz=3.3e6))


def test_marginal_flag():
    # the instability threshold lies above G+ = G-; bisect for it
    lo, hi = 3e6, 6e6
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if is_stable(baseline(g_plus_hz=mid)).stable else (lo, mid)
    res = is_stable(baseline(g_plus_hz=lo))
    assert res.stable and res.marginal
    assert not is_stable(baseline(g_plus_hz=hi)).stable
    assert not is_stable(baseline(g_plus_hz=0.5 * (3e6 + lo))).marginal


@pytest.mark.parametrize("temperature", [0.0, 0.01, 1.0])
def test_uncoupled_covariance(temperature):
    p = baseline(g_hz=0.0, g_minus_hz=0.0, g_plus_hz=0.0, temperature=temperature)
    occ = p.occupations()
    v = steady_covariance(p).v
    expected = np.diag([occ.n_a + .5] * 2 + [occ.n_b + .5] * 2 + [occ.n_m + .5] * 2)
    np.testing.assert_allclose(v, expected, rtol=1e-12, atol=1e-15)


def test_thermal_mechanics_db():
    p = baseline(g_hz=0.0, g_minus_hz=0.0, g_plus_hz=0.0)
    modes = {mv.mode: mv for mv in quadrature_variances(steady_covariance(p))}
    assert modes["b"].var_x == pytest.approx(N_B_10MK + 0.5, rel=1e-12)
    assert modes["b"].squeezing_db == pytest.approx(-11.434853, abs=1e-6)
    assert modes["a"].squeezing_db == pytest.approx(0.0, abs=1e-12)


def test_vacuum_state_zero_db():
    state = CovarianceState(0.5 * np.eye(6), True, 0.0)
    assert all(mv.squeezing_db == 0.0 for mv in quadrature_variances(state))


def test_against_scipy(rng):
    for _ in range(100):
        model = quadrature_model(random_params(rng))
        ref = solve_continuous_lyapunov(model.a_prime, -model.d_prime)
        got = solve_lyapunov(model.a_prime, model.d_prime)
        np.testing.assert_allclose(got, ref, rtol=1e-7, atol=1e-9 * np.abs(ref).max())


def test_eigenbasis_cross_check(rng):
    for _ in range(100):
        model = quadrature_model(random_params(rng))
        a = solve_lyapunov(model.a_prime, model.d_prime)
        b = solve_lyapunov_eig(model.a_prime, model.d_prime)
        assert np.abs(a - b).max() <= 1e-8 * np.abs(a).max()


def test_residual_symmetry_psd(rng):
    for _ in range(100):
        p = random_params(rng)
        model = quadrature_model(p)
        state = steady_covariance(p)
        v = state.v
        assert lyapunov_residual(model.a_prime, v, model.d_prime) < \
            1e-10 * np.linalg.norm(model.d_prime)
        assert np.abs(v - v.T).max() <= 1e-12 * np.abs(v).max()
        assert np.linalg.eigvalsh(v).min() > 0
        assert np.all(np.diag(v) >= 0)


def test_physicality(rng):
    for _ in range(100):
        state = steady_covariance(random_params(rng))
        assert symplectic_eigenvalues(state.v).min() >= 0.5 - 1e-9
        assert np.all(state.var_x * state.var_y >= 0.25 - 1e-9)


def test_symplectic_vacuum_and_thermal():
    np.testing.assert_allclose(symplectic_eigenvalues(0.5 * np.eye(6)), [0.5] * 3)
    v = np.diag([1.5, 1.5, 0.5, 0.5, 3.0, 3.0])
    np.testing.assert_allclose(symplectic_eigenvalues(v), [0.5, 1.5, 3.0])
    squeezed = np.diag([0.1, 2.5, 0.5, 0.5, 0.5, 0.5])
    np.testing.assert_allclose(symplectic_eigenvalues(squeezed), [0.5, 0.5, 0.5])


def test_mechanical_squeezing_at_optimum():
    base = low_damping(0.01)
    opt = optimize_gplus(base, "mech-variance")
    state = steady_covariance(replace(base, g_plus=opt.g_plus_opt))
    assert state.var_x[1] < 0.5
    assert quadrature_variances(state)[1].squeezing_db > 0


def test_optimal_ratio_trends():
    mech = [optimize_gplus(low_damping(t), "mech-variance").ratio_opt for t in (0.01, 0.1, 1.0)]
    cav = [optimize_gplus(low_damping(t), "cavity-variance").ratio_opt for t in (0.01, 0.1, 1.0)]
    assert mech[0] >= mech[1] >= mech[2]
    assert cav[0] <= cav[1] <= cav[2]
