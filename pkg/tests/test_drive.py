import numpy as np
import pytest

from conftest import random_params
from magnomech.drive import DriveSpec, calibrate_rabi, mean_amplitude, response_denominator
from magnomech.params import TWO_PI, baseline

# mpmath, 40 digits: mean-field amplitudes at the reference point for Omega = 2pi * 1e12 rad/s
M_MINUS_REF = complex(-33660.20767828836, -572.3336854882410)
M_PLUS_REF = complex(33660.20767828836, -572.3336854882410)


def _drive(p, rabi_plus=0.0, rabi_minus=0.0, g0=TWO_PI * 10.0):
    return DriveSpec.on_sidebands(p, rabi_plus, rabi_minus, g0)


def test_uncoupled_plus_amplitude():
    p = baseline(g_hz=0.0)
    rabi = TWO_PI * 1e12
    m = mean_amplitude(p, _drive(p, rabi_plus=rabi), "plus")
    assert m == pytest.approx(rabi / (p.omega_b + 0.5j * p.kappa_m), rel=1e-13)


def test_zero_drive_gives_zero_amplitude():
    p = baseline()
    assert mean_amplitude(p, _drive(p), "minus") == 0


def test_reference_amplitudes():
    p = baseline()
    rabi = TWO_PI * 1e12
    d = _drive(p, rabi, rabi)
    assert mean_amplitude(p, d, "minus") == pytest.approx(M_MINUS_REF, rel=1e-12)
    assert mean_amplitude(p, d, "plus") == pytest.approx(M_PLUS_REF, rel=1e-12)


def test_calibrate_zero_target():
    assert calibrate_rabi(baseline(), 0.0, 1.0, "plus") == 0


def test_calibrate_uncoupled_minus_closed_form():
    p = baseline(g_hz=0.0)
    g_t, g0 = TWO_PI * 3e6, TWO_PI * 10.0
    expected = (g_t / g0) * (-p.omega_b + 0.5j * p.kappa_m)
    assert calibrate_rabi(p, g_t, g0, "minus") == pytest.approx(expected, rel=1e-15)


def test_calibrate_round_trip(rng):
    for _ in range(200):
        p = random_params(rng, stable=False)
        g0 = TWO_PI * 10 ** rng.uniform(-1, 2)
        for sideband in ("plus", "minus"):
            target = TWO_PI * 10 ** rng.uniform(4, 7)
            rabi = calibrate_rabi(p, target, g0, sideband)
            d = _drive(p, rabi, rabi, g0)
            m = mean_amplitude(p, d, sideband)
            assert abs(m.imag) <= 1e-12 * abs(m)
            assert g0 * m.real == pytest.approx(target, rel=1e-12)


def test_amplitude_decreases_with_magnon_damping():
    p = baseline()
    rabi = TWO_PI * 1e12
    prev = np.inf
    for kappa_m_hz in np.geomspace(1e4, 1e8, 40):
        q = baseline(kappa_m_hz=kappa_m_hz)
        amp = abs(mean_amplitude(q, _drive(q, rabi, rabi), "plus"))
        assert amp < prev
        prev = amp
    assert p.kappa_m > 0


def test_errors():
    p = baseline()
    with pytest.raises(ValueError):
        calibrate_rabi(p, -1.0, 1.0, "plus")
    with pytest.raises(ValueError):
        calibrate_rabi(p, 1.0, 0.0, "plus")
    with pytest.raises(ValueError):
        DriveSpec(1.0, 0.0, 0j, 0j, g0=0.0)
    with pytest.raises(ValueError):
        response_denominator(p, "centre")
    off = DriveSpec(p.omega_m + 2 * p.omega_b, p.omega_m - p.omega_b, 1j, 1j, 1.0)
    with pytest.raises(ValueError, match="2\\*omega_b"):
        mean_amplitude(p, off, "plus")
