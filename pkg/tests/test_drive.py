"""Driven-oscillator factorization: pulses, response integrals, and the
analytic propagator against direct integration."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from gcslib import drive, fock, states

import oracles

# frozen from trapezoid-with-Richardson routes in tests/oracles.py
# (gaussian amplitude 0.8, center 2.5, width 0.5 on [0, 5], omega 1, t = 5)
ZETA_GAUSS = 0.3744486750051228 + 0.5012550179415771j
BETA_GAUSS = 0.12036689230889547

GAUSS_ARGS = (0.8, 2.5, 0.5, 0.0, 5.0)


def test_pulse_piece_semantics():
    pulse = drive.DrivePulse(
        "two", 0.0, 2.0,
        ((0.0, 1.0, lambda t: np.full_like(t, 1.0)), (1.0, 2.0, lambda t: np.full_like(t, 5.0))),
    )
    assert pulse(0.0) == 1.0
    assert pulse(1.0) == 5.0  # boundary belongs to the right piece
    assert pulse(2.0) == 5.0  # last piece closed on the right
    assert pulse(2.5) == 0.0 and pulse(-0.1) == 0.0
    assert_allclose(pulse(np.array([0.5, 1.5])), [1.0, 5.0])


def test_pulse_validation():
    with pytest.raises(ValueError):
        drive.DrivePulse("bad", 1.0, 1.0, ((0.0, 1.0, lambda t: t),))
    with pytest.raises(ValueError):
        drive.DrivePulse("bad", 0.0, 1.0, ())


def test_factory_validation():
    with pytest.raises(ValueError):
        drive.gaussian_pulse(1.0, 0.5, 0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        drive.rectangular_pulse(1.0, 0.8, 0.2, 0.0, 1.0)
    with pytest.raises(ValueError):
        drive.rectangular_pulse(1.0, -0.5, 0.2, 0.0, 1.0)


def test_rectangular_pulse_values():
    pulse = drive.rectangular_pulse(2.0, 1.0, 3.0, 0.0, 4.0)
    assert_allclose(pulse(np.array([0.5, 1.0, 2.0, 3.5])), [0.0, 2.0, 2.0, 0.0])


def test_sine_burst_values():
    pulse = drive.sine_burst_pulse(1.5, 2.0, 1.0, 4.0, phase=0.3)
    ts = np.linspace(1.0, 4.0, 7)
    assert_allclose(pulse(ts), 1.5 * np.sin(2.0 * (ts - 1.0) + 0.3), atol=1e-15)


def test_table_pulse_interpolates():
    times = np.linspace(0.0, 2.0, 9)
    values = 3.0 * times - 1.0
    pulse = drive.table_pulse(times, values)
    probe = np.linspace(0.0, 2.0, 23)
    assert_allclose(pulse(probe), 3.0 * probe - 1.0, atol=1e-14)


def test_table_pulse_validation():
    with pytest.raises(ValueError):
        drive.table_pulse([0.0, 1.0, 1.5], [0.0, 1.0, 2.0])  # non-uniform
    with pytest.raises(ValueError):
        drive.table_pulse([0.0, -1.0], [0.0, 1.0])
    with pytest.raises(ValueError):
        drive.table_pulse([0.0], [1.0])


def test_zeta_zero_force():
    pulse = drive.gaussian_pulse(0.0, 1.0, 0.5, 0.0, 3.0)
    assert drive.zeta(pulse, 1.0, 3.0) == 0.0


def test_zeta_full_period_constant_force():
    omega = 1.3
    period = 2.0 * math.pi / omega
    pulse = drive.rectangular_pulse(0.9, 0.0, period, 0.0, period)
    assert abs(drive.zeta(pulse, omega, period)) < 1e-10


def test_zeta_constant_force_closed_form():
    force, omega, horizon = 0.7, 1.3, 2.0
    pulse = drive.rectangular_pulse(force, 0.0, horizon, 0.0, horizon)
    expected = -force * (np.exp(1j * omega * horizon) - 1.0) / (
        omega * math.sqrt(2.0 * omega)
    )
    assert abs(drive.zeta(pulse, omega, horizon) - expected) < 1e-12


def test_zeta_frozen_gaussian():
    pulse = drive.gaussian_pulse(*GAUSS_ARGS)
    assert abs(drive.zeta(pulse, 1.0, 5.0) - ZETA_GAUSS) < 1e-12


def test_zeta_linear_in_force():
    small = drive.gaussian_pulse(0.4, 2.5, 0.5, 0.0, 5.0)
    large = drive.gaussian_pulse(1.2, 2.5, 0.5, 0.0, 5.0)
    z_small = drive.zeta(small, 1.0, 4.0)
    z_large = drive.zeta(large, 1.0, 4.0)
    assert abs(z_large - 3.0 * z_small) < 1e-12


def test_zeta_time_bounds():
    pulse = drive.gaussian_pulse(*GAUSS_ARGS)
    with pytest.raises(ValueError):
        drive.zeta(pulse, 1.0, 5.5)
    with pytest.raises(ValueError):
        drive.zeta(pulse, 1.0, -0.5)


@pytest.mark.filterwarnings("ignore::UserWarning")
@pytest.mark.filterwarnings("ignore:.*maximum number of subdivisions.*")
def test_zeta_reports_quadrature_failure():
    wild = drive.DrivePulse(
        "wild", 0.0, 1.0, ((0.0, 1.0, lambda s: np.sin(1.0 / (s + 1e-9))),)
    )
    with pytest.raises(drive.QuadratureError):
        drive.zeta(wild, 1.0, 1.0)


def test_beta_vanishes_at_start():
    pulse = drive.gaussian_pulse(*GAUSS_ARGS)
    assert drive.beta_phase(pulse, 1.0, 0.0) == 0.0


def test_beta_frozen_gaussian():
    pulse = drive.gaussian_pulse(*GAUSS_ARGS)
    assert abs(drive.beta_phase(pulse, 1.0, 5.0) - BETA_GAUSS) < 1e-9


def test_beta_constant_force_closed_form():
    force, omega, horizon = 0.7, 1.3, 2.0
    pulse = drive.rectangular_pulse(force, 0.0, horizon, 0.0, horizon)
    expected = force**2 / (2.0 * omega**2) * (horizon - math.sin(omega * horizon) / omega)
    assert abs(drive.beta_phase(pulse, omega, horizon) - expected) < 1e-10


def test_response_integrals_match_trapezoid_oracles():
    pulse = drive.sine_burst_pulse(0.6, 2.0, 0.0, 3.0)
    omega = 1.4
    z_ref = oracles.zeta_trapz(pulse, omega, 3.0)
    b_ref = oracles.beta_trapz(pulse, omega, 3.0)
    assert abs(drive.zeta(pulse, omega, 3.0) - z_ref) < 1e-9
    assert abs(drive.beta_phase(pulse, omega, 3.0) - b_ref) < 1e-9


def test_time_development_unitary():
    pulse = drive.gaussian_pulse(0.5, 1.0, 0.3, 0.0, 2.0)
    op = drive.time_development(pulse, 1.0, 40)
    gram = op.conj().T @ op
    assert np.max(np.abs(gram[:20, :20] - np.eye(20))) < 1e-10


def test_zero_force_gives_free_phases():
    pulse = drive.gaussian_pulse(0.0, 1.0, 0.5, 0.0, 2.0)
    op = drive.time_development(pulse, 1.5, 16)
    k = np.arange(16)
    expected = np.diag(np.exp(-1j * (k + 0.5) * 1.5 * 2.0))
    assert np.max(np.abs(op - expected)) < 1e-12


def test_driving_ground_state_builds_poisson_statistics():
    pulse = drive.gaussian_pulse(0.6, 1.5, 0.4, 0.0, 3.0)
    vec, label = drive.drive_number_state(0, pulse, 1.0, 40)
    z1 = drive.zeta(pulse, 1.0, 3.0)
    assert label.n == 0 and abs(label.alpha - z1) < 1e-12
    _, _, num = fock.ladder_matrices(40)
    assert_allclose(fock.expectation(num, vec).real, abs(z1) ** 2, atol=1e-9)
    probs = np.abs(vec.coeffs) ** 2
    for k in (0, 1, 3):
        assert_allclose(probs[k], states.photon_probability(0, z1, k), atol=1e-10)


def test_driven_excited_state_statistics():
    pulse = drive.gaussian_pulse(0.5, 2.0, 0.4, 0.0, 4.0)
    vec, label = drive.drive_number_state(2, pulse, 1.0, 50)
    probs = np.abs(vec.coeffs) ** 2
    for k in (0, 1, 2, 4, 7):
        assert_allclose(probs[k], states.photon_probability(2, label.alpha, k), atol=1e-8)


def test_driven_state_matches_direct_integration():
    pulse = drive.gaussian_pulse(0.5, 2.0, 0.4, 0.0, 4.0)
    vec, label = drive.drive_number_state(1, pulse, 1.0, 60)
    ham = drive.drive_hamiltonian(pulse, 1.0, 60)
    direct = fock.schrodinger_evolve(ham, fock.number_state(1, 60), 0.0, 4.0, 600)
    fid = abs(np.vdot(direct.coeffs, vec.coeffs))
    assert fid > 1.0 - 1e-9


def test_driven_state_phase_is_beta():
    pulse = drive.gaussian_pulse(0.5, 2.0, 0.4, 0.0, 4.0)
    vec, label = drive.drive_number_state(1, pulse, 1.0, 60)
    evolved = states.evolved_expansion(label, 4.0, 59)
    amp = np.vdot(evolved, vec.coeffs)
    assert abs(abs(amp) - 1.0) < 1e-10
    beta = drive.beta_phase(pulse, 1.0, 4.0)
    assert abs(amp - np.exp(1j * beta)) < 1e-9


def test_weak_pulse_limit_recovers_free_evolution():
    free = np.exp(-1j * (np.arange(30) + 0.5) * 1.0 * 3.0)
    devs = []
    for amp in (1e-3, 1e-6):
        pulse = drive.gaussian_pulse(amp, 1.5, 0.4, 0.0, 3.0)
        vec, _ = drive.drive_number_state(1, pulse, 1.0, 30)
        devs.append(np.max(np.abs(vec.coeffs - free[1] * np.eye(30)[1])))
    assert devs[0] < 1e-2
    assert devs[1] < 1e-5
    assert devs[1] < devs[0] * 1e-2


def test_drive_rejects_cramped_level():
    pulse = drive.gaussian_pulse(0.5, 1.0, 0.3, 0.0, 2.0)
    with pytest.raises(fock.TruncationError):
        drive.drive_number_state(10, pulse, 1.0, 20)
    with pytest.raises(ValueError):
        drive.drive_number_state(-1, pulse, 1.0, 20)
