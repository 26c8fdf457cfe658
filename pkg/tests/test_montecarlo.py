import numpy as np
import pytest

from nulljam.channel import RandomStream, draw_channels
from nulljam.montecarlo import (BLOCK, empirical_max_rate, estimate_outage,
                                estimate_rate_outage, eve_sinr_samples, proportion)
from nulljam.optimizer import critical_chi, optimal_input_covariance, optimal_rate

from conftest import reference_system, random_psd, random_system, random_unitary


def test_zero_threshold_always_outage():
    est = estimate_outage(reference_system(3), 0.0, 5000, RandomStream(1))
    assert est.mean == 1.0 and est.std_error == 0.0


def test_no_helpers_exponential():
    cfg = reference_system(0, rho0=3.16228)
    est = estimate_outage(cfg, 3.16228, 10 ** 6, RandomStream(2))
    assert abs(est.mean - np.exp(-1)) <= 3 * est.std_error


def test_reference_config_at_critical():
    cfg = reference_system(5)
    est = estimate_outage(cfg, critical_chi(cfg), 10 ** 6, RandomStream(3))
    assert abs(est.mean - 0.01) <= 3 * est.std_error


def test_std_error_formula():
    est = proportion(250, 1000)
    assert est.std_error == pytest.approx(np.sqrt(0.25 * 0.75 / 1000))


def test_reproducible_and_partition_invariant():
    cfg = random_system(np.random.default_rng(4))
    trials = 3 * BLOCK + 123
    a = estimate_outage(cfg, 1.0, trials, RandomStream(5), workers=1)
    b = estimate_outage(cfg, 1.0, trials, RandomStream(5), workers=1)
    c = estimate_outage(cfg, 1.0, trials, RandomStream(5), workers=4)
    assert a == b == c
    s1 = eve_sinr_samples(np.eye(cfg.n_source_antennas) / cfg.n_source_antennas,
                          cfg, trials, RandomStream(6), workers=1)
    s4 = eve_sinr_samples(np.eye(cfg.n_source_antennas) / cfg.n_source_antennas,
                          cfg, trials, RandomStream(6), workers=4)
    assert np.array_equal(s1, s4)


def test_rate_outage_zero_rate_in_unit_interval():
    cfg = reference_system(2)
    h0 = np.array([0.3, 0.1, 0.2j])
    est = estimate_rate_outage(optimal_input_covariance(h0), cfg, h0, 0.0, 20_000, RandomStream(7))
    assert 0.0 < est.mean < 1.0


def test_rate_outage_above_capacity_is_certain():
    cfg = reference_system(2)
    h0 = np.array([1.0, 0.5, 0.0])
    q = optimal_input_covariance(h0)
    cap = np.log2(1 + cfg.source_snr * 1.25)
    est = estimate_rate_outage(q, cfg, h0, cap + 0.1, 1000, RandomStream(8))
    assert est.mean == 1.0


def test_rate_outage_at_optimum_matches_eps():
    cfg = reference_system(5)
    h0 = draw_channels(cfg, RandomStream(9)).h0
    sol = optimal_rate(cfg, h0)
    est = estimate_rate_outage(optimal_input_covariance(h0), cfg, h0, sol.rate, 10 ** 6,
                               RandomStream(9, 1))
    assert abs(est.mean - cfg.epsilon) <= 3 * est.std_error


def test_max_rate_vacuous_constraint():
    cfg = reference_system(2)
    h0 = np.array([1.0, 1.0, 0.0])
    q = optimal_input_covariance(h0)
    upper = np.log2(1 + cfg.source_snr * 2)
    assert empirical_max_rate(q, cfg, h0, 1.0, 2000, RandomStream(10)) == pytest.approx(upper)


def test_max_rate_impossible_constraint():
    cfg = reference_system(2)
    h0 = np.array([0.2, 0.0, 0.0])
    q = optimal_input_covariance(h0)
    assert empirical_max_rate(q, cfg, h0, 1e-9, 20_000, RandomStream(11)) == 0.0


def test_rotation_invariance_of_eve_gain(rng):
    # g0^H Q g0 and g0^H (V Q V^H) g0 share a distribution for isotropic g0
    cfg = reference_system(0)
    q = random_psd(rng, 3)
    q /= np.trace(q).real
    v = random_unitary(rng, 3)
    a = eve_sinr_samples(q, cfg, 10 ** 5, RandomStream(12))
    b = eve_sinr_samples(v @ q @ v.conj().T, cfg, 10 ** 5, RandomStream(13))
    assert abs(a.mean() / b.mean() - 1) < 0.02
    assert abs(np.mean(a ** 2) / np.mean(b ** 2) - 1) < 0.02
