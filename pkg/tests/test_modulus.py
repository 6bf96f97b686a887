import math

import numpy as np
import pytest

from core.config import reset_runtime_config
from core.errors import ParameterOutOfRange
from core.analytic.modulus import (
    circle_profile,
    cos_pi_rho_check,
    log_convexity_check,
    max_log_modulus,
    min_log_many,
    min_log_modulus,
    tilde_min_log,
    tilde_scan,
)


def test_cos_sqrt_extremes_use_the_real_axis(cos_sqrt):
    profile = circle_profile(cos_sqrt, 100.0)
    assert profile.sample_count == 2
    assert profile.argmin_theta == 0.0
    assert profile.argmax_theta == pytest.approx(math.pi)
    assert profile.max_log == pytest.approx(math.log(math.cosh(10.0)), abs=1e-7)
    assert profile.min_log == pytest.approx(math.log(abs(math.cos(10.0))), abs=1e-7)


def test_shortcut_agrees_with_full_search(cos_sqrt):
    fast = circle_profile(cos_sqrt, 50.0)
    full = circle_profile(cos_sqrt, 50.0, use_symmetry_shortcut=False)
    assert full.sample_count > 2
    assert full.min_log == pytest.approx(fast.min_log, abs=1e-8)
    assert full.max_log == pytest.approx(fast.max_log, abs=1e-8)


def test_log_radius_beyond_float_range(z_squared):
    assert max_log_modulus(z_squared, log_r=1000.0) == pytest.approx(2000.0)
    assert min_log_modulus(z_squared, log_r=1000.0) == pytest.approx(2000.0)


def test_zero_on_the_circle(one_minus_z):
    profile = circle_profile(one_minus_z, 1.0)
    assert profile.hits_zero
    assert profile.min_log == -math.inf


def test_square_substituted_profile_delegates(genus_power):
    profile = circle_profile(genus_power, 20.0)
    source = circle_profile(genus_power.square_of, 400.0)
    assert profile.min_log == pytest.approx(source.min_log, abs=1e-10)
    assert profile.argmin_theta == pytest.approx(0.5 * source.argmin_theta)


def test_tilde_min_tracks_the_running_maximum(cos_sqrt):
    # max of log|cos sqrt s| over s <= 1000 is 0, attained at s = (k pi)^2
    value = tilde_min_log(cos_sqrt, 1000.0)
    assert -1e-3 <= value <= 1e-9


def test_tilde_scan_is_monotone(cos_sqrt):
    scan = tilde_scan(cos_sqrt, math.log(1e4))
    assert np.all(np.diff(scan.running_max) >= 0.0)
    assert np.all(scan.running_max >= scan.min_logs)
    assert scan.log_radii[-1] == pytest.approx(math.log(1e4))


def test_grid_ratio_is_bounded(cos_sqrt):
    with pytest.raises(ParameterOutOfRange):
        tilde_scan(cos_sqrt, math.log(100.0), grid_ratio=1.5)


def test_convexity_of_the_maximum_modulus(cos_sqrt):
    report = log_convexity_check(cos_sqrt, 100.0, c=2.0)
    assert report["holds"]
    assert report["gap"] > 0


def test_cos_pi_rho_consequence_for_a_power(z_squared):
    report = cos_pi_rho_check(z_squared, 100.0, eps=0.5)
    assert report["holds"]
    assert report["best_min_log"] > report["max_log_r_eps"]


def test_thread_count_does_not_change_results(genus_power, monkeypatch):
    log_radii = np.linspace(0.0, math.log(500.0), 40)
    serial = min_log_many(genus_power, log_radii, n_samples=128)
    monkeypatch.setenv("MINMODLAB_THREADS", "4")
    reset_runtime_config()
    parallel = min_log_many(genus_power, log_radii, n_samples=128)
    np.testing.assert_array_equal(serial, parallel)
