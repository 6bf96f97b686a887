import math

import numpy as np
import pytest

from core.errors import BadAngle, InvalidInstance, ParameterOutOfRange
from core.analytic.lemmas import (
    finite_difference_error,
    log_primary_derivative,
    log_primary_on_ray,
    prodL_sequence,
    ray_profile,
    sign_conditions_hold,
    theta_candidates,
    tight_instance,
)


# --- Product lemma ---


def test_tight_instance_stays_above_two():
    instance = tight_instance(20)
    assert instance.delta_values[0] == pytest.approx(0.25)
    assert instance.delta_values[3] == pytest.approx(4.0 ** -4)
    assert instance.min_L == pytest.approx(2.0656, abs=1e-3)
    assert instance.min_L >= instance.lower_bound
    assert instance.passed
    assert len(instance.L_sequence) == 21


def test_empty_subsequence_keeps_L_at_three():
    instance = tight_instance(0)
    assert instance.L_sequence == [3.0, 3.0]
    assert instance.lower_bound == 3.0


def test_L_resets_off_the_subsequence():
    instance = prodL_sequence([1600.0, 1600.0, 25600.0], [0, 2])
    assert instance.L_sequence == pytest.approx([3.0, 2.25, 3.0, 2.8125])
    assert instance.min_L == pytest.approx(2.25)


@pytest.mark.parametrize("log_r, indices", [
    ([100.0], []),
    ([1600.0, 1500.0], []),
    ([1600.0, 1600.0 * 15], [0, 1]),
    ([1600.0, 30000.0], [1, 0]),
    ([1600.0], [3]),
    ([], []),
])
def test_invalid_instances(log_r, indices):
    with pytest.raises(InvalidInstance):
        prodL_sequence(log_r, indices)


def test_negative_instance_length():
    with pytest.raises(InvalidInstance):
        tight_instance(-1)


# --- Primary-factor lemma ---


def test_theta_candidates():
    assert theta_candidates(2) == pytest.approx([math.pi / 2, 3 * math.pi / 2])
    assert theta_candidates(3) == pytest.approx([math.pi / 2, 3 * math.pi / 2])
    assert theta_candidates(4) == pytest.approx([3 * math.pi / 10, 7 * math.pi / 10,
                                                 13 * math.pi / 10, 17 * math.pi / 10])
    for m in (2, 3, 4, 5, 6):
        assert all(sign_conditions_hold(m, t, 1e-9) for t in theta_candidates(m))


def test_theta_candidates_need_m_two():
    with pytest.raises(ParameterOutOfRange):
        theta_candidates(1)


def test_primary_factor_on_the_imaginary_axis():
    # |E(iT, 2)| = sqrt(1 + T^2) e^{-T^2 / 2}
    T = np.array([-3.0, -0.2, 0.0, 0.3, 2.0, 10.0])
    expected = 0.5 * np.log1p(T * T) - 0.5 * T * T
    assert log_primary_on_ray(2, math.pi / 2, T) == pytest.approx(expected, abs=1e-12)
    assert float(log_primary_on_ray(2, math.pi / 2, 2.0)) == pytest.approx(-1.19528, abs=1e-5)
    assert float(log_primary_derivative(2, math.pi / 2, 2.0)) == pytest.approx(-1.6)


def test_ray_profile_passes_for_m_two():
    profile = ray_profile(2, math.pi / 2)
    assert profile.nonpositive
    assert profile.sign_pattern_ok
    assert profile.passed
    assert profile.power == 2
    assert 0.45 < profile.fitted_C < 0.5
    assert 5.0 < profile.fitted_T0 < 15.0
    assert finite_difference_error(profile) < 1e-5


def test_ray_profile_odd_m_uses_power_m_minus_one():
    profile = ray_profile(3, math.pi / 2, np.linspace(-50.0, 50.0, 1001))
    assert profile.power == 2
    assert profile.passed


def test_ray_profile_rejects_bad_angles():
    with pytest.raises(BadAngle):
        ray_profile(2, 0.3)
    with pytest.raises(BadAngle):
        ray_profile(1, math.pi / 2)
