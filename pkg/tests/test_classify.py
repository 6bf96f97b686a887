import math

import numpy as np
import pytest

from core.errors import DegenerateGrowth, NoCandidates, ParameterOutOfRange
from core.families import family_by_name
from core.analytic.classify import (
    characteristic_T,
    compute_genus,
    counting_N,
    counting_n,
    decay_candidates,
    decay_ray_scan,
    defect_zero,
    estimate_order,
)
from core.analytic.hadamard import square_substitute
from core.analytic.modulus import min_log_modulus
from core.models.functions import EntireFunctionSpec, PowerLawZeros, RealPolynomial, ZeroSequence


def test_order_of_cos_sqrt(cos_sqrt):
    growth = estimate_order(cos_sqrt)
    assert 0.45 <= growth.order_estimate <= 0.55


def test_order_of_hardy_three_quarters():
    growth = estimate_order(family_by_name("hardy", sigma=4.0 / 3.0), 1e2, 1e6)
    assert 0.70 <= growth.order_estimate <= 0.80


def test_order_doubles_under_square_substitution(hardy2):
    growth = estimate_order(square_substitute(hardy2), 1e2, 1e5)
    assert 0.95 <= growth.order_estimate <= 1.1


def test_order_needs_three_decades(cos_sqrt):
    with pytest.raises(ParameterOutOfRange):
        estimate_order(cos_sqrt, 10.0, 1000.0 * 0.99)


def test_polynomial_growth_is_degenerate(z_squared):
    with pytest.raises(DegenerateGrowth):
        estimate_order(z_squared)


def test_genus(cos_sqrt, z_cos_sqrt, genus_power):
    assert compute_genus(cos_sqrt).genus == 0
    assert compute_genus(z_cos_sqrt).genus == 0
    report = compute_genus(genus_power)
    assert report.genus == 2
    assert report.minimal_factor_index == 2


def test_genus_ignores_an_oversized_factor_index():
    spec = EntireFunctionSpec(zeros=ZeroSequence(PowerLawZeros(1.0, 2.0)), factor_index=3)
    report = compute_genus(spec)
    assert report.factor_index == 3
    assert report.genus == 0


def test_genus_counts_the_exponent_degree():
    spec = EntireFunctionSpec(exponent_poly=RealPolynomial((0.0, 0.0, -1.0)),
                              zeros=ZeroSequence(PowerLawZeros(1.0, 2.0)))
    assert compute_genus(spec).genus == 2


def test_counting_functions_of_cos_sqrt(cos_sqrt):
    zeros = [((k - 0.5) * math.pi) ** 2 for k in (1, 2, 3)]
    by_hand = math.fsum(math.log(100.0 / a) for a in zeros)
    assert counting_n(cos_sqrt, 100.0) == 3
    assert counting_N(cos_sqrt, 100.0) == pytest.approx(by_hand, abs=1e-9)
    assert counting_N(cos_sqrt, 100.0) == pytest.approx(5.6899, abs=1e-3)


def test_counting_below_the_first_zero(cos_sqrt):
    assert counting_n(cos_sqrt, 1.0) == 0
    assert counting_N(cos_sqrt, 1.0) == 0.0


def test_counting_explicit_multiplicities(make_explicit):
    spec = make_explicit(2.0, 2.0, -3.0)
    assert counting_n(spec, 2.5) == 2
    assert counting_N(spec, 6.0) == pytest.approx(2 * math.log(3.0) + math.log(2.0))


def test_characteristic_of_a_linear_factor(one_minus_z):
    # |1 - 2 e^{i theta}| >= 1, so only N(2) = log 2 contributes
    assert characteristic_T(one_minus_z, 2.0) == pytest.approx(math.log(2.0), abs=1e-9)


def test_characteristic_on_a_zero_is_finite(one_minus_z):
    value = characteristic_T(one_minus_z, 1.0)
    assert math.isfinite(value)
    assert value >= 0.0


def test_polynomial_has_no_defect(one_minus_z):
    # |1 - r e^{i theta}| >= 1 once r >= 2, so T(r) = N(r)
    report = defect_zero(one_minus_z, r_grid=[2.0, 20.0, 200.0, 2000.0])
    assert np.all(report.T_values >= report.N_values)
    assert report.defect_estimate == pytest.approx(0.0, abs=1e-9)


def test_defect_grid_needs_three_decades(cos_sqrt):
    with pytest.raises(ParameterOutOfRange):
        defect_zero(cos_sqrt, r_min=1.0, r_max=10.0)


def test_decay_candidates_from_primary_factors(genus_power):
    assert decay_candidates(genus_power) == pytest.approx([math.pi / 2])


def test_decay_candidates_from_the_exponent():
    spec = EntireFunctionSpec(exponent_poly=RealPolynomial((0.0, 0.0, -1.0)),
                              zeros=ZeroSequence(PowerLawZeros(1.0, 2.0)))
    candidates = decay_candidates(spec)
    assert any(abs(c - math.pi / 8) < 1e-12 for c in candidates)
    assert all(0.0 < c < math.pi for c in candidates)


def test_no_decay_candidates_in_genus_zero(cos_sqrt):
    with pytest.raises(NoCandidates):
        decay_candidates(cos_sqrt)


def test_decay_along_the_imaginary_axis(genus_power):
    scans = decay_ray_scan(genus_power)
    assert len(scans) == 1
    scan = scans[0]
    assert scan.theta == pytest.approx(math.pi / 2)
    assert np.all(scan.log_modulus < 0)
    assert scan.decreasing
    assert scan.exponent >= 2.0


def test_genus_power_has_a_deficient_zero(genus_power):
    report = defect_zero(genus_power)
    assert report.defect_estimate > 0.05
    assert np.all(report.ratio_N_over_T[len(report.ratio_N_over_T) // 2:] < 1.0)


def test_deficient_zero_forces_small_minimum_modulus(genus_power):
    scan = decay_ray_scan(genus_power)[0]
    log_m_10 = min_log_modulus(genus_power, 10.0)
    log_m_100 = min_log_modulus(genus_power, 100.0)
    assert log_m_10 < 0.0
    assert log_m_100 < log_m_10
    # the circle minimum never exceeds |f(100i)|
    assert log_m_100 <= scan.log_modulus[-1] + 1e-6 * abs(scan.log_modulus[-1])


def test_gaussian_exponent_defect():
    # Q = -z^2 with zeros k^2: N(r) grows like log^2 r while T(r) grows like r^2
    spec = EntireFunctionSpec(exponent_poly=RealPolynomial((0.0, 0.0, -1.0)),
                              zeros=ZeroSequence(PowerLawZeros(1.0, 2.0)))
    report = defect_zero(spec, r_min=0.1, r_max=100.0)
    trailing_decade = report.log_radii >= math.log(10.0) - 1e-9
    assert np.any(trailing_decade)
    assert np.all(report.ratio_N_over_T[trailing_decade] <= 0.2)
    assert report.defect_estimate > 0.5
