import cmath
import math

import numpy as np
import pytest

from core.errors import CutoffTooSmall, InvalidSpec, MixedSignZeros
from core.families import family_by_name
from core.analytic.closed_forms import closed_form_log
from core.analytic.hadamard import (
    eval_log,
    eval_log_points,
    is_laguerre_polya,
    partial_log,
    primary_factor_log,
    square_substitute,
    tail_bound,
)
from core.models.functions import EntireFunctionSpec, PowerLawZeros, ZeroSequence


def random_points(count, radius, seed):
    rng = np.random.default_rng(seed)
    moduli = radius * np.sqrt(rng.uniform(0.0, 1.0, count))
    angles = rng.uniform(-math.pi, math.pi, count)
    return [complex(m * math.cos(a), m * math.sin(a)) for m, a in zip(moduli, angles)]


@pytest.mark.parametrize("r", [1.0, 10.0, 100.0, 1000.0])
def test_cos_sqrt_on_negative_axis_is_cosh(cos_sqrt, r):
    value = eval_log(cos_sqrt, complex(-r, 0.0))
    assert value.log_modulus == pytest.approx(math.log(math.cosh(math.sqrt(r))), abs=1e-7)


def test_cos_sqrt_on_positive_axis(cos_sqrt):
    value = eval_log(cos_sqrt, 2.0)
    assert value.log_modulus == pytest.approx(math.log(abs(math.cos(math.sqrt(2.0)))), abs=1e-7)


def test_hardy_sigma_two_at_quarter(hardy2):
    # sin(pi/2) / (pi/2)
    assert eval_log(hardy2, 0.25).log_modulus == pytest.approx(-0.451583, abs=1e-6)


@pytest.mark.parametrize("family", ["cos_sqrt", "z_cos_sqrt", "hardy2"])
def test_product_matches_closed_form(family, request):
    spec = request.getfixturevalue(family)
    points = random_points(100, 1000.0, seed=7)
    values = eval_log_points(spec, [math.log(abs(z)) for z in points], [cmath.phase(z) for z in points])
    for z, got in zip(points, values.log_modulus):
        expected = closed_form_log(spec.closed_form, z).log_modulus
        assert got == pytest.approx(expected, abs=1e-7 + 1e-8)


def test_reported_error_is_small(hardy2):
    values = eval_log_points(hardy2, [math.log(50.0)], [1.0], tail_tolerance=1e-8)
    assert 0.0 <= values.error[0] <= 1e-7


def test_z_squared_is_exact(z_squared):
    value = eval_log(z_squared, 3 + 4j)
    assert value.log_modulus == pytest.approx(2.0 * math.log(5.0), abs=1e-14)
    assert value.argument == pytest.approx(cmath.phase((3 + 4j) ** 2), abs=1e-12)


def test_zero_gives_sentinel(one_minus_z, z_squared):
    assert eval_log(one_minus_z, 1.0).is_zero
    assert eval_log(z_squared, 0.0).is_zero


def test_primary_factor_spot_value():
    # log|E(2i, 2)| = log sqrt(5) - 2
    assert primary_factor_log(2j, 2).log_modulus == pytest.approx(0.5 * math.log(5.0) - 2.0, abs=1e-12)


def test_square_substitute_links_source(cos_sqrt):
    squared = square_substitute(cos_sqrt)
    assert squared.closed_form == "cos"
    assert squared.square_of is cos_sqrt
    assert squared.origin_power == 0
    assert eval_log(squared, 2.0).log_modulus == pytest.approx(math.log(abs(math.cos(2.0))), abs=1e-7)
    assert eval_log(squared, 1.5j).log_modulus == pytest.approx(math.log(math.cosh(1.5)), abs=1e-7)


def test_square_substitute_rejects_negative_zeros(make_explicit):
    with pytest.raises(MixedSignZeros):
        square_substitute(make_explicit(2.0, -3.0))


def test_partial_product_within_tail_bound(hardy2):
    z = 3.0 + 1.0j
    full = eval_log(hardy2, z, tail_tolerance=1e-12).log_modulus
    partial = partial_log(hardy2, z, 100).log_modulus
    assert abs(full - partial) <= tail_bound(hardy2, abs(z), 100) + 1e-10


def test_tail_bound_needs_cutoff_beyond_twice_the_radius(hardy2):
    with pytest.raises(CutoffTooSmall):
        tail_bound(hardy2, 10.0, 0)


def test_factor_index_below_minimum_is_rejected():
    with pytest.raises(InvalidSpec):
        EntireFunctionSpec(zeros=ZeroSequence(PowerLawZeros(1.0, 0.5)), factor_index=0)


def test_laguerre_polya_membership(cos_sqrt, genus_power):
    assert is_laguerre_polya(cos_sqrt)
    assert genus_power.factor_index == 2
    assert not is_laguerre_polya(genus_power)


@pytest.mark.parametrize("name, params", [
    ("cos-sqrt", {}),
    ("hardy", {"sigma": 4.0 / 3.0}),
    ("lindelof", {"alpha": 1.5}),
    ("genus-power", {"s": 0.4, "symmetric": True}),
])
def test_conjugate_points_have_equal_modulus(name, params):
    spec = family_by_name(name, **params)
    tolerance = 1e-8
    for z in random_points(20, 100.0, seed=3):
        upper = eval_log(spec, z, tail_tolerance=tolerance).log_modulus
        lower = eval_log(spec, z.conjugate(), tail_tolerance=tolerance).log_modulus
        assert abs(upper - lower) <= 2 * tolerance + 1e-10


@pytest.mark.parametrize("name, params", [("cos-sqrt", {}), ("hardy", {"sigma": 4.0 / 3.0})])
@pytest.mark.parametrize("cutoff", [50, 100])
def test_doubling_the_cutoff_stays_within_the_tail_bound(name, params, cutoff):
    spec = family_by_name(name, **params)
    z = 3.0 + 1.0j
    short = partial_log(spec, z, cutoff).log_modulus
    long = partial_log(spec, z, 2 * cutoff).log_modulus
    assert abs(long - short) <= tail_bound(spec, abs(z), cutoff)
