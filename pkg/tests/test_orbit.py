import math

import numpy as np
import pytest

from core.errors import ParameterOutOfRange
from core.analytic.modulus import tilde_scan
from core.families import family_by_name
from core.models.functions import EntireFunctionSpec, ExplicitZeros, RealPolynomial, ZeroSequence
from core.dynamics.orbit import (
    _pull_back,
    check_equivalences,
    classify_property,
    find_strict_seed,
    iterate_min_modulus,
    v_condition_power,
)

LOG_TWO = math.log(2.0)


def test_power_orbit_escapes(z_squared):
    record = iterate_min_modulus(z_squared, 2.0, max_iter=20, escape_log_threshold=100.0)
    assert record.status.kind == "ESCAPED"
    assert record.status.step == 8
    assert record.strictly_increasing
    assert record.values[:4] == pytest.approx([LOG_TWO * 2 ** n for n in range(4)])


def test_contracting_orbit_is_bounded(make_explicit):
    # m(r) = 1 - r/2 on r < 2 has the attracting fixed point 2/3
    spec = make_explicit(2.0)
    record = iterate_min_modulus(spec, 1.0, max_iter=30)
    assert record.status.kind == "BOUNDED"
    assert not record.strictly_increasing
    assert record.values[-1] == pytest.approx(math.log(2.0 / 3.0), abs=1e-6)


def test_orbit_hitting_a_zero(one_minus_z):
    record = iterate_min_modulus(one_minus_z, 1.0, max_iter=5)
    assert record.status.kind == "HIT_ZERO"
    assert record.status.step == 1


def test_orbit_rejects_bad_seed(z_squared):
    with pytest.raises(ParameterOutOfRange):
        iterate_min_modulus(z_squared, -1.0)


def test_orbit_rows(z_squared):
    record = iterate_min_modulus(z_squared, 2.0, max_iter=3, escape_log_threshold=1e3)
    rows = record.to_rows()
    assert [row["step"] for row in rows] == [0, 1, 2]
    assert rows[0]["log_min_modulus"] == pytest.approx(2 * LOG_TWO)


def test_cos_sqrt_fails_the_escape_property(cos_sqrt):
    verdict = classify_property(cos_sqrt)
    assert verdict.kind == "FAILS_EVIDENCE"
    assert verdict.bound < 0


def test_z_cos_sqrt_has_an_escaping_seed(z_cos_sqrt):
    verdict = classify_property(z_cos_sqrt)
    assert verdict.kind == "HOLDS"
    orbit = verdict.witness.orbit
    assert orbit.escaped
    assert orbit.strictly_increasing
    assert orbit.status.step <= 10


def test_strict_seed_for_a_power(z_squared):
    seed = find_strict_seed(z_squared, 10.0, 1e4)
    assert seed is not None
    assert seed.orbit.strictly_increasing
    assert math.log(10.0) - 1e-9 <= seed.log_seed


def test_equivalences_agree_for_a_power(z_squared):
    report = check_equivalences(z_squared, 10.0, 1e4)
    assert report.verdicts["c"]
    assert report.verdicts["a"]
    assert report.flag == "CONSISTENT"


def test_equivalences_all_negative_for_cos_sqrt(cos_sqrt):
    report = check_equivalences(cos_sqrt, 10.0, 1e4)
    assert not report.verdicts["a"]
    assert not report.verdicts["c"]
    assert not report.verdicts["d"]
    assert report.flag == "CONSISTENT"


def test_v_condition_for_a_power(z_squared):
    assert v_condition_power(z_squared, 10.0, 1000.0) in (1, 2)


def test_constructed_example_holds():
    verdict = classify_property(family_by_name("constructed", rho=0.5))
    assert verdict.kind == "HOLDS"
    assert verdict.witness.orbit.strictly_increasing


def test_equivalences_consistent_for_z_cos_sqrt(z_cos_sqrt):
    report = check_equivalences(z_cos_sqrt, 100.0, 1e4)
    assert report.verdicts["a"]
    assert report.flag == "CONSISTENT"


def test_equivalences_consistent_for_the_constructed_example():
    report = check_equivalences(family_by_name("constructed", rho=0.5), 10.0, 1e6)
    assert report.verdicts["d"]
    assert report.verdicts["a"]
    assert report.tail_start is not None
    assert report.flag == "CONSISTENT"


def test_escape_and_exceeding_t_max_are_separate_proxies():
    # m(r) = 2r: two steps from below 1e8 never pass 1e8, but the tilde chain escapes early
    two_z = EntireFunctionSpec(origin_power=1, exponent_poly=RealPolynomial((LOG_TWO,)),
                               zeros=ZeroSequence(ExplicitZeros()), name="2z")
    report = check_equivalences(two_z, 10.0, 1e8, max_iter=2)
    assert report.verdicts["c"]
    assert report.verdicts["d"]
    assert report.verdicts["a"]
    assert not report.verdicts["b"]
    assert report.flag == "CONSISTENT"


def test_pull_back_accepts_a_noisy_bracket_end():
    # log m(s) = 2s exactly; the grid value at lo sits 1e-9 above the target
    scan = tilde_scan(family_by_name("z-squared"), math.log(1e3), 1.02)
    lo = float(scan.log_radii[-40])
    chain = [lo, 2 * lo - 1e-9]
    argmaxes = [lo, float(scan.log_radii[-1])]
    assert _pull_back(scan, chain, argmaxes, 1, lambda s: 2 * s, 1e-7) == lo


def test_pull_back_moves_down_the_grid():
    scan = tilde_scan(family_by_name("z-squared"), math.log(1e3), 1.02)
    lo = float(scan.log_radii[-40])
    # L_2 falls between grid points, so m at the grid point under L_1 overshoots it
    target = 2 * lo - 0.01
    root = target / 2
    start = float(scan.log_radii[np.searchsorted(scan.log_radii, root / 2) - 2])
    chain = [start, lo, target]
    argmaxes = [start, lo, float(scan.log_radii[-1])]
    seed = _pull_back(scan, chain, argmaxes, 2, lambda s: 2 * s, 1e-7)
    assert seed == pytest.approx(root / 2, abs=1e-9)
    assert start <= seed


def test_hardy_three_quarters_fails_the_escape_property():
    verdict = classify_property(family_by_name("hardy", sigma=4.0 / 3.0))
    assert verdict.kind == "FAILS_EVIDENCE"
    assert verdict.bound < 0


def test_lindelof_fails_the_escape_property():
    verdict = classify_property(family_by_name("lindelof", alpha=1.5))
    assert verdict.kind == "FAILS_EVIDENCE"
    assert verdict.bound < 0
