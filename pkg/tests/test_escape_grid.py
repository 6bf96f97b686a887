import cmath
import math

import numpy as np
import pytest

from core.config import reset_runtime_config
from core.errors import BelowFixedPoint, ParameterOutOfRange
from core.dynamics.escape_grid import (
    RENDER_TOLERANCE,
    build_schedule,
    inverse_max_log,
    point_survival,
    render_escape,
    schedule_kind,
)
from core.dynamics.orbit import classify_property
from core.analytic.hadamard import eval_log_points
from core.analytic.modulus import max_log_modulus
from core.exporters.graymap import export_grid
from core.models.escape import EscapeGrid
from core.models.functions import LogComplexValue

LOG2 = math.log(2.0)


@pytest.fixture
def fast_schedule(z_squared):
    # log M^n(2) = 2^n log 2 for z^2
    return build_schedule(z_squared, "MAX_MOD_POWER", 5, R=2.0)


# --- Schedules ---


def test_schedule_names():
    assert schedule_kind("max-mod-power") == "MAX_MOD_POWER"
    assert schedule_kind("Tilde_Min_Iter") == "TILDE_MIN_ITER"
    with pytest.raises(ParameterOutOfRange):
        schedule_kind("fastest")


def test_max_modulus_schedule(fast_schedule):
    assert fast_schedule.steps == 5
    assert fast_schedule.values == pytest.approx([LOG2 * 2 ** n for n in range(6)])


def test_base_radius_below_the_fixed_point(z_squared):
    with pytest.raises(BelowFixedPoint):
        build_schedule(z_squared, "MAX_MOD_POWER", 3, R=0.5)


def test_quite_fast_schedule(z_squared):
    schedule = build_schedule(z_squared, "QUITE_FAST", 4, R=2.0, eps=0.75)
    assert schedule.values == pytest.approx([LOG2 * 1.5 ** n for n in range(5)])
    with pytest.raises(BelowFixedPoint):
        build_schedule(z_squared, "QUITE_FAST", 4, R=2.0, eps=0.4)
    with pytest.raises(ParameterOutOfRange):
        build_schedule(z_squared, "QUITE_FAST", 4, R=2.0, eps=1.5)


def test_tilde_schedule(z_squared):
    schedule = build_schedule(z_squared, "TILDE_MIN_ITER", 2, R=2.0)
    assert schedule.values[0] == pytest.approx(LOG2)
    assert schedule.values[1] == pytest.approx(2 * LOG2, rel=1e-9)
    assert schedule.values[2] == pytest.approx(4 * LOG2, rel=1e-6)


def test_min_modulus_cube_schedule(z_squared):
    # M^{-1}(m^n(2)^(1/3)) = 2^(2^n / 6)
    schedule = build_schedule(z_squared, "MIN_MOD_ITER_CUBE", 4, seed_radius=2.0)
    assert schedule.values == pytest.approx([LOG2 * 2 ** n / 6 for n in range(5)], rel=1e-8)
    shifted = build_schedule(z_squared, "MIN_MOD_ITER_CUBE", 2, seed_radius=2.0, N=2)
    assert shifted.values[0] == pytest.approx(schedule.values[2], rel=1e-8)


def test_min_modulus_cube_needs_growth(cos_sqrt):
    with pytest.raises(BelowFixedPoint):
        build_schedule(cos_sqrt, "MIN_MOD_ITER_CUBE", 2, seed_radius=10.0)


def test_custom_schedule(z_squared):
    schedule = build_schedule(z_squared, "CUSTOM", 0, values=[1.0, 2.0, 8.0], offset=1)
    assert schedule.values == pytest.approx([0.0, LOG2, 3 * LOG2])
    assert schedule.offset == 1
    with pytest.raises(ParameterOutOfRange):
        build_schedule(z_squared, "CUSTOM", 0, values=[1.0, -2.0])
    with pytest.raises(ParameterOutOfRange):
        build_schedule(z_squared, "CUSTOM", 0, values=[])


def test_schedule_argument_checks(z_squared):
    with pytest.raises(ParameterOutOfRange):
        build_schedule(z_squared, "MAX_MOD_POWER", 0, R=2.0)
    with pytest.raises(ParameterOutOfRange):
        build_schedule(z_squared, "MAX_MOD_POWER", 3)
    with pytest.raises(ParameterOutOfRange):
        build_schedule(z_squared, "MAX_MOD_POWER", 3, R=2.0, offset=-1)


def test_inverse_max_modulus(z_squared, cos_sqrt):
    assert inverse_max_log(z_squared, 2.0) == pytest.approx(1.0, rel=1e-9)
    # M(r) >= 1 for cos sqrt z, so M^{-1}(1/e) does not exist
    assert inverse_max_log(cos_sqrt, -1.0) == -math.inf


# --- Points ---


def test_point_outside_the_circle_survives(z_squared, fast_schedule):
    steps, final = point_survival(z_squared, 3.0, fast_schedule, 5)
    assert steps == 5
    assert final == pytest.approx(16 * math.log(3.0))


def test_point_inside_the_circle_fails_at_once(z_squared, fast_schedule):
    assert point_survival(z_squared, 1.5j, fast_schedule, 5) == (0, pytest.approx(math.log(1.5)))
    assert point_survival(z_squared, 0.0, fast_schedule, 5)[0] == 0


def test_offset_iterates_first(z_squared):
    # f(1.5) = 2.25 > 2, and the margin doubles every step
    schedule = build_schedule(z_squared, "MAX_MOD_POWER", 5, R=2.0, offset=1)
    assert point_survival(z_squared, 1.5, schedule, 5)[0] == 5


def test_max_iter_beyond_the_schedule(z_squared, fast_schedule):
    with pytest.raises(ParameterOutOfRange):
        point_survival(z_squared, 3.0, fast_schedule, 7)


# --- Grids ---


def test_grid_of_z_squared(z_squared, fast_schedule):
    grid = render_escape(z_squared, (-4.0, 4.0, -4.0, 4.0), (8, 8), fast_schedule, 5)
    x, y = grid.pixel_coordinates()
    assert x[0] == pytest.approx(-3.5)
    assert y[0] == pytest.approx(3.5)
    expected = np.where(np.hypot(x[None, :], y[:, None]) >= 2.0, 5, 0)
    np.testing.assert_array_equal(grid.survived_steps, expected)
    assert grid.summary()["survivors"] == int(np.count_nonzero(expected))


def test_raising_thresholds_never_adds_survival(z_squared, fast_schedule):
    box, size = (-3.0, 3.0, -3.0, 3.0), (12, 10)
    base = render_escape(z_squared, box, size, fast_schedule, 5)
    raised = render_escape(z_squared, box, size, fast_schedule.raised(0.3), 5)
    assert np.all(raised.survived_steps <= base.survived_steps)


def test_grid_does_not_depend_on_thread_count(monkeypatch, genus_power):
    schedule = build_schedule(genus_power, "CUSTOM", 0, values=[1.0, 5.0, 50.0])
    box = (-3.0, 3.0, -2.0, 2.0)
    single = render_escape(genus_power, box, (10, 8), schedule, 3)
    monkeypatch.setenv("MINMODLAB_THREADS", "4")
    reset_runtime_config()
    threaded = render_escape(genus_power, box, (10, 8), schedule, 3)
    np.testing.assert_array_equal(single.survived_steps, threaded.survived_steps)
    np.testing.assert_array_equal(single.final_log_modulus, threaded.final_log_modulus)


def test_grid_argument_checks(z_squared, fast_schedule):
    with pytest.raises(ParameterOutOfRange):
        render_escape(z_squared, (1.0, -1.0, -1.0, 1.0), (4, 4), fast_schedule, 5)
    with pytest.raises(ParameterOutOfRange):
        render_escape(z_squared, (-1.0, 1.0, -1.0, 1.0), (0, 4), fast_schedule, 5)
    with pytest.raises(ParameterOutOfRange):
        render_escape(z_squared, (-1.0, 1.0, -1.0, 1.0), (4, 4), fast_schedule, 0)


def test_graymap_and_csv_export(tmp_path, z_squared, fast_schedule):
    grid = render_escape(z_squared, (-4.0, 4.0, -4.0, 4.0), (8, 8), fast_schedule, 5)
    image, table = tmp_path / "escape.pgm", tmp_path / "escape.csv"
    export_grid(grid, str(image), str(table))

    data = image.read_bytes()
    header = b"P5\n8 8\n255\n"
    assert data.startswith(header)
    pixels = np.frombuffer(data[len(header):], dtype=np.uint8).reshape(8, 8)
    np.testing.assert_array_equal(pixels, np.where(grid.survived_steps == 5, 255, 0))

    lines = table.read_text().splitlines()
    assert lines[0] == "x,y,survived_steps,final_log_modulus"
    assert len(lines) == 65


def test_two_by_two_graymap_scales_linearly(tmp_path):
    grid = EscapeGrid((0.0, 2.0, 0.0, 2.0), 2, 2, 3, np.array([[0, 1], [2, 3]]), np.zeros((2, 2)))
    path = tmp_path / "tiny.pgm"
    export_grid(grid, str(path))
    assert path.read_bytes() == b"P5\n2 2\n255\n" + bytes([0, 85, 170, 255])


def test_all_pixels_fail_below_an_unreachable_first_threshold(z_squared):
    schedule = build_schedule(z_squared, "CUSTOM", 0, values=[100.0, 1e4])
    grid = render_escape(z_squared, (-4.0, 4.0, -4.0, 4.0), (6, 6), schedule, 2)
    assert np.all(grid.survived_steps == 0)
    assert grid.summary()["survivors"] == 0


def test_z_squared_graymap_is_byte_identical(tmp_path, monkeypatch, z_squared, fast_schedule):
    box, size = (-4.0, 4.0, -4.0, 4.0), (64, 64)
    # pixel centres are odd multiples of 1/16, none of them on |z| = 2
    x = -4.0 + (np.arange(64) + 0.5) / 8.0
    y = x[::-1]
    golden = np.where(np.hypot(x[None, :], y[:, None]) > 2.0, 255, 0).astype(np.uint8)
    expected = b"P5\n64 64\n255\n" + golden.tobytes()

    exports = []
    for threads in ("1", "1", "4"):
        monkeypatch.setenv("MINMODLAB_THREADS", threads)
        reset_runtime_config()
        path = tmp_path / f"z2-{len(exports)}.pgm"
        export_grid(render_escape(z_squared, box, size, fast_schedule, 5), str(path))
        exports.append(path.read_bytes())
    assert exports[0] == expected
    assert exports[1] == exports[0]
    assert exports[2] == exports[0]


def test_pointwise_higher_schedules_never_add_survival(z_squared):
    rng = np.random.default_rng(5)
    box, size = (-3.0, 3.0, -3.0, 3.0), (12, 12)
    for _ in range(10):
        low = np.exp(rng.uniform(-1.0, 3.0, 5))
        high = low * np.exp(rng.uniform(0.0, 1.0, 5))
        base = render_escape(z_squared, box, size, build_schedule(z_squared, "CUSTOM", 0, values=low), 5)
        raised = render_escape(z_squared, box, size, build_schedule(z_squared, "CUSTOM", 0, values=high), 5)
        assert np.all(raised.survived_steps <= base.survived_steps)


def test_offset_equals_starting_from_the_iterate(z_cos_sqrt):
    radii = [1.0, 3.0, 10.0]
    shifted = build_schedule(z_cos_sqrt, "CUSTOM", 0, values=radii, offset=1)
    plain = build_schedule(z_cos_sqrt, "CUSTOM", 0, values=radii)
    rng = np.random.default_rng(11)
    points = rng.uniform(-4.0, 4.0, 100) + 1j * rng.uniform(-4.0, 4.0, 100)
    for z in points:
        first = eval_log_points(z_cos_sqrt, np.array([math.log(abs(z))]), np.array([cmath.phase(z)]), RENDER_TOLERANCE)
        w = LogComplexValue(float(first.log_modulus[0]), float(first.argument[0])).to_complex()
        assert point_survival(z_cos_sqrt, z, shifted, 3)[0] == point_survival(z_cos_sqrt, w, plain, 3)[0]


def test_min_modulus_cube_render_of_z_cos_sqrt(tmp_path, monkeypatch, z_cos_sqrt):
    witness = classify_property(z_cos_sqrt).witness
    steps = max(witness.orbit.status.step, 3)
    schedule = build_schedule(z_cos_sqrt, "MIN_MOD_ITER_CUBE", steps, seed_radius=witness.seed)
    assert np.all(np.isfinite(schedule.values))
    assert np.all(np.diff(schedule.values) >= -1e-9)
    # M(M^{-1}(y)) = y with y = m^0(r)^(1/3) = r^(1/3)
    assert max_log_modulus(z_cos_sqrt, log_r=schedule.values[0]) == pytest.approx(witness.log_seed / 3.0, rel=1e-7)

    box, size = (-50.0, 50.0, -50.0, 50.0), (64, 64)
    images = []
    for threads in ("1", "4"):
        monkeypatch.setenv("MINMODLAB_THREADS", threads)
        reset_runtime_config()
        grid = render_escape(z_cos_sqrt, box, size, schedule, 2)
        path = tmp_path / f"i_n-{threads}.pgm"
        export_grid(grid, str(path))
        images.append(path.read_bytes())
    assert images[0] == images[1]
    # on the negative axis |2z cos(sqrt z)| = 2x cosh(sqrt x) clears every early threshold
    assert np.all(grid.survived_steps[31:33, 0] == 2)
