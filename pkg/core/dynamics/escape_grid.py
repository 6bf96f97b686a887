"""
Escape-time classification of points z under iteration of f against threshold
schedules: the fast escaping set A_R(f), the sets I_N, V(f), Q_eps(f) and
I(f, (a_n)). Points are iterated in log-polar form; only the modulus is compared.
"""
import math
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import optimize
from tqdm import tqdm

from core.config import load_runtime_config_cached
from core.errors import BelowFixedPoint, ParameterOutOfRange
from core.analytic.hadamard import eval_log_points
from core.analytic.modulus import DEFAULT_GRID_RATIO, extend_tilde_scan, max_log_modulus, min_log_modulus, tilde_scan
from core.models.escape import SCHEDULE_NAMES, EscapeGrid, ScheduleKind, ThresholdSchedule
from core.models.functions import EntireFunctionSpec

logger = logging.getLogger(__name__)

# log-modulus beyond which an iterate counts as overflowed (and surviving)
OVERFLOW_LOG = 700.0
RENDER_TOLERANCE = 1e-6
INVERSE_RTOL = 1e-9


def schedule_kind(name: str) -> ScheduleKind:
    key = name.strip().lower().replace("_", "-")
    if key not in SCHEDULE_NAMES:
        raise ParameterOutOfRange(f"unknown schedule {name!r}; expected one of {', '.join(SCHEDULE_NAMES)}")
    return SCHEDULE_NAMES[key]


def _iterate_values(first: float, steps: int, step_fn) -> np.ndarray:
    """values[0] = first, values[n+1] = step_fn(values[n]); +inf once past the overflow range."""
    values = [first]
    for _ in range(steps):
        current = values[-1]
        if current > OVERFLOW_LOG:
            values.append(math.inf)
            continue
        values.append(float(step_fn(current)))
    return np.array(values, dtype=np.float64)


def inverse_max_log(spec: EntireFunctionSpec, target: float, tail_tolerance: float = 1e-8) -> float:
    """
    log M^{-1}(e^target): the log-radius t with log M(e^t) = target, by bracketing
    and brentq to INVERSE_RTOL relative. -inf when target lies below log M near 0.
    """
    def excess(t):
        return max_log_modulus(spec, log_r=t, tail_tolerance=tail_tolerance) - target

    lo = min(target, 0.0) - 1.0
    while excess(lo) >= 0.0:
        lo = 2.0 * lo - 1.0
        if lo < -700.0:
            return -math.inf
    hi = max(target, 0.0) + 1.0
    while excess(hi) <= 0.0:
        hi = 2.0 * hi
        if hi > OVERFLOW_LOG:
            raise BelowFixedPoint(f"M(r) stays below e^{target:.6g} up to r = e^{OVERFLOW_LOG:g}")
    return optimize.brentq(excess, lo, hi, xtol=1e-12, rtol=INVERSE_RTOL)


def build_schedule(spec: EntireFunctionSpec, kind: ScheduleKind, steps: int, *, R: Optional[float] = None,
                   seed_radius: Optional[float] = None, N: int = 0, exponent: float = 1.0 / 3.0,
                   eps: Optional[float] = None, values: Optional[Sequence[float]] = None, offset: int = 0,
                   grid_ratio: float = DEFAULT_GRID_RATIO, tail_tolerance: float = 1e-8) -> ThresholdSchedule:
    """
    Computes a threshold schedule in log-space.

    Args:
        spec: function.
        kind: schedule kind.
        steps: number of steps after values[0] (>= 1).
        R: base radius (MAX_MOD_POWER, TILDE_MIN_ITER, QUITE_FAST).
        seed_radius: r of MIN_MOD_ITER_CUBE.
        N: index shift of MIN_MOD_ITER_CUBE.
        exponent: power applied to m^{n+N}(r), default 1/3.
        eps: exponent of mu(r) = M(r)^eps (QUITE_FAST).
        values: radii a_0, a_1, ... (CUSTOM).
        offset: iterate shift L.
        grid_ratio: grid ratio of the tilde-m scan.
        tail_tolerance: evaluation tolerance.

    Returns:
        ThresholdSchedule with steps + 1 values.
    """
    if offset < 0:
        raise ParameterOutOfRange(f"offset must be >= 0, got {offset}")

    if kind == "CUSTOM":
        if not values:
            raise ParameterOutOfRange("custom schedule needs at least one value")
        if any(not v > 0 for v in values):
            raise ParameterOutOfRange("custom schedule values must be positive radii")
        logs = np.log(np.asarray(values, dtype=np.float64))
        return ThresholdSchedule(kind, logs, offset, {"count": len(logs)})

    if steps < 1:
        raise ParameterOutOfRange(f"steps must be >= 1, got {steps}")

    if kind in ("MAX_MOD_POWER", "QUITE_FAST", "TILDE_MIN_ITER"):
        if R is None or not R > 0:
            raise ParameterOutOfRange(f"{kind} needs a positive base radius R, got {R}")
        log_r0 = math.log(R)

    if kind == "MAX_MOD_POWER":
        def step(t):
            return max_log_modulus(spec, log_r=t, tail_tolerance=tail_tolerance)

        if not step(log_r0) > log_r0:
            raise BelowFixedPoint(f"M(R) <= R at R = {R:g}")
        schedule_values = _iterate_values(log_r0, steps, step)
        parameters = {"R": R}

    elif kind == "QUITE_FAST":
        if eps is None or not 0 < eps <= 1:
            raise ParameterOutOfRange(f"QUITE_FAST needs eps in (0, 1], got {eps}")

        def step(t):
            return eps * max_log_modulus(spec, log_r=t, tail_tolerance=tail_tolerance)

        if not step(log_r0) > log_r0:
            raise BelowFixedPoint(f"M(R)^eps <= R at R = {R:g}, eps = {eps:g}")
        schedule_values = _iterate_values(log_r0, steps, step)
        parameters = {"R": R, "eps": eps}

    elif kind == "TILDE_MIN_ITER":
        scan = tilde_scan(spec, log_r0, grid_ratio, tail_tolerance=tail_tolerance)

        def step(t):
            nonlocal scan
            scan = extend_tilde_scan(spec, scan, t, grid_ratio, tail_tolerance=tail_tolerance)
            return scan.value_at(t)

        if not step(log_r0) > log_r0:
            raise BelowFixedPoint(f"tilde-m(R) <= R at R = {R:g}")
        schedule_values = _iterate_values(log_r0, steps, step)
        parameters = {"R": R, "grid_ratio": grid_ratio}

    elif kind == "MIN_MOD_ITER_CUBE":
        if seed_radius is None or not seed_radius > 0:
            raise ParameterOutOfRange(f"MIN_MOD_ITER_CUBE needs a positive seed radius, got {seed_radius}")
        if N < 0 or not exponent > 0:
            raise ParameterOutOfRange("MIN_MOD_ITER_CUBE needs N >= 0 and a positive exponent")
        # 1. orbit log m^j(r), j = 0..N+steps
        orbit = [math.log(seed_radius)]
        for _ in range(N + steps):
            current = orbit[-1]
            if current > OVERFLOW_LOG / exponent:
                orbit.append(math.inf)
                continue
            orbit.append(min_log_modulus(spec, log_r=current, tail_tolerance=tail_tolerance))
        if not orbit[1] > orbit[0]:
            raise BelowFixedPoint(f"m(r) <= r at r = {seed_radius:g}")
        # 2. invert M on exponent * log m^{n+N}(r)
        schedule_values = []
        for n in range(steps + 1):
            target = exponent * orbit[n + N]
            if target > OVERFLOW_LOG:
                schedule_values.append(math.inf)
            else:
                schedule_values.append(inverse_max_log(spec, target, tail_tolerance))
        schedule_values = np.array(schedule_values, dtype=np.float64)
        parameters = {"seed_radius": seed_radius, "N": N, "exponent": exponent}

    else:
        raise ParameterOutOfRange(f"unknown schedule kind {kind!r}")

    logger.info("built %s schedule with %d steps, last log threshold %.6g", kind, steps, schedule_values[-1])
    return ThresholdSchedule(kind, schedule_values, offset, parameters)


# --- Classification ---


def _classify_points(spec: EntireFunctionSpec, log_r: np.ndarray, theta: np.ndarray, schedule: ThresholdSchedule,
                     max_iter: int, tail_tolerance: float) -> Tuple[np.ndarray, np.ndarray]:
    """Lockstep iteration of a batch of points; returns (survived_steps, final_log_modulus)."""
    count = len(log_r)
    survived = np.full(count, max_iter, dtype=np.int64)
    final = log_r.copy()
    active = np.ones(count, dtype=bool)
    log_r, theta = log_r.copy(), theta.copy()

    def advance():
        idx = np.flatnonzero(active)
        if not idx.size:
            return
        values = eval_log_points(spec, log_r[idx], theta[idx], tail_tolerance)
        log_r[idx] = values.log_modulus
        theta[idx] = values.argument
        # overflowed iterates are credited with survival and stop
        over = values.log_modulus > OVERFLOW_LOG
        final[idx[over]] = values.log_modulus[over]
        active[idx[over]] = False

    # 1. offset iterations
    for _ in range(schedule.offset):
        advance()

    # 2. compare against the thresholds
    for n in range(max_iter):
        idx = np.flatnonzero(active)
        if not idx.size:
            break
        below = log_r[idx] < schedule.values[n]
        survived[idx[below]] = n
        final[idx[below]] = log_r[idx[below]]
        active[idx[below]] = False
        if n < max_iter - 1:
            advance()

    still = np.flatnonzero(active)
    final[still] = log_r[still]
    return survived, final


def point_survival(spec: EntireFunctionSpec, z: complex, schedule: ThresholdSchedule, max_iter: int,
                   tail_tolerance: float = RENDER_TOLERANCE) -> Tuple[int, float]:
    """
    Classification of one point.

    Returns:
        (first step n with log|f^{n+L}(z)| < values[n], or max_iter; last log-modulus).
    """
    if max_iter > len(schedule.values):
        raise ParameterOutOfRange(f"max_iter {max_iter} exceeds the schedule length {len(schedule.values)}")
    z = complex(z)
    log_r = np.array([math.log(abs(z)) if z != 0 else -math.inf])
    theta = np.array([math.atan2(z.imag, z.real)])
    survived, final = _classify_points(spec, log_r, theta, schedule, max_iter, tail_tolerance)
    return int(survived[0]), float(final[0])


def render_escape(spec: EntireFunctionSpec, rectangle: Tuple[float, float, float, float],
                  resolution: Tuple[int, int], schedule: ThresholdSchedule, max_iter: int, *,
                  tail_tolerance: float = RENDER_TOLERANCE) -> EscapeGrid:
    """
    Classifies every pixel centre of a rectangle.

    Each pixel row is one tile; tiles are mapped over a thread pool in order, so
    the result does not depend on the thread count.

    Args:
        spec: function.
        rectangle: (x_min, x_max, y_min, y_max).
        resolution: (width, height), both >= 1.
        schedule: thresholds.
        max_iter: steps compared (<= number of schedule values).
        tail_tolerance: evaluation tolerance.

    Returns:
        EscapeGrid.
    """
    width, height = resolution
    x_min, x_max, y_min, y_max = rectangle
    if width < 1 or height < 1:
        raise ParameterOutOfRange(f"resolution must be at least 1x1, got {width}x{height}")
    if not (x_max > x_min and y_max > y_min):
        raise ParameterOutOfRange("rectangle must have x_max > x_min and y_max > y_min")
    if max_iter < 1 or max_iter > len(schedule.values):
        raise ParameterOutOfRange(f"max_iter must lie in 1..{len(schedule.values)}, got {max_iter}")

    grid = EscapeGrid((x_min, x_max, y_min, y_max), width, height, max_iter,
                      np.zeros((height, width), dtype=np.int64), np.zeros((height, width)))
    xs, ys = grid.pixel_coordinates()
    config = load_runtime_config_cached()

    def run_row(i):
        z = xs + 1j * ys[i]
        with np.errstate(divide="ignore"):
            log_r = np.log(np.abs(z))
        return _classify_points(spec, log_r, np.angle(z), schedule, max_iter, tail_tolerance)

    progress = tqdm(total=height, desc="escape rows", disable=not config.show_progress)
    with ThreadPoolExecutor(max_workers=config.threads) as pool:
        for i, (survived, final) in enumerate(pool.map(run_row, range(height))):
            grid.survived_steps[i] = survived
            grid.final_log_modulus[i] = final
            progress.update(1)
    progress.close()

    logger.info("rendered %dx%d escape grid: %d survivors", width, height,
                int(np.count_nonzero(grid.survived_steps == max_iter)))
    return grid
