"""
Maximum modulus M(r), minimum modulus m(r) and the running maximum
tilde-m(r) = max_{s <= r} m(s), all in log-space.
"""
import math
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Tuple

import numpy as np
from tqdm import tqdm

from core.config import load_runtime_config_cached
from core.errors import ParameterOutOfRange
from core.analytic.hadamard import eval_log_points, power_law_log_index
from core.analytic.optimize import golden_section_maximize, golden_section_minimize_batch
from core.models.functions import EntireFunctionSpec, PowerLawZeros
from core.models.profiles import ModulusProfile, TildeScan

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 1024
DEFAULT_REFINE_TOLERANCE = 1e-6
DEFAULT_GRID_RATIO = 1.02
TILDE_GRID_START = math.log(1e-2)

# radii per worker task; fixed so results never depend on the thread count
RADIUS_CHUNK = 16


def _resolve_log_radius(r: Optional[float], log_r: Optional[float]) -> float:
    if log_r is not None:
        return float(log_r)
    if r is None or not r > 0:
        raise ParameterOutOfRange(f"radius must be positive, got {r}")
    return math.log(r)


def extremal_angles(spec: EntireFunctionSpec) -> Optional[Tuple[float, float]]:
    """
    (argmin, argmax) when every factor |1 - z/a| is extremized at the same point
    of each circle: genus 0, constant Q, all zeros of one sign.
    """
    if spec.factor_index != 0 or not spec.exponent_poly.is_constant:
        return None
    sign = spec.zero_sign()
    if sign is None:
        return None
    return (0.0, math.pi) if sign > 0 else (math.pi, 0.0)


def zero_on_circle(spec: EntireFunctionSpec, log_r: float) -> Optional[float]:
    """Angle in {0, pi} of a zero lying on |z| = r (relative 1e-12), else None."""
    generator = spec.generator
    if isinstance(generator, PowerLawZeros):
        first = math.log(generator.start + generator.offset)
        y = power_law_log_index(generator, log_r, first)
        if y > 700.0:
            return None
        guess = int(round(math.exp(y) - generator.offset))
        levels = [k for k in (guess - 1, guess, guess + 1) if k >= generator.start]
        log_abs = [float(generator.log_modulus_at(k + generator.offset)) for k in levels]
        signs = sorted(generator.zero_signs(), reverse=True)
    else:
        block = generator.entries_within(log_r + 1e-9)
        log_abs = block.log_abs[-4:].tolist()
        signs = None
        negatives = block.negative[-4:].tolist()

    for i, value in enumerate(log_abs):
        if abs(value - log_r) < 1e-12:
            if signs is not None:
                return 0.0 if signs[0] > 0 else math.pi
            return math.pi if negatives[i] else 0.0
    return None


def _local_extrema(values: np.ndarray, largest: bool, count: int) -> np.ndarray:
    """Indices of the `count` most extreme local minima (or maxima) of a sampled curve."""
    v = -values if largest else values
    padded = np.concatenate([[np.inf], v, [np.inf]])
    is_local = (padded[1:-1] <= padded[:-2]) & (padded[1:-1] <= padded[2:])
    candidates = np.flatnonzero(is_local & np.isfinite(v))
    order = np.argsort(v[candidates], kind="stable")
    return candidates[order[:count]]


def circle_profile(spec: EntireFunctionSpec, r: Optional[float] = None, n_samples: int = DEFAULT_SAMPLES,
                   refine_tolerance: float = DEFAULT_REFINE_TOLERANCE, *, log_r: Optional[float] = None,
                   tail_tolerance: float = 1e-8, refine_candidates: int = 8,
                   use_symmetry_shortcut: bool = True) -> ModulusProfile:
    """
    Minimum and maximum of log|f| on |z| = r.

    Samples theta uniformly on [0, pi] (f is real, so the lower half circle
    mirrors the upper one) and refines the best local extrema by golden-section
    search until the bracket is narrower than refine_tolerance.

    Args:
        spec: function.
        r: radius; alternatively pass log_r for radii beyond float range.
        n_samples: number of angles, at least 64.
        refine_tolerance: final angular bracket width.
        log_r: log of the radius.
        tail_tolerance: evaluation tolerance.
        refine_candidates: number of local minima (and maxima) refined.
        use_symmetry_shortcut: allow the exact extremal angles of one-signed genus-0 products.

    Returns:
        ModulusProfile.
    """
    log_radius = _resolve_log_radius(r, log_r)
    if n_samples < 64:
        raise ParameterOutOfRange(f"n_samples must be >= 64, got {n_samples}")
    if not refine_tolerance > 0:
        raise ParameterOutOfRange("refine_tolerance must be positive")

    if spec.delegates_to_source():
        # g(z) = f(z^2): the circle |z| = r maps onto |w| = r^2, theta -> 2 theta
        source = circle_profile(spec.square_of, None, n_samples, refine_tolerance, log_r=2.0 * log_radius,
                                tail_tolerance=tail_tolerance, refine_candidates=refine_candidates,
                                use_symmetry_shortcut=use_symmetry_shortcut)
        return ModulusProfile(
            log_radius=log_radius,
            min_log=source.min_log,
            argmin_theta=0.5 * source.argmin_theta,
            max_log=source.max_log,
            argmax_theta=0.5 * source.argmax_theta,
            sample_count=source.sample_count,
            refined=source.refined,
            thetas=None if source.thetas is None else 0.5 * source.thetas,
            log_moduli=source.log_moduli,
        )

    angles = extremal_angles(spec) if use_symmetry_shortcut else None
    if angles is not None:
        thetas = np.array([0.0, math.pi])
        values = eval_log_points(spec, log_radius, thetas, tail_tolerance).log_modulus
        at = {0.0: float(values[0]), math.pi: float(values[1])}
        argmin, argmax = angles
        return ModulusProfile(log_radius, at[argmin], argmin, at[argmax], argmax,
                              sample_count=2, refined=True, thetas=thetas, log_moduli=values)

    thetas = np.linspace(0.0, math.pi, n_samples)
    values = eval_log_points(spec, log_radius, thetas, tail_tolerance).log_modulus

    i_min = int(np.argmin(values))
    i_max = int(np.argmax(values))
    min_log, argmin = float(values[i_min]), float(thetas[i_min])
    max_log, argmax = float(values[i_max]), float(thetas[i_max])

    if min_log > -math.inf:
        on_circle = zero_on_circle(spec, log_radius)
        if on_circle is not None:
            min_log, argmin = -math.inf, on_circle

    step = thetas[1] - thetas[0]
    lows = _local_extrema(values, largest=False, count=refine_candidates) if min_log > -math.inf else np.array([], int)
    highs = _local_extrema(values, largest=True, count=refine_candidates)

    centres = np.concatenate([thetas[lows], thetas[highs]])
    signs = np.concatenate([np.ones(len(lows)), -np.ones(len(highs))])
    a = np.clip(centres - step, 0.0, math.pi)
    b = np.clip(centres + step, 0.0, math.pi)

    def signed(angle_values):
        # same sign layout as `signs`: min brackets first, max brackets negated
        evaluated = eval_log_points(spec, log_radius, angle_values, tail_tolerance).log_modulus
        return signs * evaluated

    if len(centres):
        best_x, best_y = golden_section_minimize_batch(signed, a, b, refine_tolerance)
        n_low = len(lows)
        if n_low:
            j = int(np.argmin(best_y[:n_low]))
            if best_y[j] < min_log:
                min_log, argmin = float(best_y[j]), float(best_x[j])
        if len(highs):
            j = int(np.argmin(best_y[n_low:]))
            if -best_y[n_low + j] > max_log:
                max_log, argmax = float(-best_y[n_low + j]), float(best_x[n_low + j])

    return ModulusProfile(log_radius, min_log, argmin, max_log, argmax,
                          sample_count=n_samples, refined=True, thetas=thetas, log_moduli=values)


def min_log_modulus(spec: EntireFunctionSpec, r: Optional[float] = None, *, log_r: Optional[float] = None,
                    **kwargs) -> float:
    """log m(r)."""
    return circle_profile(spec, r, log_r=log_r, **kwargs).min_log


def max_log_modulus(spec: EntireFunctionSpec, r: Optional[float] = None, *, log_r: Optional[float] = None,
                    **kwargs) -> float:
    """log M(r)."""
    return circle_profile(spec, r, log_r=log_r, **kwargs).max_log


def min_log_many(spec: EntireFunctionSpec, log_radii: np.ndarray, n_samples: int = DEFAULT_SAMPLES,
                 tail_tolerance: float = 1e-8, which: str = "min") -> np.ndarray:
    """
    log m (or log M with which="max") on many radii, chunked over a thread pool.
    """
    log_radii = np.asarray(log_radii, dtype=np.float64)
    config = load_runtime_config_cached()
    source, log_scale = spec, 1.0
    while source.delegates_to_source():
        source, log_scale = source.square_of, 2.0 * log_scale

    angles = extremal_angles(source)
    if angles is not None:
        theta = angles[0] if which == "min" else angles[1]
        return eval_log_points(source, log_scale * log_radii, theta, tail_tolerance).log_modulus

    chunks = [log_radii[i:i + RADIUS_CHUNK] for i in range(0, len(log_radii), RADIUS_CHUNK)]

    def run(chunk):
        profiles = [circle_profile(spec, log_r=float(lr), n_samples=n_samples, tail_tolerance=tail_tolerance)
                    for lr in chunk]
        return [p.min_log if which == "min" else p.max_log for p in profiles]

    progress = tqdm(total=len(chunks), desc=f"{which} modulus", disable=not config.show_progress)
    results = []
    with ThreadPoolExecutor(max_workers=config.threads) as pool:
        # map keeps submission order, so the output never depends on scheduling
        for values in pool.map(run, chunks):
            results.extend(values)
            progress.update(1)
    progress.close()
    return np.array(results, dtype=np.float64)


def tilde_scan(spec: EntireFunctionSpec, log_r_max: float, grid_ratio: float = DEFAULT_GRID_RATIO, *,
               log_r_min: Optional[float] = None, n_samples: int = DEFAULT_SAMPLES,
               tail_tolerance: float = 1e-8) -> TildeScan:
    """
    log m on the geometric grid from min(r, 1e-2) up to r, with its running maximum.

    Args:
        spec: function.
        log_r_max: log of the last grid radius.
        grid_ratio: ratio between consecutive radii, in (1, 1.05].
        log_r_min: log of the first grid radius.
        n_samples: circle samples per radius when no shortcut applies.
        tail_tolerance: evaluation tolerance.

    Returns:
        TildeScan.
    """
    if not 1.0 < grid_ratio <= 1.05:
        raise ParameterOutOfRange(f"grid ratio must lie in (1, 1.05], got {grid_ratio}")
    start = min(log_r_max, TILDE_GRID_START) if log_r_min is None else min(log_r_min, log_r_max)
    count = max(int(math.ceil((log_r_max - start) / math.log(grid_ratio))), 1)
    log_radii = np.linspace(start, log_r_max, count + 1)

    min_logs = min_log_many(spec, log_radii, n_samples=n_samples, tail_tolerance=tail_tolerance)
    running_max = np.maximum.accumulate(min_logs)
    # index of the first grid point attaining each running maximum
    is_new_max = np.concatenate([[True], min_logs[1:] > running_max[:-1]])
    running_argmax = np.maximum.accumulate(np.where(is_new_max, np.arange(len(min_logs)), 0))
    logger.debug("tilde scan of %s: %d radii up to log r = %.6g", spec.label(), len(log_radii), log_r_max)
    return TildeScan(log_radii, min_logs, running_max, running_argmax)


def tilde_min_log(spec: EntireFunctionSpec, r: Optional[float] = None, grid_ratio: float = DEFAULT_GRID_RATIO,
                  *, log_r: Optional[float] = None, log_r_min: Optional[float] = None,
                  n_samples: int = DEFAULT_SAMPLES, tail_tolerance: float = 1e-8) -> float:
    """
    log tilde-m(r): best grid value of log m(s), s <= r, plus one golden-section
    pass in log s around the best grid point.
    """
    log_radius = _resolve_log_radius(r, log_r)
    scan = tilde_scan(spec, log_radius, grid_ratio, log_r_min=log_r_min, n_samples=n_samples,
                      tail_tolerance=tail_tolerance)
    best = int(scan.running_argmax[-1])
    value = float(scan.running_max[-1])
    if value == -math.inf:
        return value

    lo = scan.log_radii[max(best - 1, 0)]
    hi = scan.log_radii[min(best + 1, len(scan.log_radii) - 1)]
    if hi > lo:
        _, refined = golden_section_maximize(
            lambda t: min_log_modulus(spec, log_r=t, n_samples=n_samples, tail_tolerance=tail_tolerance),
            lo, hi, tol=1e-6 * max(1.0, abs(hi)))
        value = max(value, refined)
    return value


def log_convexity_check(spec: EntireFunctionSpec, r: Optional[float] = None, c: float = 2.0, *,
                        log_r: Optional[float] = None, tolerance: float = 1e-6) -> dict:
    """
    log M(r^c) - c log M(r), which is >= 0 for r beyond a spec-dependent threshold.
    """
    if not c > 1:
        raise ParameterOutOfRange(f"exponent c must exceed 1, got {c}")
    log_radius = _resolve_log_radius(r, log_r)
    outer = max_log_modulus(spec, log_r=c * log_radius)
    inner = max_log_modulus(spec, log_r=log_radius)
    gap = outer - c * inner
    return {
        "log_r": log_radius,
        "c": c,
        "max_log_rc": outer,
        "c_max_log_r": c * inner,
        "gap": gap,
        "holds": gap >= -tolerance,
    }


def cos_pi_rho_check(spec: EntireFunctionSpec, r: Optional[float] = None, eps: float = 0.5, *,
                     log_r: Optional[float] = None, grid_ratio: float = DEFAULT_GRID_RATIO) -> dict:
    """
    Looks for s in (r^eps, r) on a geometric grid with m(s) >= M(r^eps).
    """
    if not 0 < eps < 1:
        raise ParameterOutOfRange(f"eps must lie in (0, 1), got {eps}")
    log_radius = _resolve_log_radius(r, log_r)
    if log_radius <= 0:
        raise ParameterOutOfRange("radius must exceed 1")
    threshold = max_log_modulus(spec, log_r=eps * log_radius)
    count = max(int(math.ceil((1 - eps) * log_radius / math.log(grid_ratio))), 2)
    grid = np.linspace(eps * log_radius, log_radius, count + 1)[1:-1]
    min_logs = min_log_many(spec, grid)
    best = int(np.argmax(min_logs)) if len(grid) else 0
    holds = bool(len(grid) and min_logs[best] >= threshold)
    return {
        "log_r": log_radius,
        "eps": eps,
        "max_log_r_eps": threshold,
        "best_log_s": float(grid[best]) if len(grid) else None,
        "best_min_log": float(min_logs[best]) if len(grid) else None,
        "holds": holds,
    }


def extend_tilde_scan(spec: EntireFunctionSpec, scan: TildeScan, log_r_max: float,
                      grid_ratio: float = DEFAULT_GRID_RATIO, *, n_samples: int = DEFAULT_SAMPLES,
                      tail_tolerance: float = 1e-8) -> TildeScan:
    """Continues a scan, at most one grid step apart, up to exactly log_r_max."""
    last = float(scan.log_radii[-1])
    if log_r_max <= last:
        return scan
    step = math.log(grid_ratio)
    count = int(math.ceil((log_r_max - last) / step))
    new_radii = np.linspace(last, log_r_max, count + 1)[1:]
    new_logs = min_log_many(spec, new_radii, n_samples=n_samples, tail_tolerance=tail_tolerance)

    log_radii = np.concatenate([scan.log_radii, new_radii])
    min_logs = np.concatenate([scan.min_logs, new_logs])
    running_max = np.maximum.accumulate(min_logs)
    is_new_max = np.concatenate([[True], min_logs[1:] > running_max[:-1]])
    running_argmax = np.maximum.accumulate(np.where(is_new_max, np.arange(len(min_logs)), 0))
    return TildeScan(log_radii, min_logs, running_max, running_argmax)
