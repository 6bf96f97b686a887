"""
Order, genus and value-distribution quantities of a spec: the counting
functions n(t), N(r), the characteristic T(r) = N(r) + (1/2pi) int log+ 1/|f|,
the defect of the value 0 and the rays along which f decays.
"""
import math
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence

import numpy as np
from scipy.special import gammaln

from core.config import load_runtime_config_cached
from core.errors import CannotDecideConvergence, DegenerateGrowth, NoCandidates, ParameterOutOfRange
from core.analytic.hadamard import eval_log_points
from core.analytic.lemmas import theta_candidates
from core.analytic.modulus import _resolve_log_radius, min_log_many, zero_on_circle
from core.models.functions import EntireFunctionSpec, ExplicitZeros, PowerLawZeros, RecursiveZeros
from core.models.reports import DeficiencyReport, GenusReport, GrowthReport, RayScan

logger = logging.getLogger(__name__)

LOG_TEN = math.log(10.0)

QUADRATURE_CAP = 1 << 18
SUM_CHUNK = 1 << 20

# --- Growth ---


def estimate_order(spec: EntireFunctionSpec, r_min: float = 1e2, r_max: float = 1e8,
                   grid_ratio: float = 1.2, *, log_r_min: Optional[float] = None,
                   log_r_max: Optional[float] = None, tail_tolerance: float = 1e-8) -> GrowthReport:
    """
    Order estimate from least-squares slopes of log log M(r) against log r over
    sliding one-decade windows; the largest slope stands in for the limsup.

    Args:
        spec: function.
        r_min, r_max: grid ends (r_max >= 1000 r_min).
        grid_ratio: ratio between consecutive radii.
        log_r_min, log_r_max: log-space grid ends, override r_min / r_max.
        tail_tolerance: evaluation tolerance.

    Returns:
        GrowthReport.
    """
    lo = _resolve_log_radius(r_min, log_r_min)
    hi = _resolve_log_radius(r_max, log_r_max)
    if hi - lo < 3 * LOG_TEN - 1e-9:
        raise ParameterOutOfRange(f"order grid must span three decades, got [{math.exp(lo):.6g}, {math.exp(hi):.6g}]")
    if not grid_ratio > 1:
        raise ParameterOutOfRange(f"grid ratio must exceed 1, got {grid_ratio}")
    if spec.is_polynomial:
        raise DegenerateGrowth(f"{spec.label()} is a polynomial; log log M(r) / log r tends to 0")

    count = int(math.ceil((hi - lo) / math.log(grid_ratio)))
    log_radii = np.linspace(lo, hi, count + 1)
    max_logs = min_log_many(spec, log_radii, tail_tolerance=tail_tolerance, which="max")

    # 1. keep radii with M(r) > e so that log log M is defined and positive
    usable = max_logs > 1.0
    log_radii, max_logs = log_radii[usable], max_logs[usable]
    if len(log_radii) < 2:
        raise DegenerateGrowth(f"M(r) never exceeds e on the grid for {spec.label()}")
    loglog = np.log(max_logs)
    if not loglog[-1] > loglog[0]:
        raise DegenerateGrowth(f"log log M(r) is not increasing for {spec.label()}")

    # 2. one-decade windows starting at every grid point
    slopes, centres = [], []
    for i, start in enumerate(log_radii):
        inside = (log_radii >= start) & (log_radii <= start + LOG_TEN + 1e-12)
        if log_radii[-1] < start + LOG_TEN - 1e-9:
            break
        if np.count_nonzero(inside) < 3:
            continue
        slope = float(np.polyfit(log_radii[inside], loglog[inside], 1)[0])
        slopes.append(slope)
        centres.append(float(start + 0.5 * LOG_TEN))
    if not slopes:
        slopes = [float(np.polyfit(log_radii, loglog, 1)[0])]
        centres = [float(0.5 * (log_radii[0] + log_radii[-1]))]

    order = max(max(slopes), 0.0)
    logger.info("order estimate of %s: %.4f over %d windows", spec.label(), order, len(slopes))
    return GrowthReport(log_radii, loglog, order, slopes, centres)


def compute_genus(spec: EntireFunctionSpec) -> GenusReport:
    """
    Genus = max(m, deg Q) with m the smallest index making sum mult |a_k|^-(m+1) converge.
    """
    generator = spec.generator
    if not isinstance(generator, (ExplicitZeros, PowerLawZeros, RecursiveZeros)):
        raise CannotDecideConvergence(f"cannot decide convergence for {type(generator).__name__}")
    minimal = generator.minimal_factor_index()
    if spec.factor_index != minimal:
        logger.warning("%s uses factor index %d; the canonical product needs only %d",
                       spec.label(), spec.factor_index, minimal)
    degree = spec.exponent_poly.degree
    return GenusReport(factor_index=spec.factor_index, poly_degree=degree,
                       genus=max(minimal, degree), minimal_factor_index=minimal)


# --- Counting functions ---


def counting_n(spec: EntireFunctionSpec, t: Optional[float] = None, *, log_t: Optional[float] = None):
    """
    n(t) - n(0): zeros in 0 < |z| <= t with multiplicity, as an exact int where possible.
    """
    if log_t is None:
        if t is None or t <= 0:
            return 0
        log_t = math.log(t)
    return spec.generator.count_within(log_t)


def _power_law_log_sum(generator: PowerLawZeros, last_level: int) -> float:
    """sum_{k=start}^{last_level} log a_k."""
    count = last_level - generator.start + 1
    if count <= 0:
        return 0.0
    h = generator.offset
    total = count * math.log(generator.scale)
    total += generator.exponent * float(gammaln(last_level + h + 1.0) - gammaln(generator.start + h))
    if generator.log_exponent:
        loglog = 0.0
        for begin in range(generator.start, last_level + 1, SUM_CHUNK):
            k = np.arange(begin, min(begin + SUM_CHUNK, last_level + 1), dtype=np.float64) + h
            loglog += math.fsum(np.log(np.log(k)))
        total += generator.log_exponent * loglog
    return total


def counting_N(spec: EntireFunctionSpec, r: Optional[float] = None, *, log_r: Optional[float] = None) -> float:
    """
    N(r) = sum over 0 < |a_k| <= r of mult_k * log(r / |a_k|).

    Args:
        spec: function.
        r: radius (or log_r).

    Returns:
        float, 0 below the smallest zero.
    """
    log_radius = _resolve_log_radius(r, log_r)
    generator = spec.generator
    if isinstance(generator, PowerLawZeros):
        last = generator.last_level_within(log_radius)
        levels = last - generator.start + 1
        if levels <= 0:
            return 0.0
        weight = generator.multiplicity * generator.signs_per_level
        return weight * (levels * log_radius - _power_law_log_sum(generator, last))

    block = generator.entries_within(log_radius)
    if len(block) == 0:
        return 0.0
    with np.errstate(divide="ignore"):
        terms = np.exp(block.log_mult + np.log(np.maximum(log_radius - block.log_abs, 0.0)))
    return math.fsum(np.where(log_radius > block.log_abs, terms, 0.0))


# --- Characteristic ---


def _near_zero_angles(spec: EntireFunctionSpec, log_r: float, eps: float) -> List[float]:
    """Angles in {0, pi} where a real zero lies within relative distance eps of the circle."""
    generator = spec.generator
    if isinstance(generator, PowerLawZeros):
        last = generator.last_level_within(log_r + eps)
        block = generator.level_block(max(last - 1, generator.start), last + 1)
    else:
        block = generator.entries_within(log_r + eps)
    angles = set()
    for log_abs, negative in zip(block.log_abs, block.negative):
        if abs(log_abs - log_r) < eps:
            angles.add(math.pi if negative else 0.0)
    return sorted(angles)


def _excluded_piece(spec, log_r: float, edge: float, eps: float, tail_tolerance: float) -> float:
    """
    int of log+ 1/|f| over the eps-arc next to a near-zero, with |f| modelled as c |theta - theta_0|.
    """
    value = float(eval_log_points(spec, log_r, edge, tail_tolerance).log_modulus)
    if value == -math.inf:
        return math.inf
    # c eps = |f(edge)|: int_0^eps log+ 1/(c t) dt
    return eps * (1.0 - value) if value <= 0.0 else eps * math.exp(-value)


def characteristic_T(spec: EntireFunctionSpec, r: Optional[float] = None, quadrature_points: int = 256,
                     zero_exclusion_radius: float = 1e-4, *, log_r: Optional[float] = None,
                     rtol: float = 1e-6, tail_tolerance: float = 1e-8) -> float:
    """
    T(r) = N(r) + (1/2pi) int_0^{2pi} log+ 1/|f(r e^{i theta})| d theta.

    The integral runs over [0, pi] (f is real) with the trapezoid rule, doubling the
    point count until two passes agree to rtol or the cap is reached. Arcs of width
    zero_exclusion_radius next to zeros sitting near the circle are integrated from a
    c |theta - theta_0| model of |f| instead.

    Args:
        spec: function.
        r: radius (or log_r); shifted by 1e-6 relative when it is exactly a zero modulus.
        quadrature_points: initial number of intervals.
        zero_exclusion_radius: half-width eps of the excluded arcs.
        rtol: relative agreement between successive passes.
        tail_tolerance: evaluation tolerance.

    Returns:
        float.
    """
    log_radius = _resolve_log_radius(r, log_r)
    if zero_on_circle(spec, log_radius) is not None:
        log_radius += math.log1p(1e-6)
        logger.debug("radius sits on a zero; shifted to log r = %.12g", log_radius)
    if quadrature_points < 8:
        raise ParameterOutOfRange(f"quadrature_points must be >= 8, got {quadrature_points}")

    n_value = counting_N(spec, log_r=log_radius)
    eps = zero_exclusion_radius
    near = _near_zero_angles(spec, log_radius, eps)

    a = eps if 0.0 in near else 0.0
    b = math.pi - eps if math.pi in near else math.pi
    excluded = 0.0
    if 0.0 in near:
        excluded += _excluded_piece(spec, log_radius, eps, eps, tail_tolerance)
    if math.pi in near:
        excluded += _excluded_piece(spec, log_radius, math.pi - eps, eps, tail_tolerance)

    def integrand(thetas):
        values = eval_log_points(spec, log_radius, thetas, tail_tolerance).log_modulus
        return np.nan_to_num(np.maximum(-values, 0.0), posinf=0.0)

    n = quadrature_points
    thetas = np.linspace(a, b, n + 1)
    samples = integrand(thetas)
    estimate = (b - a) / n * (samples.sum() - 0.5 * (samples[0] + samples[-1]))
    while n < QUADRATURE_CAP:
        # doubling: only the new midpoints are evaluated
        mids = thetas[:-1] + 0.5 * (b - a) / n
        mid_samples = integrand(mids)
        refined = 0.5 * estimate + (b - a) / (2 * n) * mid_samples.sum()
        merged = np.empty(2 * n + 1)
        merged[0::2], merged[1::2] = samples, mid_samples
        thetas = np.linspace(a, b, 2 * n + 1)
        samples, n = merged, 2 * n
        converged = abs(refined - estimate) <= rtol * max(abs(refined), 1e-12)
        estimate = refined
        if converged:
            break
    else:
        logger.warning("T(r) quadrature for %s stopped at %d points", spec.label(), n)

    return n_value + (estimate + excluded) / math.pi


def defect_zero(spec: EntireFunctionSpec, r_grid: Optional[Sequence[float]] = None, *,
                log_r_grid: Optional[Sequence[float]] = None, r_min: float = 1e-1, r_max: float = 1e2,
                points_per_decade: int = 3, quadrature_points: int = 256, rtol: float = 1e-6,
                tail_tolerance: float = 1e-8) -> DeficiencyReport:
    """
    N(r) / T(r) on a radius grid and the estimate 1 - max(N/T) over its trailing half.

    Args:
        spec: function.
        r_grid: radii; alternatively log_r_grid, or a geometric grid from r_min to r_max.
        points_per_decade: density of the default grid.

    Returns:
        DeficiencyReport.
    """
    if log_r_grid is not None:
        log_radii = np.asarray(log_r_grid, dtype=np.float64)
    elif r_grid is not None:
        log_radii = np.log(np.asarray(r_grid, dtype=np.float64))
    else:
        lo, hi = math.log(r_min), math.log(r_max)
        count = max(int(math.ceil((hi - lo) / LOG_TEN * points_per_decade)), 1)
        log_radii = np.linspace(lo, hi, count + 1)
    log_radii = np.sort(log_radii)
    if len(log_radii) < 2 or log_radii[-1] - log_radii[0] < 3 * LOG_TEN - 1e-9:
        raise ParameterOutOfRange("defect grid must span at least three decades")

    config = load_runtime_config_cached()

    def run(log_radius):
        n_value = counting_N(spec, log_r=float(log_radius))
        t_value = characteristic_T(spec, log_r=float(log_radius), quadrature_points=quadrature_points,
                                   rtol=rtol, tail_tolerance=tail_tolerance)
        return n_value, max(t_value, n_value)

    with ThreadPoolExecutor(max_workers=config.threads) as pool:
        pairs = list(pool.map(run, log_radii))
    N_values = np.array([p[0] for p in pairs])
    T_values = np.array([p[1] for p in pairs])

    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(T_values > 0.0, N_values / T_values, 1.0)
    trailing = ratio[len(ratio) // 2:]
    defect = float(np.clip(1.0 - np.max(trailing), 0.0, 1.0))
    logger.info("defect estimate of %s: %.4f", spec.label(), defect)
    return DeficiencyReport(log_radii, N_values, T_values, ratio, defect)


# --- Decay rays ---


def decay_candidates(spec: EntireFunctionSpec) -> List[float]:
    """
    Angles in [0, pi] along which f should decay: the primary-factor angles when
    m >= 2 and m >= deg Q, otherwise directions where the leading term of Re Q is
    negative (kept off the real axis, where the zeros sit).
    """
    m = spec.factor_index
    degree = spec.exponent_poly.degree
    if m >= 2 and m >= degree:
        return [t for t in theta_candidates(m) if t <= math.pi + 1e-12]
    if degree >= m + 1 and degree >= 1:
        leading = spec.exponent_poly.leading()
        phase = 0.0 if leading > 0 else math.pi
        half_width = math.pi / (2 * degree)
        angles = set()
        for j in range(2 * degree):
            centre = ((math.pi - phase + 2 * math.pi * j) / degree) % (2 * math.pi)
            if min(abs(math.sin(centre)), 1.0) < 1e-12:
                picks = (centre + 0.5 * half_width, centre - 0.5 * half_width)
            else:
                picks = (centre,)
            for p in picks:
                p = p % (2 * math.pi)
                if p <= math.pi + 1e-12:
                    angles.add(round(p, 15))
        return sorted(angles)
    raise NoCandidates(f"{spec.label()} has genus {spec.genus} and deg Q = {degree} < m + 1 = {m + 1}")


def decay_ray_scan(spec: EntireFunctionSpec, r_min: float = 10.0, r_max: float = 100.0, points: int = 24,
                   tail_tolerance: float = 1e-8) -> List[RayScan]:
    """
    Samples log|f(r e^{i theta})| on a geometric grid along every candidate ray and
    fits the exponent of -log|f| against log r.
    """
    thetas = decay_candidates(spec)
    log_radii = np.linspace(math.log(r_min), math.log(r_max), points)
    scans = []
    for theta in thetas:
        values = eval_log_points(spec, log_radii, theta, tail_tolerance).log_modulus
        negative = values < 0.0
        exponent = None
        if np.count_nonzero(negative) >= 2:
            exponent = float(np.polyfit(log_radii[negative], np.log(-values[negative]), 1)[0])
        decreasing = bool(np.all(np.diff(values) < 0.0))
        flagged = decreasing and bool(values[-1] < 0.0) and exponent is not None and exponent > 0.0
        logger.debug("ray %.6f: exponent %s, decreasing %s", theta, exponent, decreasing)
        scans.append(RayScan(theta, log_radii, values, exponent, decreasing, flagged))
    return scans
