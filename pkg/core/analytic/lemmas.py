"""
Numerical checks of two standalone lemmas:

* the product lemma: with log r_0 >= 1600 and a subsequence whose logs grow by a
  factor 16 at least, L_0 = 3, L_{n_k + 1} = L_{n_k} (1 - 10 / sqrt(log r_{n_k}))
  and L_n = 3 otherwise stays >= 2;
* the primary-factor lemma: along suitable rays T e^{i theta} (T real),
  log|E(T e^{i theta}, m)| <= 0, it increases for T < 0 and decreases for T > 0,
  and it is <= -C |T|^m (m even) or -C |T|^(m-1) (m odd) for large |T|.
"""
import math
import logging
from typing import List, Optional, Sequence

import numpy as np

from core.errors import BadAngle, InvalidInstance, ParameterOutOfRange
from core.models.reports import ProdLInstance, RayProfile

logger = logging.getLogger(__name__)

PRODL_MIN_LOG_R0 = 1600.0
PRODL_GROWTH = 16.0
FIT_BAND = 0.05
SIGN_TOLERANCE = 1e-12
SERIES_LIMIT = 0.5
SERIES_TERMS = 60


# --- Product lemma ---


def prodL_sequence(log_r: Sequence[float], subsequence_indices: Sequence[int]) -> ProdLInstance:
    """
    Runs the L_n recurrence on a validated instance.

    Args:
        log_r: log r_n for n = 0..len-1, nondecreasing, log r_0 >= 1600.
        subsequence_indices: strictly increasing n_k with log r_{n_{k+1}} >= 16 log r_{n_k}.

    Returns:
        ProdLInstance holding L_0..L_len.
    """
    log_r = [float(v) for v in log_r]
    indices = [int(i) for i in subsequence_indices]

    # 1. Validate the radii
    if not log_r:
        raise InvalidInstance("the radius sequence is empty")
    if log_r[0] < PRODL_MIN_LOG_R0:
        raise InvalidInstance(f"log r_0 = {log_r[0]:.6g} is below {PRODL_MIN_LOG_R0:g}")
    for n in range(1, len(log_r)):
        if log_r[n] < log_r[n - 1]:
            raise InvalidInstance(f"r_{n} < r_{n - 1}: the radii must be nondecreasing")

    # 2. Validate the subsequence
    for k, n in enumerate(indices):
        if not 0 <= n < len(log_r):
            raise InvalidInstance(f"subsequence index {n} lies outside 0..{len(log_r) - 1}")
        if k and n <= indices[k - 1]:
            raise InvalidInstance("subsequence indices must be strictly increasing")
        if k and log_r[n] < PRODL_GROWTH * log_r[indices[k - 1]]:
            raise InvalidInstance(
                f"log r_{n} = {log_r[n]:.6g} is below 16 log r_{indices[k - 1]} = "
                f"{PRODL_GROWTH * log_r[indices[k - 1]]:.6g}"
            )

    # 3. Recurrence
    deltas = [10.0 / math.sqrt(log_r[n]) for n in indices]
    for k, delta in enumerate(deltas, start=1):
        if delta > 4.0 ** -k * (1 + 1e-15):
            raise InvalidInstance(f"delta_{k} = {delta:.6g} exceeds 4^-{k}")
    delta_at = dict(zip(indices, deltas))
    L = [3.0]
    for n in range(1, len(log_r) + 1):
        L.append(L[n - 1] * (1.0 - delta_at[n - 1]) if (n - 1) in delta_at else 3.0)

    instance = ProdLInstance(log_r, indices, L, deltas)
    logger.info("prodL instance with %d subsequence terms: min L = %.6f", len(indices), instance.min_L)
    return instance


def tight_instance(k_count: int = 20) -> ProdLInstance:
    """Consecutive subsequence with log r_{n_k} = 1600 * 16^(k-1), where every delta_{n_k} = 4^-k."""
    if k_count < 0:
        raise InvalidInstance("k_count must be >= 0")
    if k_count == 0:
        return prodL_sequence([PRODL_MIN_LOG_R0], [])
    log_r = [PRODL_MIN_LOG_R0 * PRODL_GROWTH ** k for k in range(k_count)]
    return prodL_sequence(log_r, list(range(k_count)))


# --- Primary-factor lemma ---


def theta_candidates(m: int) -> List[float]:
    """
    Angles with cos m theta < 0 and cos (m+1) theta = 0 (m even, m angles), or
    cos (m-1) theta < 0, cos m theta = 0 and cos (m+1) theta > 0 (m odd, m - 1 angles).
    """
    if m < 2:
        raise ParameterOutOfRange(f"m must be >= 2, got {m}")
    if m % 2 == 0:
        base = [(4 * k - 1) * math.pi / (2 * (m + 1)) for k in range(1, m // 2 + 1)]
    else:
        base = [(4 * k - 1) * math.pi / (2 * m) for k in range(1, (m - 1) // 2 + 1)]
    return sorted(base + [t + math.pi for t in base])


def sign_conditions_hold(m: int, theta: float, tolerance: float = SIGN_TOLERANCE) -> bool:
    if m % 2 == 0:
        return math.cos(m * theta) < 0 and abs(math.cos((m + 1) * theta)) <= tolerance
    return (math.cos((m - 1) * theta) < 0 and abs(math.cos(m * theta)) <= tolerance
            and math.cos((m + 1) * theta) > 0)


def log_primary_on_ray(m: int, theta: float, T) -> np.ndarray:
    """log|E(T e^{i theta}, m)| for real T."""
    T = np.asarray(T, dtype=np.float64)
    cos_t = math.cos(theta)
    direct = 0.5 * np.log1p(T * T - 2.0 * T * cos_t)
    for j in range(1, m + 1):
        direct = direct + T ** j * math.cos(j * theta) / j

    # -Re sum_{j>m} w^j / j avoids the cancellation near T = 0
    small = np.minimum(np.abs(T), SERIES_LIMIT)
    series = np.zeros_like(small)
    for j in range(m + SERIES_TERMS, m, -1):
        series = series - np.copysign(small, T) ** j * math.cos(j * theta) / j
    return np.where(np.abs(T) < SERIES_LIMIT, series, direct)


def log_primary_derivative(m: int, theta: float, T) -> np.ndarray:
    """d/dT log|E(T e^{i theta}, m)| = (T^{m+1} cos m theta - T^m cos (m+1) theta) / |1 - T e^{i theta}|^2."""
    T = np.asarray(T, dtype=np.float64)
    numerator = T ** (m + 1) * math.cos(m * theta) - T ** m * math.cos((m + 1) * theta)
    return numerator / (1.0 - 2.0 * T * math.cos(theta) + T * T)


def ray_profile(m: int, theta: float, T_grid: Optional[Sequence[float]] = None) -> RayProfile:
    """
    Evaluates log|E| and its closed-form T-derivative along the ray, checks the
    sign pattern and fits C, T_0 in log|E| <= -C |T|^p.

    T_0 is the smallest grid |T| from which every ratio -log|E| / |T|^p stays within
    5% of its value at the largest |T|; C is the smallest ratio from T_0 on.

    Args:
        m: factor index (>= 2).
        theta: a candidate angle.
        T_grid: real abscissae, default 2001 points on [-100, 100].

    Returns:
        RayProfile.
    """
    if m < 2:
        raise BadAngle(f"the decay lemma needs m >= 2, got {m}")
    if not sign_conditions_hold(m, theta):
        raise BadAngle(f"theta = {theta:.12g} fails the sign conditions for m = {m}")
    T = np.linspace(-100.0, 100.0, 2001) if T_grid is None else np.asarray(T_grid, dtype=np.float64)

    values = log_primary_on_ray(m, theta, T)
    derivative = log_primary_derivative(m, theta, T)
    power = m if m % 2 == 0 else m - 1

    nonpositive = bool(np.all(values <= SIGN_TOLERANCE))
    negative_side, positive_side = T < 0, T > 0
    sign_ok = bool(np.all(derivative[negative_side] > 0) and np.all(derivative[positive_side] < 0))

    fitted_C, fitted_T0 = _fit_decay(T, values, power)
    logger.debug("ray profile m=%d theta=%.6f: C=%.6g T0=%.6g", m, theta, fitted_C, fitted_T0)
    return RayProfile(m, float(theta), T, values, derivative, power, fitted_C, fitted_T0,
                      nonpositive, sign_ok)


def _fit_decay(T: np.ndarray, values: np.ndarray, power: int):
    abs_t = np.abs(T)
    keep = abs_t > 0
    if not np.any(keep):
        return 0.0, 0.0
    abs_t, ratio = abs_t[keep], -values[keep] / abs_t[keep] ** power
    order = np.argsort(abs_t, kind="stable")
    abs_t, ratio = abs_t[order], ratio[order]

    reference = ratio[-1]
    if not reference > 0:
        return float(np.min(ratio)), float(abs_t[-1])
    within = np.abs(ratio - reference) <= FIT_BAND * reference
    # suffix: every point from here outward is within the band
    stable = np.logical_and.accumulate(within[::-1])[::-1]
    start = int(np.argmax(stable))
    return float(np.min(ratio[start:])), float(abs_t[start])


def finite_difference_error(profile: RayProfile, min_distance: float = 1e-2) -> float:
    """
    Largest relative gap between the closed-form derivative and central differences
    with step 1e-5 max(1, |T|), over grid points with |T e^{i theta} - 1| > min_distance.
    """
    T = profile.T_grid
    h = 1e-5 * np.maximum(1.0, np.abs(T))
    numeric = (log_primary_on_ray(profile.m, profile.theta, T + h)
               - log_primary_on_ray(profile.m, profile.theta, T - h)) / (2.0 * h)
    distance = np.sqrt(1.0 - 2.0 * T * math.cos(profile.theta) + T * T)
    use = distance > min_distance
    scale = np.maximum(np.abs(profile.derivative_values), 1e-300)
    gaps = np.abs(numeric - profile.derivative_values) / scale
    # the derivative vanishes at T = 0; compare absolutely there
    gaps = np.where(np.abs(profile.derivative_values) < 1e-12, np.abs(numeric - profile.derivative_values), gaps)
    return float(np.max(gaps[use])) if np.any(use) else 0.0
