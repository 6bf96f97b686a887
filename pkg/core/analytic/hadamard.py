"""
Log-space evaluation of Hadamard products

    f(z) = z^n * exp(Q(z)) * prod_k E(z / a_k, m) ** mult_k

with a per-point truncation error estimate.

Finite lists are summed directly. Power-law sequences are summed up to a cutoff K
and the rest is replaced by an Euler-Maclaurin correction (integral of the term
function minus half the boundary term minus a twelfth of its derivative), whose
remainder is bounded analytically; K doubles until the bound falls below the
tolerance. Recursive sequences are summed until the elementary bound
|log E(w, m)| <= 2|w|^(m+1) on the omitted levels is small enough.
"""
import math
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import integrate, optimize

from core.config import load_runtime_config_cached
from core.errors import (
    CutoffTooSmall,
    EvaluationOverflow,
    InvalidSpec,
    MixedSignZeros,
    ParameterOutOfRange,
    TailNotConvergent,
)
from core.models.functions import (
    EntireFunctionSpec,
    ExplicitZeros,
    LogComplexValue,
    PowerLawZeros,
    RecursiveZeros,
    ZeroBlock,
    ZeroSequence,
    wrap_angle,
)

logger = logging.getLogger(__name__)

# |z - a| < ZERO_HIT * |a| counts as sitting on the zero a
ZERO_HIT = 1e-12

SERIES_RADIUS = math.log(0.1)
SERIES_TERMS = 24
BIG_LOG = 30.0
OVERFLOW_LOG = 700.0

# complex matrix entries per evaluation chunk
CHUNK_ELEMENTS = 1 << 21

FIRST_LEVELS = 64
MIN_CLEARANCE = 0.25
FAR_RATIO_LOG = math.log(1e-3)
FAR_SERIES_TERMS = 8
FLOOR_RELATIVE = 1e-11

SQUARE_CLOSED_FORMS = {"cos_sqrt": "cos", "hardy2": "sinc"}


@dataclass
class PointValues:
    """Vectorized evaluation result; log_modulus = -inf marks a zero of f."""
    log_modulus: np.ndarray
    argument: np.ndarray
    error: np.ndarray

    def at(self, index: int) -> LogComplexValue:
        if self.log_modulus.flat[index] == -np.inf:
            return LogComplexValue.zero()
        return LogComplexValue(float(self.log_modulus.flat[index]), float(self.argument.flat[index]))


# ---------------------------------------------------------------------------
# Primary factors
# ---------------------------------------------------------------------------

def _log_one_minus(log_rho, phi):
    """Re and Im of log(1 - w) for w = exp(log_rho + i phi), |w| not huge."""
    rho = np.exp(log_rho)
    cos_phi = np.cos(phi)
    sin_half = np.sin(0.5 * phi)
    # |1 - w|^2 written two ways: log1p is exact for small rho, the second form near |w| = 1
    small = 0.5 * np.log1p(np.maximum(rho * rho - 2.0 * rho * cos_phi, -1.0))
    near = 0.5 * np.log(np.expm1(log_rho) ** 2 + 4.0 * rho * sin_half * sin_half)
    re = np.where(rho < 0.5, small, near)
    im = np.arctan2(-rho * np.sin(phi), 1.0 - rho * cos_phi)
    return re, im


def log_primary_points(log_rho, phi, m: int) -> np.ndarray:
    """
    log E(w, m) for w = exp(log_rho + i*phi), elementwise.

    Args:
        log_rho: log|w| (array, -inf allowed).
        phi: arg w (array).
        m: factor index.

    Returns:
        complex array; the imaginary part is the continuous branch built from
        log(1 - w) with principal argument.
    """
    log_rho, phi = np.broadcast_arrays(np.asarray(log_rho, dtype=np.float64),
                                       np.asarray(phi, dtype=np.float64))
    out = np.zeros(log_rho.shape, dtype=np.complex128)

    with np.errstate(all="ignore"):
        big = log_rho > BIG_LOG
        series = (log_rho < SERIES_RADIUS) & (m >= 1)
        direct = ~(big | series)

        if np.any(direct):
            lr, ph = log_rho[direct], phi[direct]
            re, im = _log_one_minus(lr, ph)
            val = re + 1j * im
            for j in range(1, m + 1):
                val = val + np.exp(j * (lr + 1j * ph)) / j
            out[direct] = val

        if np.any(series):
            # -sum_{j>m} w^j / j, Horner in w
            w = np.exp(log_rho[series] + 1j * phi[series])
            acc = np.zeros(w.shape, dtype=np.complex128)
            for i in reversed(range(SERIES_TERMS)):
                acc = acc * w + 1.0 / (m + 1 + i)
            out[series] = -(w ** (m + 1)) * acc

        if np.any(big):
            lr, ph = log_rho[big], phi[big]
            # log(1 - w) = log(-w) + log(1 - 1/w)
            re, im = _log_one_minus(-lr, -ph)
            val = (lr + re) + 1j * (wrap_angle(ph - np.pi) + im)
            if m >= 1:
                if np.any(m * lr > OVERFLOW_LOG):
                    raise EvaluationOverflow(
                        f"polynomial part of E(w, {m}) overflows at log|w| = {float(np.max(lr)):.6g}"
                    )
                for j in range(1, m + 1):
                    val = val + np.exp(j * (lr + 1j * ph)) / j
            out[big] = val
    return out


def primary_factor_log(z: complex, m: int) -> LogComplexValue:
    """
    log E(z, m) = log(1 - z) + z + z^2/2 + ... + z^m/m.

    Args:
        z: complex point.
        m: nonnegative factor index.

    Returns:
        LogComplexValue, the zero sentinel at z = 1.
    """
    if m < 0:
        raise InvalidSpec(f"factor index must be >= 0, got {m}")
    z = complex(z)
    if abs(z - 1.0) < ZERO_HIT:
        return LogComplexValue.zero()
    if z == 0:
        return LogComplexValue(0.0, 0.0)
    value = log_primary_points(math.log(abs(z)), math.atan2(z.imag, z.real), m)
    return LogComplexValue(float(value.real), wrap_angle(float(value.imag)))


def _weighted_sum(values: np.ndarray, log_mult: np.ndarray) -> np.ndarray:
    """sum_j mult_j * values[:, j] with mult_j = exp(log_mult_j), safe for huge multiplicities."""
    mult = np.exp(log_mult)
    if np.all(np.isfinite(mult)) and np.all(np.isfinite(values)):
        return values @ mult
    with np.errstate(all="ignore"):
        re = np.sign(values.real) * np.exp(log_mult[None, :] + np.log(np.abs(values.real)))
        im = np.sign(values.imag) * np.exp(log_mult[None, :] + np.log(np.abs(values.imag)))
    re = np.where(values.real == 0.0, 0.0, re)
    im = np.where(values.imag == 0.0, 0.0, im)
    return re.sum(axis=1) + 1j * im.sum(axis=1)


def _accumulate(log_r: np.ndarray, theta: np.ndarray, block: ZeroBlock, m: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Sums mult * log E(z / a, m) over a zero block for every point.

    Returns:
        (complex sums, bool mask of points sitting on a zero of the block).
    """
    n = len(log_r)
    total = np.zeros(n, dtype=np.complex128)
    hit = np.zeros(n, dtype=bool)
    if n == 0 or len(block) == 0:
        return total, hit

    step = max(1, CHUNK_ELEMENTS // n)
    for start in range(0, len(block), step):
        stop = start + step
        log_abs = block.log_abs[start:stop]
        shift = np.where(block.negative[start:stop], np.pi, 0.0)

        log_rho = log_r[:, None] - log_abs[None, :]
        phi = theta[:, None] - shift[None, :]

        close = np.abs(log_rho) < 1e-11
        if np.any(close):
            rows, cols = np.nonzero(close)
            lr = log_rho[rows, cols]
            ph = phi[rows, cols]
            dist2 = np.expm1(lr) ** 2 + 4.0 * np.exp(lr) * np.sin(0.5 * ph) ** 2
            on_zero = dist2 < ZERO_HIT * ZERO_HIT
            hit[rows[on_zero]] = True
            # keep the matrix finite; those points are reported as zeros anyway
            log_rho[rows[on_zero], cols[on_zero]] = -np.inf

        values = log_primary_points(log_rho, phi, m)
        total += _weighted_sum(values, block.log_mult[start:stop])
    return total, hit


# ---------------------------------------------------------------------------
# Power-law tails
# ---------------------------------------------------------------------------

def _sign_shifts(generator: PowerLawZeros):
    return (0.0, np.pi) if generator.symmetric else (0.0,)


def _boundary_terms(generator: PowerLawZeros, m: int, log_r, theta, level: int):
    """
    -g(U)/2 - g'(U)/12 summed over signs, with the remainder bound of the
    first-order Euler-Maclaurin formula started at U = level + offset.

    Returns:
        (complex correction, remainder bound, mask where the bound is usable)
    """
    s, beta = generator.exponent, generator.log_exponent
    U = level + generator.offset
    log_u = math.log(U)
    log_rho_u = log_r - float(generator.log_modulus_at(U))
    sigma_u = s + (beta / log_u if beta else 0.0)
    mult = float(generator.multiplicity)

    value = np.zeros(len(log_r), dtype=np.complex128)
    bound = np.zeros(len(log_r))
    usable = log_rho_u < 300.0

    with np.errstate(all="ignore"):
        rho_u = np.exp(np.minimum(log_rho_u, 300.0))
        for shift in _sign_shifts(generator):
            phi = theta - shift
            cos_phi = np.cos(phi)
            sin_abs = np.abs(np.sin(phi))
            dist_u = np.sqrt(np.expm1(np.minimum(log_rho_u, 300.0)) ** 2
                             + 4.0 * rho_u * np.sin(0.5 * phi) ** 2)

            # smallest |1 - w| and largest |w / (1 - w)| over u >= U
            d_min = np.where(cos_phi <= 0.0, 1.0, np.where(rho_u >= cos_phi, sin_abs, dist_u))
            q_max = np.where((cos_phi > 0.0) & (rho_u * cos_phi >= 1.0),
                             1.0 / np.maximum(sin_abs, 1e-300), rho_u / np.maximum(dist_u, 1e-300))
            usable &= d_min >= MIN_CLEARANCE

            spread = (sigma_u * ((m + 1) * sigma_u + 1.0) + sigma_u * sigma_u * q_max
                      + (beta / log_u ** 2 if beta else 0.0))
            log_ra = ((m + 1) * log_rho_u + np.log(spread)
                      - np.log(12.0 * d_min * U * (s * (m + 1) + 1.0)))
            log_rb = (m * log_rho_u if m else 0.0) + np.log(q_max * spread) - math.log(12.0 * U * (s * m + 1.0))
            bound += mult * np.exp(np.minimum(log_ra, log_rb))

            g_u = log_primary_points(log_rho_u, phi, m)
            log_one_minus = log_primary_points(log_rho_u, phi, 0)
            dg_u = (sigma_u / U) * np.exp((m + 1) * (log_rho_u + 1j * phi) - log_one_minus)
            value += mult * (-0.5 * g_u - dg_u / 12.0)

    usable &= np.isfinite(bound) & np.isfinite(value.real) & np.isfinite(value.imag)
    return value, bound, usable


def power_law_log_index(generator: PowerLawZeros, target: float, y_low: float) -> float:
    """Smallest y >= y_low with log a(e^y) >= target."""
    log_c = math.log(generator.scale)
    s, beta = generator.exponent, generator.log_exponent

    def excess(y):
        out = log_c + s * y - target
        if beta:
            out += beta * math.log(y)
        return out

    if excess(y_low) >= 0.0:
        return y_low
    y_high = max(y_low, (target - log_c) / s, 1.0) + 1.0
    while excess(y_high) < 0.0:
        y_high *= 2.0
    return optimize.brentq(excess, y_low, y_high, xtol=1e-12)


def _log_power_integral(p: float, q: float, y0: float) -> float:
    """log of int_{e^y0}^inf u^-p (ln u)^-q du."""
    if q == 0.0:
        return (1.0 - p) * y0 - math.log(p - 1.0)
    if abs(p - 1.0) < 1e-12:
        return (1.0 - q) * math.log(y0) - math.log(q - 1.0)
    value, _ = integrate.quad(lambda t: math.exp((1.0 - p) * t - q * math.log1p(t / y0)), 0.0, np.inf)
    return (1.0 - p) * y0 - q * math.log(y0) + math.log(value)


def _far_integral(generator: PowerLawZeros, m: int, log_r, theta, y_far: float):
    """
    int_{u_far}^inf of the term function, from the power series of log E; every
    point has |z / a(u)| <= 1e-3 there.
    """
    s, beta = generator.exponent, generator.log_exponent
    log_c = math.log(generator.scale)
    mult = float(generator.multiplicity)
    total = np.zeros(len(log_r), dtype=np.complex128)
    error = np.zeros(len(log_r))

    for shift in _sign_shifts(generator):
        phi = theta - shift
        for j in range(m + 1, m + FAR_SERIES_TERMS + 2):
            log_i = _log_power_integral(s * j, beta * j, y_far)
            with np.errstate(all="ignore"):
                term = np.exp(j * (log_r - log_c) + log_i + 1j * j * phi) / j
            if j == m + FAR_SERIES_TERMS + 1:
                # first dropped term, doubled for the rest of the series
                error += 2.0 * mult * np.abs(term)
            else:
                total -= mult * term
    return total, error


def _tail_integral(generator: PowerLawZeros, m: int, log_r, theta, level: int, tolerance: float):
    """int_U^inf sum over signs of mult * log E(z / a(u), m) du, with an error estimate."""
    U = level + generator.offset
    log_u = math.log(U)
    y_far = power_law_log_index(generator, float(np.max(log_r)) - FAR_RATIO_LOG, log_u)
    n = len(log_r)
    mult = float(generator.multiplicity)
    shifts = _sign_shifts(generator)

    def integrand(t):
        u = U * math.exp(t)
        log_rho = log_r - float(generator.log_modulus_at(u))
        acc = np.zeros(n, dtype=np.complex128)
        for shift in shifts:
            acc += log_primary_points(log_rho, theta - shift, m)
        acc *= mult * u
        return np.concatenate([acc.real, acc.imag])

    t_far = y_far - log_u
    if t_far > 0.0:
        result, near_error = integrate.quad_vec(integrand, 0.0, t_far, epsabs=tolerance / 8.0,
                                                epsrel=1e-12, norm="max", limit=4000)
        near = result[:n] + 1j * result[n:]
    else:
        near, near_error = np.zeros(n, dtype=np.complex128), 0.0

    far, far_error = _far_integral(generator, m, log_r, theta, y_far)
    return near + far, far_error + near_error


def _power_law_product(generator: PowerLawZeros, m: int, log_r, theta, tolerance: float, max_zeros: int):
    n = len(log_r)
    total = np.zeros(n, dtype=np.complex128)
    error = np.zeros(n)
    hit = np.zeros(n, dtype=bool)
    pending = np.ones(n, dtype=bool)

    summed_through = generator.start - 1
    level = generator.start - 1 + FIRST_LEVELS
    while True:
        idx = np.flatnonzero(pending)
        block = generator.level_block(summed_through + 1, level + 1)
        partial, on_zero = _accumulate(log_r[idx], theta[idx], block, m)
        total[idx] += partial
        hit[idx] |= on_zero
        summed_through = level

        pending[idx[on_zero]] = False
        live = idx[~on_zero]
        if live.size:
            correction, bound, usable = _boundary_terms(generator, m, log_r[live], theta[live], level)
            candidates = live[usable]
            if candidates.size:
                integral, integral_error = _tail_integral(
                    generator, m, log_r[candidates], theta[candidates], level, tolerance)
                tail = integral + correction[usable]
                tail_error = bound[usable] + integral_error
                floor = FLOOR_RELATIVE * np.abs(total[candidates] + tail)
                accept = tail_error <= np.maximum(tolerance, floor)
                total[candidates[accept]] += tail[accept]
                error[candidates[accept]] = tail_error[accept]
                pending[candidates[accept]] = False

        if not pending.any():
            break
        levels_used = level - generator.start + 1
        if levels_used * generator.signs_per_level >= max_zeros:
            raise TailNotConvergent(
                f"power-law tail still above {tolerance:g} after {levels_used * generator.signs_per_level} zeros"
            )
        level = generator.start - 1 + 2 * levels_used
        logger.debug("power-law cutoff raised to level %d for %d points", level, int(pending.sum()))

    return total, error, hit


# ---------------------------------------------------------------------------
# Recursive tails
# ---------------------------------------------------------------------------

def _recursive_product(generator: RecursiveZeros, m: int, log_r, theta, tolerance: float):
    levels = generator.levels()
    block = generator.level_block(levels)
    log_r_max = float(np.max(log_r))
    if log_r_max == -math.inf:
        return np.zeros(len(log_r), dtype=np.complex128), np.zeros(len(log_r)), np.zeros(len(log_r), dtype=bool)

    # 2 * mult * (r / |a|)^(m+1) per omitted entry, valid once r / |a| <= 1/2
    log_terms = math.log(2.0) + block.log_mult + (m + 1) * (log_r_max - block.log_abs)
    clear = block.log_abs - log_r_max >= math.log(2.0)

    if len(log_terms) >= 2 and log_terms[-1] - log_terms[-2] <= -math.log(2.0):
        beyond = log_terms[-1]
    else:
        beyond = np.inf
    suffix = np.logaddexp.accumulate(np.append(log_terms, beyond)[::-1])[::-1]
    cleared_from = np.logical_and.accumulate(clear[::-1])[::-1]

    cutoff = None
    for j in range(len(log_terms) + 1):
        if j < len(log_terms) and not cleared_from[j]:
            continue
        if suffix[j] <= math.log(tolerance):
            cutoff = j
            break
    if cutoff is None:
        raise TailNotConvergent(
            f"recursive zeros up to {len(levels)} levels cannot bound the tail at log r = {log_r_max:.6g}"
        )

    kept = ZeroBlock(block.log_abs[:cutoff], block.negative[:cutoff], block.log_mult[:cutoff])
    total, hit = _accumulate(log_r, theta, kept, m)
    error = np.full(len(log_r), math.exp(suffix[cutoff]))
    logger.debug("recursive cutoff after %d entries, tail bound %.3g", cutoff, error[0])
    return total, error, hit


# ---------------------------------------------------------------------------
# Public evaluation
# ---------------------------------------------------------------------------

def eval_log_points(spec: EntireFunctionSpec, log_r, theta, tail_tolerance: float = 1e-8) -> PointValues:
    """
    Evaluates log f at z = exp(log_r + i*theta) for arrays of points.

    Args:
        spec: function to evaluate.
        log_r: log|z| (array, -inf for z = 0).
        theta: arg z (array).
        tail_tolerance: absolute log-modulus error allowed for the tail.

    Returns:
        PointValues with the broadcast shape of the inputs.
    """
    if not tail_tolerance > 0:
        raise ParameterOutOfRange(f"tail tolerance must be positive, got {tail_tolerance}")
    log_r, theta = np.broadcast_arrays(np.asarray(log_r, dtype=np.float64),
                                       np.asarray(theta, dtype=np.float64))
    shape = log_r.shape
    log_r = log_r.ravel().copy()
    theta = theta.ravel().copy()

    if spec.delegates_to_source():
        source_values = eval_log_points(spec.square_of, 2.0 * log_r, 2.0 * theta, tail_tolerance)
        return PointValues(source_values.log_modulus.reshape(shape),
                           source_values.argument.reshape(shape),
                           source_values.error.reshape(shape))

    config = load_runtime_config_cached()
    m = spec.factor_index
    generator = spec.generator

    base_re, base_im = spec.exponent_poly.evaluate(log_r, theta)
    base_re = np.broadcast_to(base_re, log_r.shape).astype(np.float64)
    base_im = np.broadcast_to(base_im, log_r.shape).astype(np.float64)
    if spec.origin_power:
        base_re = base_re + spec.origin_power * log_r
        base_im = base_im + spec.origin_power * theta

    if isinstance(generator, ExplicitZeros):
        product, hit = _accumulate(log_r, theta, generator.entry_block(0, len(generator.entries)), m)
        error = np.zeros(len(log_r))
    elif isinstance(generator, PowerLawZeros):
        product, error, hit = _power_law_product(generator, m, log_r, theta, tail_tolerance, config.max_zeros)
    elif isinstance(generator, RecursiveZeros):
        product, error, hit = _recursive_product(generator, m, log_r, theta, tail_tolerance)
    else:
        raise InvalidSpec(f"unsupported zero generator {type(generator).__name__}")

    with np.errstate(invalid="ignore"):
        log_modulus = base_re + product.real
        argument = wrap_angle(base_im + product.imag)
    argument = np.asarray(argument, dtype=np.float64).reshape(log_r.shape)

    on_zero = hit | (log_modulus == -np.inf)
    if spec.origin_power:
        on_zero |= log_r == -np.inf
    log_modulus = np.where(on_zero, -np.inf, log_modulus)
    argument = np.where(on_zero | ~np.isfinite(argument), 0.0, argument)

    if np.any(np.isnan(log_modulus)):
        raise EvaluationOverflow(f"log-modulus of {spec.label()} is not a number at some points")

    return PointValues(log_modulus.reshape(shape), argument.reshape(shape), error.reshape(shape))


def _polar(z: complex) -> Tuple[float, float]:
    z = complex(z)
    if z == 0:
        return -math.inf, 0.0
    return math.log(abs(z)), math.atan2(z.imag, z.real)


def eval_log(spec: EntireFunctionSpec, z: complex, tail_tolerance: float = 1e-8) -> LogComplexValue:
    """
    log f(z) with |log-modulus error| <= tail_tolerance.

    Args:
        spec: function to evaluate.
        z: complex point.
        tail_tolerance: allowed tail error.

    Returns:
        LogComplexValue, the zero sentinel when z lies on a zero.
    """
    log_r, theta = _polar(z)
    return eval_log_points(spec, [log_r], [theta], tail_tolerance).at(0)


def partial_log(spec: EntireFunctionSpec, z: complex, cutoff_index: int) -> LogComplexValue:
    """
    Truncated product over the first cutoff_index zeros, no tail correction.
    """
    if cutoff_index < 0:
        raise ParameterOutOfRange("cutoff index must be >= 0")
    log_r, theta = _polar(z)
    lr = np.array([log_r])
    th = np.array([theta])
    re, im = spec.exponent_poly.evaluate(lr, th)
    re, im = float(np.ravel(re)[0]), float(np.ravel(im)[0])
    if spec.origin_power:
        if log_r == -math.inf:
            return LogComplexValue.zero()
        re += spec.origin_power * log_r
        im += spec.origin_power * theta
    product, hit = _accumulate(lr, th, spec.generator.entry_block(0, cutoff_index), spec.factor_index)
    if hit[0]:
        return LogComplexValue.zero()
    return LogComplexValue(re + float(product.real[0]), wrap_angle(im + float(product.imag[0])))


# ---------------------------------------------------------------------------
# Tail bounds
# ---------------------------------------------------------------------------

def _power_law_tail_integral(generator: PowerLawZeros, log_r: float, level: int, power: int) -> float:
    """int_{level}^inf (r / a(k + offset))^power dk."""
    U = level + generator.offset
    s, beta = generator.exponent, generator.log_exponent
    log_rho = log_r - float(generator.log_modulus_at(U))
    log_u = math.log(U)
    if beta == 0.0:
        return math.exp(power * log_rho + log_u) / (s * power - 1.0)
    if abs(s * power - 1.0) < 1e-12:
        return math.exp(power * log_rho + log_u) * log_u / (beta * power - 1.0)
    # substitute u = U e^t
    value, _ = integrate.quad(
        lambda t: math.exp(-(s * power - 1.0) * t - beta * power * math.log1p(t / log_u)), 0.0, np.inf)
    return math.exp(power * log_rho + log_u) * value


def tail_bound(spec: EntireFunctionSpec, r: float, cutoff_index: int) -> float:
    """
    Upper bound on sum over omitted zeros of mult * |log E(z / a, m)| on |z| = r.

    Uses |log E(w, m)| <= 2|w|^(m+1) for |w| <= 1/2.

    Args:
        spec: function.
        r: circle radius.
        cutoff_index: number of zero entries kept.

    Returns:
        float bound (0 when nothing is omitted).
    """
    if not r > 0:
        raise ParameterOutOfRange(f"radius must be positive, got {r}")
    if cutoff_index < 0:
        raise ParameterOutOfRange("cutoff index must be >= 0")
    log_r = math.log(r)
    power = spec.factor_index + 1
    generator = spec.generator
    log_two_r = log_r + math.log(2.0)

    if isinstance(generator, ExplicitZeros):
        omitted = generator.entries[cutoff_index:]
        if not omitted:
            return 0.0
        if omitted[0].log_abs < log_two_r - 1e-15:
            raise CutoffTooSmall(f"omitted zero {omitted[0].location:.6g} lies inside |z| < {2 * r:.6g}")
        return float(sum(2.0 * math.exp(e.log_multiplicity + power * (log_r - e.log_abs)) for e in omitted))

    if isinstance(generator, PowerLawZeros):
        level = generator.level_of_entry(cutoff_index)
        first = float(generator.log_modulus_at(level + generator.offset))
        if first < log_two_r - 1e-15:
            raise CutoffTooSmall(f"omitted zero e^{first:.6g} lies inside |z| < {2 * r:.6g}")
        head = math.exp(power * (log_r - first))
        body = _power_law_tail_integral(generator, log_r, level, power)
        return 2.0 * generator.multiplicity * generator.signs_per_level * (head + body)

    if isinstance(generator, RecursiveZeros):
        block = generator.level_block(generator.levels())
        if cutoff_index >= len(block):
            raise TailNotConvergent("cutoff lies beyond the materialized construction levels")
        log_abs = block.log_abs[cutoff_index:]
        if log_abs[0] < log_two_r - 1e-15:
            raise CutoffTooSmall(f"omitted zero e^{log_abs[0]:.6g} lies inside |z| < {2 * r:.6g}")
        log_terms = math.log(2.0) + block.log_mult[cutoff_index:] + power * (log_r - log_abs)
        total = float(np.exp(np.logaddexp.reduce(log_terms)))
        if len(log_terms) >= 2:
            # geometric remainder past the last materialized level
            ratio = math.exp(log_terms[-1] - log_terms[-2])
            total += math.exp(log_terms[-1]) * (ratio / (1.0 - ratio) if ratio < 1 else math.inf)
        return total

    raise InvalidSpec(f"unsupported zero generator {type(generator).__name__}")


# ---------------------------------------------------------------------------
# Spec transforms and predicates
# ---------------------------------------------------------------------------

def square_substitute(spec: EntireFunctionSpec) -> EntireFunctionSpec:
    """
    Spec of g(z) = f(z^2): zeros at +-sqrt(a_k), exponent Q(z^2), origin power 2n,
    factor index recomputed for the new sequence.
    """
    if -1 in spec.zeros.signs():
        raise MixedSignZeros(f"{spec.label()} has negative zeros; f(z^2) would have non-real zeros")
    rooted = spec.generator.square_root()
    factor_index = rooted.minimal_factor_index()
    logger.info("square substitution of %s: factor index %d -> %d", spec.label(), spec.factor_index, factor_index)
    return EntireFunctionSpec(
        origin_power=2 * spec.origin_power,
        exponent_poly=spec.exponent_poly.compose_square(),
        zeros=ZeroSequence(rooted),
        factor_index=factor_index,
        closed_form=SQUARE_CLOSED_FORMS.get(spec.closed_form),
        name=f"{spec.label()}(z^2)",
        square_of=spec,
    )


def is_laguerre_polya(spec: EntireFunctionSpec) -> bool:
    """Real entire, real zeros, m <= 1, deg Q <= 2 with nonpositive z^2 coefficient."""
    poly = spec.exponent_poly
    if poly.degree > 2:
        return False
    if poly.degree == 2 and poly.coefficient(2) > 0:
        return False
    return spec.factor_index <= 1
