"""
Iteration of the minimum modulus r -> m(r) and finite proxies for the escape
property m^n(r) -> infinity.

Radii are carried as log-radii throughout, so orbits can pass 10^300 without
leaving float range.
"""
import math
import logging
from typing import List, Optional

import numpy as np
from scipy import optimize

from core.analytic.modulus import (
    DEFAULT_SAMPLES,
    extend_tilde_scan,
    max_log_modulus,
    min_log_modulus,
    tilde_scan,
)
from core.errors import ParameterOutOfRange
from core.models.functions import EntireFunctionSpec
from core.models.profiles import (
    EquivalenceReport,
    OrbitRecord,
    OrbitStatus,
    PropertyVerdict,
    StrictSeed,
    TildeScan,
)

logger = logging.getLogger(__name__)

ESCAPE_LOG_DEFAULT = 300.0 * math.log(10.0)
ORBIT_TOLERANCE = 1e-7
MAX_CHAIN = 10
PROPERTY_RANGE = (10.0, 1e6)
PROPERTY_GRID_RATIO = 1.05
GRID_SEEDS = 8


def iterate_min_modulus(spec: EntireFunctionSpec, seed: Optional[float] = None, max_iter: int = 50,
                        escape_log_threshold: float = ESCAPE_LOG_DEFAULT, *, log_seed: Optional[float] = None,
                        n_samples: int = DEFAULT_SAMPLES, tail_tolerance: float = ORBIT_TOLERANCE) -> OrbitRecord:
    """
    Iterates r <- m(r) from a seed radius.

    Args:
        spec: function.
        seed: starting radius (or log_seed for radii beyond float range).
        max_iter: number of steps.
        escape_log_threshold: log-threshold whose crossing counts as escape.
        log_seed: log of the seed.
        n_samples: circle samples for each minimum modulus.
        tail_tolerance: evaluation tolerance.

    Returns:
        OrbitRecord with values[0] = log seed.
    """
    if log_seed is None:
        if seed is None or not seed > 0:
            raise ParameterOutOfRange(f"seed must be positive, got {seed}")
        log_seed = math.log(seed)
    if max_iter < 1:
        raise ParameterOutOfRange("max_iter must be >= 1")
    if not math.isfinite(escape_log_threshold):
        raise ParameterOutOfRange("escape threshold must be finite")

    values = [float(log_seed)]
    status = None
    current = float(log_seed)
    for step in range(1, max_iter + 1):
        value = min_log_modulus(spec, log_r=current, n_samples=n_samples, tail_tolerance=tail_tolerance)
        values.append(value)
        logger.debug("orbit step %d: log m = %.12g", step, value)
        if value == -math.inf:
            status = OrbitStatus("HIT_ZERO", step=step)
            break
        if value > escape_log_threshold:
            status = OrbitStatus("ESCAPED", step=step)
            break
        current = value

    if status is None:
        half = len(values) // 2
        if max(values[half:]) <= max(values[:half]):
            status = OrbitStatus("BOUNDED", window_max=max(values))
        else:
            status = OrbitStatus("MAX_ITERATIONS")

    increasing = all(b > a for a, b in zip(values, values[1:]))
    return OrbitRecord(values, status, increasing, escape_log_threshold)


def _strict_start(scan: TildeScan, log_t: float, log_t_max: float) -> Optional[int]:
    """First grid index in [T, T_max] from which log tilde-m(s) > log s holds to T_max."""
    inside = np.flatnonzero((scan.log_radii >= log_t - 1e-12) & (scan.log_radii <= log_t_max + 1e-12))
    if not len(inside):
        return None
    above = scan.running_max[inside] > scan.log_radii[inside]
    if not above[-1]:
        return None
    failing = np.flatnonzero(~above)
    first = 0 if not len(failing) else int(failing[-1]) + 1
    return int(inside[first])


def _tilde_chain(spec, scan: TildeScan, start: float, escape_log: float, max_chain: int, grid_ratio,
                 n_samples, tail_tolerance):
    """
    L_0 = start, L_{n+1} = log tilde-m(e^{L_n}) on the grid, with the argmax grid
    radii u_n (m(u_n) = L_{n+1}). The chain stops after max_chain steps, when it
    stalls, or once L_n leaves the scannable range.
    """
    chain = [start]
    argmaxes = []
    while len(argmaxes) <= max_chain:
        current = chain[-1]
        if current > escape_log:
            break
        scan = extend_tilde_scan(spec, scan, current, grid_ratio, n_samples=n_samples,
                                 tail_tolerance=tail_tolerance)
        nxt = scan.value_at(current)
        argmaxes.append(scan.argmax_log_radius(current))
        chain.append(nxt)
        if not nxt > current:
            break
    return chain, argmaxes, scan


def find_strict_seed(spec: EntireFunctionSpec, T: float, T_max: float, *, grid_ratio: float = 1.02,
                     max_chain: int = MAX_CHAIN, escape_log: float = ESCAPE_LOG_DEFAULT,
                     n_samples: int = DEFAULT_SAMPLES, tail_tolerance: float = ORBIT_TOLERANCE,
                     scan: Optional[TildeScan] = None) -> Optional[StrictSeed]:
    """
    Builds a seed whose orbit increases strictly past a finite threshold.

    Starting from the smallest grid radius T_0 >= T beyond which tilde-m(s) > s,
    the chain L_{n+1} = tilde-m(L_n) is followed for up to max_chain steps. The
    seed is pulled back from the end of the chain: t_N = L_N and t_n is a root of
    m(s) = t_{n+1} below the radius where tilde-m(L_{n+1}) is attained, bracketed
    from the grid point under L_n (moving down the grid, never below T_0, while
    m there exceeds the target). The orbit of t_0 is then iterated forward; if
    rounding breaks it, or no bracket exists, a shorter chain is tried.

    Args:
        spec: function.
        T: lower end of the search range, T >= 1.
        T_max: upper end of the range where tilde-m(s) > s is checked.
        grid_ratio: radius grid ratio.
        max_chain: longest chain tried.
        escape_log: log-radius beyond which the chain is not scanned.
        n_samples: circle samples per radius.
        tail_tolerance: evaluation tolerance.
        scan: an existing tilde scan covering T_max, reused when given.

    Returns:
        StrictSeed, or None when tilde-m(s) > s fails somewhere on the grid.
    """
    if T < 1 or not T_max > T:
        raise ParameterOutOfRange(f"need 1 <= T < T_max, got T={T}, T_max={T_max}")
    log_t, log_t_max = math.log(T), math.log(T_max)
    if scan is None:
        scan = tilde_scan(spec, log_t_max, grid_ratio, n_samples=n_samples, tail_tolerance=tail_tolerance)

    start = _strict_start(scan, log_t, log_t_max)
    if start is None:
        logger.info("tilde-m(s) > s fails on [%g, %g] for %s", T, T_max, spec.label())
        return None

    chain, argmaxes, scan = _tilde_chain(spec, scan, float(scan.log_radii[start]), escape_log, max_chain,
                                         grid_ratio, n_samples, tail_tolerance)
    # usable length: every L_n (n <= N) was scanned and argmaxes[N] exists
    longest = min(len(argmaxes) - 1, max_chain)
    while longest >= 1 and not chain[longest] > chain[longest - 1]:
        longest -= 1
    if longest < 1:
        logger.info("tilde chain from log r = %.6g does not grow", chain[0])
        return None

    def m_log(s):
        return min_log_modulus(spec, log_r=s, n_samples=n_samples, tail_tolerance=tail_tolerance)

    for N in range(longest, 0, -1):
        seed_log = _pull_back(scan, chain, argmaxes, N, m_log, tail_tolerance)
        if seed_log is None:
            continue
        threshold = 0.5 * (chain[N - 1] + chain[N])
        orbit = iterate_min_modulus(spec, max_iter=N + 2, escape_log_threshold=threshold, log_seed=seed_log,
                                    n_samples=n_samples, tail_tolerance=tail_tolerance)
        if orbit.escaped and orbit.strictly_increasing:
            logger.info("strict seed log r = %.12g escapes past %.6g in %d steps", seed_log, threshold,
                        orbit.status.step)
            return StrictSeed(seed_log, threshold, chain[:N + 1], orbit)
        logger.debug("pull-back over %d steps lost monotonicity; shortening", N)
    return None


def _pull_back(scan: TildeScan, chain: List[float], argmaxes: List[float], N: int, m_log,
               tail_tolerance: float) -> Optional[float]:
    """
    t_N = L_N, then t_n with m(t_n) = t_{n+1} for n = N-1 .. 0, every t_n at or
    above L_0. Values within the evaluation slack of the target count as roots.
    """
    first = int(np.searchsorted(scan.log_radii, chain[0], side="right")) - 1
    target = chain[N]
    for n in range(N - 1, -1, -1):
        slack = max(tail_tolerance, ORBIT_TOLERANCE) * max(1.0, abs(target))
        index = int(np.searchsorted(scan.log_radii, chain[n], side="right")) - 1
        hi = argmaxes[n + 1]
        lo = float(scan.log_radii[max(index, 0)])
        if not hi > lo:
            return None
        f_lo = m_log(lo) - target
        # m(lo) above the target: the root lies further down the grid
        while f_lo > slack and index > first:
            index -= 1
            lo = float(scan.log_radii[index])
            f_lo = m_log(lo) - target
        if abs(f_lo) <= slack:
            target = lo
            continue
        if f_lo > slack:
            return None
        f_hi = m_log(hi) - target
        if abs(f_hi) <= slack:
            target = hi
            continue
        if f_hi < 0.0:
            return None
        goal = target
        target = optimize.brentq(lambda s: m_log(s) - goal, lo, hi, xtol=1e-13 * max(1.0, abs(hi)),
                                 rtol=4 * np.finfo(float).eps)
    return target


def check_equivalences(spec: EntireFunctionSpec, T: float, T_max: float, *, grid_ratio: float = 1.02,
                       max_iter: int = 20, n_samples: int = DEFAULT_SAMPLES,
                       tail_tolerance: float = ORBIT_TOLERANCE) -> EquivalenceReport:
    """
    Evaluates finite proxies of the equivalent escape conditions on [T, T_max].

    (a) the strict-seed orbit escapes, or a sampled orbit passes the escape
        horizon min(log T_max, L_N) reached by the tilde chain,
    (b) some computed orbit value exceeds log T_max,
    (c) log tilde-m(t) > log t on the whole grid,
    (d) find_strict_seed succeeds,
    (e) the chain of argmax radii u_{n+1} <= m(u_n) increases strictly.
    Sampled orbits start from GRID_SEEDS log-spaced radii in [T, T_max). The
    report is INCONSISTENT when (c) holds but (a) fails, or when (a) holds while
    tilde-m(t) > t fails at T_max itself.
    """
    if T < 1 or T_max < 10 * T:
        raise ParameterOutOfRange(f"need T >= 1 and T_max >= 10 T, got T={T}, T_max={T_max}")
    log_t, log_t_max = math.log(T), math.log(T_max)
    scan = tilde_scan(spec, log_t_max, grid_ratio, n_samples=n_samples, tail_tolerance=tail_tolerance)
    notes = []

    inside = (scan.log_radii >= log_t - 1e-12) & (scan.log_radii <= log_t_max + 1e-12)
    verdict_c = bool(np.all(scan.running_max[inside] > scan.log_radii[inside]))
    tail = _strict_start(scan, log_t, log_t_max)
    tail_start = None if tail is None else float(scan.log_radii[tail])

    seed = find_strict_seed(spec, T, T_max, grid_ratio=grid_ratio, n_samples=n_samples,
                            tail_tolerance=tail_tolerance, scan=scan)
    verdict_d = seed is not None

    # 1. Sampled orbits, followed until they pass T_max
    horizon = log_t_max if seed is None else min(log_t_max, seed.chain[-1])
    orbits = []
    for log_seed in np.linspace(log_t, log_t_max, GRID_SEEDS, endpoint=False):
        orbits.append(iterate_min_modulus(spec, max_iter=max_iter, escape_log_threshold=log_t_max,
                                          log_seed=float(log_seed), n_samples=n_samples,
                                          tail_tolerance=tail_tolerance))
    peaks = [max(o.values[1:]) for o in orbits]

    # 2. Escape past the horizon vs exceeding T_max
    verdict_a = (seed is not None and seed.orbit.escaped) or any(p > horizon for p in peaks)
    if seed is not None:
        peaks.append(max(seed.orbit.values[1:]))
    verdict_b = any(p > log_t_max for p in peaks)

    # 3. Greedy chain through argmax radii
    chain_start = float(scan.log_radii[np.flatnonzero(inside)[0]]) if np.any(inside) else log_t
    _, argmaxes, scan = _tilde_chain(spec, scan, chain_start, ESCAPE_LOG_DEFAULT, MAX_CHAIN, grid_ratio,
                                     n_samples, tail_tolerance)
    verdict_e = len(argmaxes) >= 2 and all(b > a for a, b in zip(argmaxes, argmaxes[1:]))
    if verdict_e and argmaxes[-1] < horizon:
        notes.append(f"argmax chain reached log r = {argmaxes[-1]:.6g} within {MAX_CHAIN} steps")
    if tail_start is not None and not verdict_c:
        notes.append(f"tilde-m(t) > t holds from log t = {tail_start:.6g} to T_max")

    verdicts = {"a": verdict_a, "b": verdict_b, "c": verdict_c, "d": verdict_d, "e": verdict_e}
    report = EquivalenceReport(T, T_max, verdicts, seed, notes, tail_start=tail_start)
    if not report.consistent:
        logger.warning("escape proxies disagree for %s: %s", spec.label(), verdicts)
    return report


def classify_property(spec: EntireFunctionSpec, r_min: float = PROPERTY_RANGE[0], r_max: float = PROPERTY_RANGE[1],
                      *, grid_ratio: float = PROPERTY_GRID_RATIO, n_samples: int = DEFAULT_SAMPLES,
                      tail_tolerance: float = 1e-6) -> PropertyVerdict:
    """
    Finite-horizon verdict on m^n(r) -> infinity over [r_min, r_max].

    Holds when find_strict_seed returns an escaping seed; FailsEvidence when
    log tilde-m(r) - log r stays below a negative constant and does not grow
    over the range; Inconclusive otherwise.
    """
    log_min, log_max = math.log(r_min), math.log(r_max)
    scan = tilde_scan(spec, log_max, grid_ratio, n_samples=n_samples, tail_tolerance=tail_tolerance)

    seed = find_strict_seed(spec, max(r_min, 1.0), r_max, grid_ratio=grid_ratio, n_samples=n_samples,
                            tail_tolerance=tail_tolerance, scan=scan)
    if seed is not None:
        return PropertyVerdict("HOLDS", witness=seed, details=f"orbit escapes past log r = {seed.escape_log_threshold:.6g}")

    inside = (scan.log_radii >= log_min - 1e-12) & (scan.log_radii <= log_max + 1e-12)
    gaps = scan.running_max[inside] - scan.log_radii[inside]
    bound = float(np.max(gaps))
    half = len(gaps) // 2
    decreasing = half > 0 and float(np.max(gaps[half:])) <= float(np.max(gaps[:half])) + 1e-12
    if bound < 0 and decreasing:
        return PropertyVerdict("FAILS_EVIDENCE", bound=bound,
                               details=f"tilde-m(r)/r <= exp({bound:.6g}) on [{r_min:g}, {r_max:g}]")
    return PropertyVerdict("INCONCLUSIVE", bound=bound, details="no escaping seed and no uniform gap")


def v_condition_power(spec: EntireFunctionSpec, R: float, R_max: float, p_max: int = 8, *,
                      grid_ratio: float = 1.05, n_samples: int = DEFAULT_SAMPLES,
                      tail_tolerance: float = 1e-6) -> Optional[int]:
    """
    Smallest p <= p_max with tilde-m^p(s) >= M(s) for every grid radius s in [R, R_max].
    """
    if not R_max > R > 0:
        raise ParameterOutOfRange(f"need 0 < R < R_max, got R={R}, R_max={R_max}")
    log_lo, log_hi = math.log(R), math.log(R_max)
    count = max(int(math.ceil((log_hi - log_lo) / math.log(grid_ratio))), 1)
    grid = np.linspace(log_lo, log_hi, count + 1)
    targets = np.array([max_log_modulus(spec, log_r=float(s), n_samples=n_samples, tail_tolerance=tail_tolerance)
                        for s in grid])

    scan = tilde_scan(spec, log_hi, grid_ratio, n_samples=n_samples, tail_tolerance=tail_tolerance)
    current = grid.copy()
    for p in range(1, p_max + 1):
        reachable = current[np.isfinite(current) & (current <= ESCAPE_LOG_DEFAULT)]
        if len(reachable):
            scan = extend_tilde_scan(spec, scan, float(np.max(reachable)), grid_ratio, n_samples=n_samples,
                                     tail_tolerance=tail_tolerance)
        current = np.array([scan.value_at(c) if c <= ESCAPE_LOG_DEFAULT else math.inf for c in current])
        if np.all(current >= targets):
            return p
    return None
