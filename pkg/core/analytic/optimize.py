import math
from typing import Callable, Tuple

import numpy as np
from scipy import optimize

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2

# finite stand-in for +inf, which the bounded solver cannot interpolate through
_HUGE = float(np.finfo(np.float64).max) / 4.0


class _ReachedMinusInfinity(Exception):
    pass


def golden_section_minimize(f: Callable[[float], float], a: float, b: float,
                            tol: float = 1e-6) -> Tuple[float, float]:
    """
    Minimum of f on [a, b] by scipy's bounded golden-section/parabolic search.

    The best of every evaluated point and the two end points is returned, so a
    monotone f still yields its smaller end value. A value of -inf stops the
    search at once.

    Args:
        f: scalar function (may return -inf or +inf).
        a, b: bracket ends.
        tol: absolute tolerance in x.

    Returns:
        (x, f(x)) for the best point seen.
    """
    a, b = min(a, b), max(a, b)
    best = [a, f(a)]

    def track(x):
        y = f(x)
        if y < best[1]:
            best[0], best[1] = x, y
        if y == -math.inf:
            raise _ReachedMinusInfinity
        return min(y, _HUGE)

    if best[1] == -math.inf:
        return a, best[1]
    try:
        track(b)
        if b - a > tol:
            optimize.minimize_scalar(track, bounds=(a, b), method="bounded", options={"xatol": tol})
    except _ReachedMinusInfinity:
        pass
    return best[0], best[1]


def golden_section_maximize(f: Callable[[float], float], a: float, b: float,
                            tol: float = 1e-6) -> Tuple[float, float]:
    x, y = golden_section_minimize(lambda t: -f(t), a, b, tol)
    return x, -y


def golden_section_minimize_batch(f: Callable[[np.ndarray], np.ndarray], a, b,
                                  tol: float = 1e-6) -> Tuple[np.ndarray, np.ndarray]:
    """
    Runs independent golden-section searches in lockstep, one vectorized call of f
    per step (plus four for the start).

    Args:
        f: maps an array of abscissae to an array of values.
        a, b: arrays of bracket ends.
        tol: final bracket width for every search.

    Returns:
        (x, f(x)) arrays with the best point seen per bracket.
    """
    lo, hi = np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64)
    a, b = np.minimum(lo, hi), np.maximum(lo, hi)
    if a.size == 0:
        return a.copy(), a.copy()
    h = b - a
    ya, yb = f(a), f(b)
    best_x = np.where(yb < ya, b, a)
    best_y = np.minimum(ya, yb)

    widest = float(np.max(h))
    if widest <= tol:
        return best_x, best_y
    n = int(math.ceil(math.log(tol / widest) / math.log(INV_PHI)))

    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc, yd = f(c), f(d)

    for _ in range(max(n - 1, 0)):
        for x, y in ((c, yc), (d, yd)):
            better = y < best_y
            best_x = np.where(better, x, best_x)
            best_y = np.where(better, y, best_y)
        left = yc < yd
        h = INV_PHI * h
        # left: [a, d] keeps c as its new d; right: [c, b] keeps d as its new c
        new_a = np.where(left, a, c)
        new_c = np.where(left, a + INV_PHI_SQUARE * h, d)
        new_d = np.where(left, c, c + INV_PHI * h)
        y_new = f(np.where(left, new_c, new_d))
        yc, yd = np.where(left, y_new, yd), np.where(left, yc, y_new)
        a, c, d = new_a, new_c, new_d

    for x, y in ((c, yc), (d, yd)):
        better = y < best_y
        best_x = np.where(better, x, best_x)
        best_y = np.where(better, y, best_y)
    return best_x, best_y
