"""
Exact evaluators for the families that have one, used as oracles.

Tags:
    cos_sqrt    cos(sqrt z)
    z_cos_sqrt  2 z cos(sqrt z)
    hardy2      sin(pi sqrt z) / (pi sqrt z)
    cos         cos z           (cos_sqrt after z -> z^2)
    sinc        sin(pi z)/(pi z) (hardy2 after z -> z^2)
"""
import math
from typing import Tuple

import numpy as np

from core.errors import InvalidSpec
from core.models.functions import LogComplexValue, wrap_angle

CLOSED_FORM_TAGS = ("cos_sqrt", "z_cos_sqrt", "hardy2", "cos", "sinc")

LOG_TWO = math.log(2.0)


def log_cos(x, y):
    """log|cos(x + iy)| and arg cos(x + iy), stable for large |y|."""
    u = np.exp(-2.0 * np.abs(y))
    sin_x = np.sin(x)
    with np.errstate(divide="ignore"):
        log_mod = np.abs(y) - LOG_TWO + 0.5 * np.log((1.0 + u) ** 2 - 4.0 * u * sin_x * sin_x)
    arg = np.arctan2(-sin_x * np.tanh(y), np.cos(x))
    return log_mod, arg


def log_sin(x, y):
    """log|sin(x + iy)| and arg sin(x + iy)."""
    u = np.exp(-2.0 * np.abs(y))
    cos_x = np.cos(x)
    with np.errstate(divide="ignore"):
        log_mod = np.abs(y) - LOG_TWO + 0.5 * np.log((1.0 + u) ** 2 - 4.0 * u * cos_x * cos_x)
    arg = np.arctan2(cos_x * np.tanh(y), np.sin(x))
    return log_mod, arg


def closed_form_log_points(tag: str, log_r, theta) -> Tuple[np.ndarray, np.ndarray]:
    """
    Vectorized closed-form log f at z = exp(log_r + i theta).

    Args:
        tag: one of CLOSED_FORM_TAGS.
        log_r: log|z| array.
        theta: arg z array.

    Returns:
        (log_modulus, argument) arrays; log_modulus is -inf at zeros.
    """
    log_r, theta = np.broadcast_arrays(np.asarray(log_r, dtype=np.float64),
                                       np.asarray(theta, dtype=np.float64))
    if tag not in CLOSED_FORM_TAGS:
        raise InvalidSpec(f"unknown closed form {tag!r}; expected one of {', '.join(CLOSED_FORM_TAGS)}")

    if tag in ("cos_sqrt", "z_cos_sqrt", "hardy2"):
        # principal square root; both closed forms are even in sqrt z
        radius = np.exp(0.5 * log_r)
        x, y = radius * np.cos(0.5 * theta), radius * np.sin(0.5 * theta)
        log_root, arg_root = 0.5 * log_r, 0.5 * theta
    else:
        radius = np.exp(log_r)
        x, y = radius * np.cos(theta), radius * np.sin(theta)
        log_root, arg_root = log_r, theta

    if tag in ("cos_sqrt", "cos"):
        log_mod, arg = log_cos(x, y)
    elif tag == "z_cos_sqrt":
        log_mod, arg = log_cos(x, y)
        log_mod = LOG_TWO + log_r + log_mod
        arg = arg + theta
    else:
        log_mod, arg = log_sin(math.pi * x, math.pi * y)
        with np.errstate(invalid="ignore"):
            log_mod = log_mod - math.log(math.pi) - log_root
        arg = arg - arg_root
        # removable singularity at z = 0
        origin = log_r == -np.inf
        log_mod = np.where(origin, 0.0, log_mod)
        arg = np.where(origin, 0.0, arg)

    arg = np.where(log_mod == -np.inf, 0.0, wrap_angle(arg))
    return log_mod, arg


def closed_form_log(tag: str, z: complex) -> LogComplexValue:
    """Closed-form log f(z) for a single point."""
    z = complex(z)
    if z == 0:
        log_r, theta = -math.inf, 0.0
    else:
        log_r, theta = math.log(abs(z)), math.atan2(z.imag, z.real)
    log_mod, arg = closed_form_log_points(tag, log_r, theta)
    if float(log_mod) == -math.inf:
        return LogComplexValue.zero()
    return LogComplexValue(float(log_mod), float(arg))
