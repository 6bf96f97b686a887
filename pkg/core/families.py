"""
Built-in function families, their asymptotic formulas and the recursive
construction with all-positive zeros a_k whose minimum modulus beats the next
test radius.
"""
import cmath
import math
import logging
from dataclasses import dataclass, replace
from typing import Dict, List, Literal, Optional

from core.errors import ParameterOutOfRange
from core.analytic.closed_forms import log_sin
from core.analytic.hadamard import square_substitute
from core.models.functions import (
    EntireFunctionSpec,
    ExplicitZeros,
    PowerLawZeros,
    RealPolynomial,
    RecursiveZeros,
    ZeroSequence,
    construction_levels,
)
from core.models.reports import Construction51Check, Construction51Data

logger = logging.getLogger(__name__)

# --- Strict types for family kinds ---
FamilyKind = Literal[
    "COS_SQRT",
    "Z_COS_SQRT",
    "HARDY",
    "LINDELOF",
    "CONSTRUCTED",
    "CONSTRUCTED_ORDER1",
    "GENUS_POWER",
    "Z_SQUARED",
]

# CLI spelling -> kind
FAMILY_NAMES: Dict[str, FamilyKind] = {
    "cos-sqrt": "COS_SQRT",
    "z-cos-sqrt": "Z_COS_SQRT",
    "hardy": "HARDY",
    "lindelof": "LINDELOF",
    "constructed": "CONSTRUCTED",
    "constructed-order1": "CONSTRUCTED_ORDER1",
    "genus-power": "GENUS_POWER",
    "z-squared": "Z_SQUARED",
}

LOG_THREE = math.log(3.0)
LOG_TWO = math.log(2.0)

# levels beyond the verified range that enter the tail sums
EXTRA_LEVELS = 16


@dataclass(frozen=True)
class FamilyId:
    """A family kind plus its parameter (sigma, alpha, rho or s)."""
    kind: FamilyKind
    sigma: Optional[float] = None
    alpha: Optional[float] = None
    rho: Optional[float] = None
    s: Optional[float] = None
    symmetric: bool = False

    @staticmethod
    def from_name(name: str, **params) -> "FamilyId":
        key = name.strip().lower().replace("_", "-")
        if key not in FAMILY_NAMES:
            raise ParameterOutOfRange(f"unknown family {name!r}; expected one of {', '.join(FAMILY_NAMES)}")
        return FamilyId(FAMILY_NAMES[key], **{k: v for k, v in params.items() if v is not None})

    def to_dict(self):
        return {k: v for k, v in self.__dict__.items() if v is not None}


def _require(condition: bool, message: str):
    if not condition:
        raise ParameterOutOfRange(message)


def cos_sqrt_zeros() -> PowerLawZeros:
    # ((k - 1/2) pi)^2
    return PowerLawZeros(scale=math.pi ** 2, exponent=2.0, offset=-0.5, start=1)


def make_family(family: FamilyId) -> EntireFunctionSpec:
    """
    Builds the spec of a family.

    Args:
        family: kind and parameter.

    Returns:
        EntireFunctionSpec with its closed-form tag where one exists.
    """
    kind = family.kind

    if kind == "COS_SQRT":
        return EntireFunctionSpec(zeros=ZeroSequence(cos_sqrt_zeros()), closed_form="cos_sqrt", name="cos_sqrt")

    if kind == "Z_COS_SQRT":
        return EntireFunctionSpec(origin_power=1, exponent_poly=RealPolynomial((LOG_TWO,)),
                                  zeros=ZeroSequence(cos_sqrt_zeros()), closed_form="z_cos_sqrt",
                                  name="z_cos_sqrt")

    if kind == "HARDY":
        sigma = family.sigma
        _require(sigma is not None and sigma > 1, f"Hardy family needs sigma > 1, got {sigma}")
        return EntireFunctionSpec(zeros=ZeroSequence(PowerLawZeros(1.0, float(sigma))),
                                  closed_form="hardy2" if sigma == 2 else None,
                                  name=f"hardy(sigma={sigma:g})")

    if kind == "LINDELOF":
        alpha = family.alpha
        _require(alpha is not None and 1 < alpha < 2, f"Lindelof family needs alpha in (1, 2), got {alpha}")
        # log 1 = 0 would put a zero at the origin, so the product starts at n = 2
        zeros = PowerLawZeros(1.0, 1.0, log_exponent=float(alpha), start=2)
        return EntireFunctionSpec(zeros=ZeroSequence(zeros), name=f"lindelof(alpha={alpha:g})")

    if kind == "CONSTRUCTED":
        rho = family.rho
        _require(rho is not None and 0 < rho < 1, f"construction needs rho in (0, 1), got {rho}")
        if rho < 0.5:
            logger.warning("rho = %g < 1/2: exploratory construction, verdicts carry no guarantee", rho)
        return EntireFunctionSpec(zeros=ZeroSequence(RecursiveZeros(float(rho), "power")),
                                  name=f"constructed(rho={rho:g})")

    if kind == "CONSTRUCTED_ORDER1":
        return EntireFunctionSpec(zeros=ZeroSequence(RecursiveZeros(None, "order1")), name="constructed(order1)")

    if kind == "GENUS_POWER":
        s = family.s
        _require(s is not None and 0 < s < 1, f"genus-power family needs s in (0, 1), got {s}")
        if family.symmetric:
            # zeros +-k^s are the square roots of k^(2s): evaluate through f(z^2)
            source_zeros = PowerLawZeros(1.0, 2.0 * s)
            source = EntireFunctionSpec(zeros=ZeroSequence(source_zeros),
                                        factor_index=source_zeros.minimal_factor_index(),
                                        name=f"genus_power(s={2 * s:g})")
            return replace(square_substitute(source), name=f"genus_power(s={s:g}, symmetric)")
        zeros = PowerLawZeros(1.0, float(s))
        return EntireFunctionSpec(zeros=ZeroSequence(zeros), factor_index=zeros.minimal_factor_index(),
                                  name=f"genus_power(s={s:g})")

    if kind == "Z_SQUARED":
        return EntireFunctionSpec(origin_power=2, zeros=ZeroSequence(ExplicitZeros()), name="z_squared")

    raise ParameterOutOfRange(f"unknown family kind {kind!r}")


def family_by_name(name: str, **params) -> EntireFunctionSpec:
    return make_family(FamilyId.from_name(name, **params))


# --- Asymptotic formulas ---


def hardy_asymptotic_log(sigma: float, z: complex) -> float:
    """
    log|2 / sqrt(2 pi z) * sin(pi z^rho) * exp(pi cot(pi rho) z^rho)|, rho = 1/sigma.

    Returns -inf at a zero of the sine.
    """
    rho = 1.0 / sigma
    _require(0.5 < rho < 1, f"asymptotic needs rho = 1/sigma in (1/2, 1), got {rho:g}")
    z = complex(z)
    _require(abs(z) >= 10 and z.real > 0, "asymptotic needs |z| >= 10 in the right half-plane")
    w = z ** rho
    log_sine, _ = log_sin(math.pi * w.real, math.pi * w.imag)
    log_sine = float(log_sine)
    if log_sine == -math.inf:
        return -math.inf
    return (LOG_TWO - 0.5 * math.log(2.0 * math.pi * abs(z)) + log_sine
            + math.pi / math.tan(math.pi * rho) * w.real)


def lindelof_asymptotic_log(alpha: float, z: complex) -> float:
    """Re(z log(-z)^(1 - alpha)) / (1 - alpha), the o(1) term dropped."""
    _require(1 < alpha < 2, f"alpha must lie in (1, 2), got {alpha}")
    z = complex(z)
    _require(abs(z) >= 100, f"asymptotic needs |z| >= 100, got {abs(z):.6g}")
    _require(abs(cmath.phase(z)) < math.pi - 0.1, "asymptotic needs |arg z| < pi - 0.1")
    value = z * cmath.log(-z) ** (1.0 - alpha)
    return value.real / (1.0 - alpha)


# --- Recursive construction ---


def build_construction51(rho: Optional[float] = 0.5, k_max: int = 8, *, order1: bool = False) -> Construction51Data:
    """
    Materializes a_k, m_k and r_k = 3 a_k of the construction.

    Args:
        rho: order in [1/2, 1); values in (0, 1/2) run as an exploratory mode.
        k_max: number of levels (>= 2).
        order1: build the order-one variant instead (rho ignored).

    Returns:
        Construction51Data.
    """
    _require(k_max >= 2, f"k_max must be >= 2, got {k_max}")
    if order1:
        return Construction51Data(None, "order1", list(construction_levels(None, "order1", k_max)))
    _require(rho is not None and 0 < rho < 1, f"rho must lie in (0, 1), got {rho}")
    if rho < 0.5:
        logger.warning("rho = %g < 1/2: exploratory construction, verdicts carry no guarantee", rho)
    levels = list(construction_levels(float(rho), "power", k_max))
    logger.info("construction rho=%g: %d levels, last log a = %.6g", rho, len(levels), levels[-1].log_a)
    return Construction51Data(float(rho), "power", levels)


def _log_abs_one_minus(lx: float) -> float:
    """log|1 - e^lx|."""
    if lx == 0.0:
        return -math.inf
    if lx > 0.0:
        return lx + math.log1p(-math.exp(-lx))
    return math.log1p(-math.exp(lx))


def verify_construction51(data: Construction51Data, k_from: int = 1,
                          k_to: Optional[int] = None) -> List[Construction51Check]:
    """
    Per-level diagnostics of the construction.

    For every k: the tail sum sum_{j>k} m_j r_k / a_j, log m(r_k) = sum_j m_j log|1 - r_k/a_j|
    (all zeros positive, so the circle minimum sits at z = r_k), the verdict on
    log m(r_k) >= ([a_k^rho] - 1) ln 2 and on m(r_k) > r_{k+1}.

    Args:
        data: construction levels.
        k_from, k_to: verified range, inside the materialized levels.

    Returns:
        list of Construction51Check.
    """
    k_to = len(data.levels) if k_to is None else k_to
    _require(1 <= k_from <= k_to <= len(data.levels),
             f"k range [{k_from}, {k_to}] lies outside the materialized 1..{len(data.levels)}")
    levels = construction_levels(data.rho, data.variant, k_to + EXTRA_LEVELS)
    bounds = data.claimed_lower_bounds

    checks = []
    for k in range(k_from, k_to + 1):
        level = levels[k - 1]
        log_r = LOG_THREE + level.log_a

        # 1. Tail sum and log m(r_k), term by term in log-space
        tail_terms, log_min_terms = [], []
        for j, other in enumerate(levels, start=1):
            if other.log_m == -math.inf:
                continue
            lx = log_r - other.log_a
            if j > k:
                tail_terms.append(math.exp(other.log_m + lx))
            factor = _log_abs_one_minus(lx)
            if factor == -math.inf:
                log_min_terms.append(-math.inf)
                continue
            if factor != 0.0:
                log_min_terms.append(math.copysign(math.exp(other.log_m + math.log(abs(factor))), factor))
        tail = math.fsum(tail_terms)
        log_min = -math.inf if -math.inf in log_min_terms else math.fsum(log_min_terms)

        # 2. Claimed bound, with the rounding slack counted against it
        claimed = bounds[k - 1]
        bound_ok = log_min >= claimed + level.slack * LOG_TWO

        # 3. Dominance over the next radius
        if k < len(levels):
            log_next = LOG_THREE + levels[k].log_a
            dominance = log_min > log_next
        else:
            log_next, dominance = None, None

        check = Construction51Check(k=k, tail_sum=tail, tail_ok=tail <= 0.5, log_min_modulus=log_min,
                                    claimed_bound=claimed, bound_ok=bound_ok, log_next_radius=log_next,
                                    dominance_ok=dominance, slack=level.slack)
        logger.debug("construction level %d: tail %.6g, log m %.6g, claimed %.6g", k, tail, log_min, claimed)
        checks.append(check)
    return checks
