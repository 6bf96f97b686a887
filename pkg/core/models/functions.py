"""
Data model for finite-order real entire functions with real zeros.

A function is held in Hadamard form

    f(z) = z^n * exp(Q(z)) * prod_k E(z / a_k, m) ** mult_k

where the zeros a_k come from one of three generators: an explicit finite list,
a power law, or the recursive rule of the order-rho construction. Zero moduli are
stored as logarithms so radii far beyond float range stay usable.
"""
import math
import logging
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from typing import List, Literal, Optional, Tuple, Union

import numpy as np

from core.errors import InvalidSpec

logger = logging.getLogger(__name__)

LOG_TWELVE = math.log(12.0)

# Largest exact big integer (in bits) the recursive generator materializes
EXACT_BITS_LIMIT = 200_000


@dataclass(frozen=True)
class LogComplexValue:
    """
    log|w| and arg w of a complex number w. log_modulus = -inf encodes w = 0.
    """
    log_modulus: float
    argument: float = 0.0

    @property
    def is_zero(self) -> bool:
        return self.log_modulus == -math.inf

    def to_complex(self) -> complex:
        if self.is_zero:
            return 0j
        if self.log_modulus > 709.0:
            raise OverflowError(f"|w| = exp({self.log_modulus:.6g}) is not representable")
        return complex(math.exp(self.log_modulus) * math.cos(self.argument),
                       math.exp(self.log_modulus) * math.sin(self.argument))

    @staticmethod
    def zero() -> "LogComplexValue":
        return LogComplexValue(-math.inf, 0.0)

    @staticmethod
    def from_complex(w: complex) -> "LogComplexValue":
        if w == 0:
            return LogComplexValue.zero()
        return LogComplexValue(math.log(abs(w)), wrap_angle(math.atan2(w.imag, w.real)))

    def to_dict(self):
        return {"log_modulus": self.log_modulus, "argument": self.argument}

    def __repr__(self):
        if self.is_zero:
            return "LogComplexValue(zero)"
        return f"LogComplexValue(log_modulus={self.log_modulus:.12g}, argument={self.argument:.12g})"


def wrap_angle(angle):
    """Reduces angles to (-pi, pi]; works on floats and arrays."""
    wrapped = np.pi - np.mod(np.pi - np.asarray(angle, dtype=np.float64), 2.0 * np.pi)
    if np.ndim(wrapped) == 0:
        return float(wrapped)
    return wrapped


@dataclass(frozen=True)
class ZeroEntry:
    """
    One real zero a with its multiplicity, stored as (log|a|, sign).

    multiplicity is None only for construction levels whose exact count is too
    large to hold; log_multiplicity is always set. value keeps the float a was
    given as, so it is written back exactly.
    """
    log_abs: float
    sign: int
    multiplicity: Optional[int] = 1
    log_multiplicity: float = 0.0
    value: Optional[float] = None

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidSpec(f"zero sign must be +1 or -1, got {self.sign}")
        if not math.isfinite(self.log_abs):
            raise InvalidSpec("zero location must be finite and nonzero")
        if self.multiplicity is not None:
            if self.multiplicity < 1:
                raise InvalidSpec(f"multiplicity must be >= 1, got {self.multiplicity}")
            object.__setattr__(self, "log_multiplicity", math.log(self.multiplicity))

    @property
    def location(self) -> float:
        if self.value is not None:
            return self.value
        if self.log_abs > 709.0:
            return self.sign * math.inf
        return self.sign * math.exp(self.log_abs)

    @staticmethod
    def from_location(location: float, multiplicity: int = 1) -> "ZeroEntry":
        if location == 0 or not math.isfinite(location):
            raise InvalidSpec(f"zero location must be finite and nonzero, got {location}")
        location = float(location)
        return ZeroEntry(math.log(abs(location)), 1 if location > 0 else -1, int(multiplicity), value=location)

    def to_dict(self):
        return {
            "location": self.location,
            "log_abs": self.log_abs,
            "sign": self.sign,
            "multiplicity": self.multiplicity,
            "log_multiplicity": self.log_multiplicity,
        }

    def __repr__(self):
        mult = self.multiplicity if self.multiplicity is not None else f"e^{self.log_multiplicity:.6g}"
        if self.log_abs < 700:
            return f"ZeroEntry({self.location:.12g}, mult={mult})"
        return f"ZeroEntry({'+' if self.sign > 0 else '-'}e^{self.log_abs:.6g}, mult={mult})"


@dataclass(frozen=True)
class ZeroBlock:
    """Columnar slice of a zero sequence, ready for vectorized evaluation."""
    log_abs: np.ndarray
    negative: np.ndarray
    log_mult: np.ndarray

    def __len__(self):
        return len(self.log_abs)

    @staticmethod
    def empty() -> "ZeroBlock":
        return ZeroBlock(np.empty(0), np.empty(0, dtype=bool), np.empty(0))

    @staticmethod
    def from_entries(entries) -> "ZeroBlock":
        return ZeroBlock(
            np.array([e.log_abs for e in entries], dtype=np.float64),
            np.array([e.sign < 0 for e in entries], dtype=bool),
            np.array([e.log_multiplicity for e in entries], dtype=np.float64),
        )


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExplicitZeros:
    """A finite list of zeros, kept sorted by modulus."""
    entries: Tuple[ZeroEntry, ...] = ()
    kind = "explicit"
    is_finite = True

    def __post_init__(self):
        ordered = tuple(sorted(self.entries, key=lambda e: (e.log_abs, -e.sign)))
        object.__setattr__(self, "entries", ordered)

    def entry_count(self) -> Optional[int]:
        return len(self.entries)

    def materialize(self, count: int) -> List[ZeroEntry]:
        return list(self.entries[:count])

    def entry_block(self, start: int, stop: int) -> ZeroBlock:
        return ZeroBlock.from_entries(self.entries[start:stop])

    def entries_within(self, log_t: float) -> ZeroBlock:
        return ZeroBlock.from_entries([e for e in self.entries if e.log_abs <= log_t])

    def count_within(self, log_t: float) -> int:
        return sum(e.multiplicity for e in self.entries if e.log_abs <= log_t)

    def zero_signs(self) -> set:
        return {e.sign for e in self.entries}

    def square_root(self) -> "ExplicitZeros":
        if any(e.sign < 0 for e in self.entries):
            raise InvalidSpec("square root of a negative zero is not real")
        rooted = []
        for e in self.entries:
            rooted.append(ZeroEntry(0.5 * e.log_abs, 1, e.multiplicity, e.log_multiplicity))
            rooted.append(ZeroEntry(0.5 * e.log_abs, -1, e.multiplicity, e.log_multiplicity))
        return ExplicitZeros(tuple(rooted))

    def minimal_factor_index(self) -> int:
        return 0

    def to_fields(self) -> dict:
        return {"generator": "explicit"}


@dataclass(frozen=True)
class PowerLawZeros:
    """
    Zeros a_k = scale * (k + offset)^exponent * (ln(k + offset))^log_exponent for k >= start,
    each with the same multiplicity, optionally mirrored to -a_k.
    """
    scale: float = 1.0
    exponent: float = 1.0
    log_exponent: float = 0.0
    offset: float = 0.0
    start: int = 1
    multiplicity: int = 1
    symmetric: bool = False
    kind = "power_law"
    is_finite = False

    def __post_init__(self):
        if not self.scale > 0:
            raise InvalidSpec(f"power-law scale must be positive, got {self.scale}")
        if not self.exponent > 0:
            raise InvalidSpec(f"power-law exponent must be positive, got {self.exponent}")
        if self.log_exponent < 0:
            raise InvalidSpec("power-law log exponent must be nonnegative")
        if self.multiplicity < 1:
            raise InvalidSpec("power-law multiplicity must be >= 1")
        first = self.start + self.offset
        if first <= 0 or (self.log_exponent > 0 and first <= 1):
            raise InvalidSpec(f"first power-law zero is not positive (start + offset = {first})")

    @property
    def signs_per_level(self) -> int:
        return 2 if self.symmetric else 1

    @property
    def log_mult(self) -> float:
        return math.log(self.multiplicity)

    def log_modulus_at(self, u):
        """log a(u) for the continuous index u = k + offset."""
        u = np.asarray(u, dtype=np.float64)
        out = math.log(self.scale) + self.exponent * np.log(u)
        if self.log_exponent:
            out = out + self.log_exponent * np.log(np.log(u))
        return out

    def level_block(self, k_start: int, k_stop: int) -> ZeroBlock:
        """Zeros of levels k_start <= k < k_stop (absolute level numbers)."""
        k = np.arange(max(k_start, self.start), max(k_stop, self.start), dtype=np.float64)
        log_abs = self.log_modulus_at(k + self.offset)
        if self.symmetric:
            log_abs = np.repeat(log_abs, 2)
            negative = np.tile(np.array([False, True]), len(k))
        else:
            negative = np.zeros(len(k), dtype=bool)
        return ZeroBlock(log_abs, negative, np.full(len(log_abs), self.log_mult))

    def entry_count(self) -> Optional[int]:
        return None

    def level_of_entry(self, index: int) -> int:
        return self.start + index // self.signs_per_level

    def entry_block(self, start: int, stop: int) -> ZeroBlock:
        first_level = self.level_of_entry(start)
        last_level = self.level_of_entry(max(stop - 1, start)) + 1
        block = self.level_block(first_level, last_level)
        skip = start - (first_level - self.start) * self.signs_per_level
        keep = stop - start
        return ZeroBlock(block.log_abs[skip:skip + keep], block.negative[skip:skip + keep],
                         block.log_mult[skip:skip + keep])

    def materialize(self, count: int) -> List[ZeroEntry]:
        block = self.entry_block(0, count)
        return [ZeroEntry(float(la), -1 if neg else 1, self.multiplicity)
                for la, neg in zip(block.log_abs, block.negative)]

    def last_level_within(self, log_t: float) -> int:
        """Largest level k with log a_k <= log_t, or start - 1 when none."""
        if self.log_modulus_at(self.start + self.offset) > log_t:
            return self.start - 1
        lo, hi = self.start, self.start + 1
        while self.log_modulus_at(hi + self.offset) <= log_t:
            lo, hi = hi, 2 * hi
            if hi > 1 << 62:
                raise InvalidSpec("zero count within radius exceeds integer range")
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.log_modulus_at(mid + self.offset) <= log_t:
                lo = mid
            else:
                hi = mid
        return lo

    def entries_within(self, log_t: float) -> ZeroBlock:
        return self.level_block(self.start, self.last_level_within(log_t) + 1)

    def count_within(self, log_t: float) -> int:
        levels = self.last_level_within(log_t) - self.start + 1
        return levels * self.signs_per_level * self.multiplicity

    def zero_signs(self) -> set:
        return {1, -1} if self.symmetric else {1}

    def square_root(self) -> "PowerLawZeros":
        if self.symmetric:
            raise InvalidSpec("square root of a negative zero is not real")
        return PowerLawZeros(
            scale=math.sqrt(self.scale),
            exponent=self.exponent / 2.0,
            log_exponent=self.log_exponent / 2.0,
            offset=self.offset,
            start=self.start,
            multiplicity=self.multiplicity,
            symmetric=True,
        )

    def minimal_factor_index(self) -> int:
        # sum_k k^{-s(m+1)} (ln k)^{-beta(m+1)} converges iff s(m+1) > 1,
        # or s(m+1) == 1 and beta(m+1) > 1
        m = 0
        while True:
            power = self.exponent * (m + 1)
            if power > 1 + 1e-12:
                return m
            if abs(power - 1) <= 1e-12 and self.log_exponent * (m + 1) > 1 + 1e-12:
                return m
            m += 1

    def to_fields(self) -> dict:
        return {
            "generator": "power_law",
            "scale": self.scale,
            "exponent": self.exponent,
            "log_exponent": self.log_exponent,
            "offset": self.offset,
            "start": self.start,
            "multiplicity": self.multiplicity,
            "symmetric": self.symmetric,
        }


@dataclass(frozen=True)
class ConstructionLevel:
    """
    One level k of the recursive construction: the zero a_k, the cumulative count
    n(a_k) and the multiplicity m_k = n(a_k) - n(a_{k-1}).
    """
    k: int
    log_a: float
    log_n: float
    log_m: float
    a: Optional[int] = None
    n: Optional[int] = None
    m: Optional[int] = None
    slack: int = 0

    def to_dict(self):
        return {
            "k": self.k,
            "log_a": self.log_a,
            "log_n": self.log_n,
            "log_m": self.log_m,
            "a": str(self.a) if self.a is not None else None,
            "n": str(self.n) if self.n is not None else None,
            "m": str(self.m) if self.m is not None else None,
            "slack": self.slack,
        }


def _floor_exp(x: float) -> Optional[int]:
    """floor(e^x) as an exact-width integer, using Decimal when e^x leaves float range."""
    if x < 600:
        return int(math.floor(math.exp(x)))
    if x > EXACT_BITS_LIMIT * math.log(2):
        return None
    with localcontext() as ctx:
        ctx.prec = int(x / math.log(10)) + 30
        return int(Decimal(repr(x)).exp().to_integral_value(rounding="ROUND_FLOOR"))


def _exact_power_ratio(rho: float) -> Optional[int]:
    """p when rho = p / (p + 1) for a positive integer p, else None."""
    p = Fraction(rho).limit_denominator(10_000)
    if p.numerator + 1 != p.denominator or abs(float(p) - rho) > 1e-15:
        return None
    return p.numerator


@lru_cache(maxsize=64)
def construction_levels(rho: Optional[float], variant: str, k_max: int) -> Tuple[ConstructionLevel, ...]:
    """
    Materializes levels 1..k_max of the recursive construction.

    Standard variant: a_0 = 1, a_{k+1} = (12 a_k^rho)^{1/(1-rho)}, n(a_k) = [a_k^rho].
    Order-one variant: a_{k+1} = (12 a_k)^{k+1}, n(a_k) = [a_k^{1 - 1/k}].

    Args:
        rho: order parameter (ignored for the order-one variant).
        variant: "power" or "order1".
        k_max: number of levels.

    Returns:
        tuple of ConstructionLevel, k = 1..k_max.
    """
    levels = []
    previous_n = 0
    previous_log_n = -math.inf

    if variant == "order1":
        a_exact = 1
        log_a = 0.0
        for k in range(1, k_max + 1):
            log_base = LOG_TWELVE + log_a
            # n(a_k) = (12 a_{k-1})^{k-1}; a_k = (12 a_{k-1})^k
            new_log_a = k * log_base
            log_n = (k - 1) * log_base
            if a_exact is not None and new_log_a < EXACT_BITS_LIMIT * math.log(2):
                base = 12 * a_exact
                n_exact = base ** (k - 1)
                a_exact = base ** k
            else:
                a_exact = None
                n_exact = None
            levels.append(_level(k, new_log_a, log_n, n_exact, a_exact, previous_n, previous_log_n, 0))
            previous_n, previous_log_n = n_exact, log_n
            log_a = new_log_a
        return tuple(levels)

    if rho is None or not 0 < rho < 1:
        raise InvalidSpec(f"construction order must lie in (0, 1), got {rho}")

    p = _exact_power_ratio(rho)
    if p is not None:
        # a_k = 12^{E_k}, E_1 = p + 1, E_{k+1} = (p + 1) + p E_k; [a_k^rho] = 12^{p E_k / (p + 1)}
        exponent = 0
        for k in range(1, k_max + 1):
            exponent = (p + 1) + p * exponent
            log_a = exponent * LOG_TWELVE
            n_exponent = p * exponent // (p + 1)
            log_n = n_exponent * LOG_TWELVE
            if log_a < EXACT_BITS_LIMIT * math.log(2):
                a_exact = 12 ** exponent
                n_exact = 12 ** n_exponent
            else:
                a_exact = n_exact = None
            levels.append(_level(k, log_a, log_n, n_exact, a_exact, previous_n, previous_log_n, 0))
            previous_n, previous_log_n = n_exact, log_n
        return tuple(levels)

    log_a = 0.0
    for k in range(1, k_max + 1):
        log_a = (LOG_TWELVE + rho * log_a) / (1.0 - rho)
        n_exact = _floor_exp(rho * log_a)
        log_n = math.log(n_exact) if n_exact else rho * log_a
        if n_exact is not None and n_exact == 0:
            log_n = -math.inf
        levels.append(_level(k, log_a, log_n, n_exact, None, previous_n, previous_log_n, 1))
        previous_n, previous_log_n = n_exact, log_n
    return tuple(levels)


def _level(k, log_a, log_n, n_exact, a_exact, previous_n, previous_log_n, slack) -> ConstructionLevel:
    if n_exact is not None and previous_n is not None:
        m_exact = n_exact - previous_n
        log_m = math.log(m_exact) if m_exact > 0 else -math.inf
    else:
        m_exact = None
        # log(n_k - n_{k-1}) = log n_k + log1p(-n_{k-1}/n_k)
        gap = previous_log_n - log_n
        log_m = log_n + math.log1p(-math.exp(gap)) if gap < 0 else -math.inf
    return ConstructionLevel(k=k, log_a=log_a, log_n=log_n, log_m=log_m,
                             a=a_exact, n=n_exact, m=m_exact, slack=slack)


@dataclass(frozen=True)
class RecursiveZeros:
    """
    Positive zeros of the order-rho construction (or its order-one variant),
    optionally replaced by their square roots +-sqrt(a_k) after square substitution.
    """
    rho: Optional[float] = 0.5
    variant: Literal["power", "order1"] = "power"
    max_levels: int = 400
    square_root_taken: bool = False
    kind = "recursive"
    is_finite = False

    def __post_init__(self):
        if self.variant not in ("power", "order1"):
            raise InvalidSpec(f"unknown construction variant {self.variant!r}")
        if self.variant == "power" and (self.rho is None or not 0 < self.rho < 1):
            raise InvalidSpec(f"construction order must lie in (0, 1), got {self.rho}")

    @property
    def signs_per_level(self) -> int:
        return 2 if self.square_root_taken else 1

    def levels(self, k_max: Optional[int] = None) -> Tuple[ConstructionLevel, ...]:
        count = self.max_levels if k_max is None else min(k_max, self.max_levels)
        return tuple(level for level in construction_levels(self.rho, self.variant, count)
                     if level.log_m > -math.inf)

    def level_block(self, levels) -> ZeroBlock:
        log_abs = np.array([lv.log_a for lv in levels], dtype=np.float64)
        log_mult = np.array([lv.log_m for lv in levels], dtype=np.float64)
        if self.square_root_taken:
            log_abs = np.repeat(0.5 * log_abs, 2)
            log_mult = np.repeat(log_mult, 2)
            negative = np.tile(np.array([False, True]), len(levels))
        else:
            negative = np.zeros(len(levels), dtype=bool)
        return ZeroBlock(log_abs, negative, log_mult)

    def entry_count(self) -> Optional[int]:
        return None

    def entry_block(self, start: int, stop: int) -> ZeroBlock:
        per = self.signs_per_level
        levels = self.levels(-(-stop // per))
        block = self.level_block(levels)
        return ZeroBlock(block.log_abs[start:stop], block.negative[start:stop], block.log_mult[start:stop])

    def materialize(self, count: int) -> List[ZeroEntry]:
        per = self.signs_per_level
        entries = []
        for level in self.levels(-(-count // per)):
            log_abs = 0.5 * level.log_a if self.square_root_taken else level.log_a
            for sign in ((1, -1) if self.square_root_taken else (1,)):
                entries.append(ZeroEntry(log_abs, sign, level.m, level.log_m))
        return entries[:count]

    def _log_abs(self, level: ConstructionLevel) -> float:
        return 0.5 * level.log_a if self.square_root_taken else level.log_a

    def entries_within(self, log_t: float) -> ZeroBlock:
        return self.level_block([lv for lv in self.levels() if self._log_abs(lv) <= log_t])

    def count_within(self, log_t: float) -> Union[int, float]:
        inside = [lv for lv in self.levels() if self._log_abs(lv) <= log_t]
        if not inside:
            return 0
        last = inside[-1]
        if last.n is not None:
            return last.n * self.signs_per_level
        return math.exp(last.log_n) * self.signs_per_level

    def zero_signs(self) -> set:
        return {1, -1} if self.square_root_taken else {1}

    def square_root(self) -> "RecursiveZeros":
        if self.square_root_taken:
            raise InvalidSpec("square root of a negative zero is not real")
        return RecursiveZeros(self.rho, self.variant, self.max_levels, True)

    def minimal_factor_index(self) -> int:
        return 0

    def to_fields(self) -> dict:
        return {
            "generator": "recursive",
            "rho": self.rho,
            "variant": self.variant,
            "max_levels": self.max_levels,
            "square_root_taken": self.square_root_taken,
        }


ZeroGenerator = Union[ExplicitZeros, PowerLawZeros, RecursiveZeros]


@dataclass(frozen=True)
class ZeroSequence:
    """
    Zeros of a spec, produced on demand by the generator and ordered by modulus.
    """
    generator: ZeroGenerator = field(default_factory=ExplicitZeros)

    def entries(self, count: int) -> List[ZeroEntry]:
        return self.generator.materialize(count)

    @property
    def is_finite(self) -> bool:
        return self.generator.is_finite

    def signs(self) -> set:
        return self.generator.zero_signs()

    def to_dict(self):
        data = dict(self.generator.to_fields())
        if isinstance(self.generator, ExplicitZeros):
            data["entries"] = [e.to_dict() for e in self.generator.entries]
        return data

    def __repr__(self):
        return f"ZeroSequence({self.generator.kind})"


# ---------------------------------------------------------------------------
# Polynomial exponent and the spec itself
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RealPolynomial:
    """Q(z) = b_0 + b_1 z + ... + b_d z^d with real coefficients, low to high."""
    coefficients: Tuple[float, ...] = ()

    def __post_init__(self):
        coeffs = [float(c) for c in self.coefficients]
        if any(not math.isfinite(c) for c in coeffs):
            raise InvalidSpec("polynomial coefficients must be finite")
        while coeffs and coeffs[-1] == 0.0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return max(len(self.coefficients) - 1, 0)

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def is_constant(self) -> bool:
        return len(self.coefficients) <= 1

    def leading(self) -> float:
        return self.coefficients[-1] if self.coefficients else 0.0

    def coefficient(self, j: int) -> float:
        return self.coefficients[j] if j < len(self.coefficients) else 0.0

    def evaluate(self, log_r, theta) -> Tuple[np.ndarray, np.ndarray]:
        """Re Q(z) and Im Q(z) at z = exp(log_r + i theta)."""
        log_r = np.asarray(log_r, dtype=np.float64)
        theta = np.asarray(theta, dtype=np.float64)
        re = np.zeros(np.broadcast(log_r, theta).shape)
        im = np.zeros_like(re)
        for j, b in enumerate(self.coefficients):
            if b == 0.0:
                continue
            if j == 0:
                re = re + b
                continue
            with np.errstate(over="ignore", invalid="ignore"):
                scale = b * np.exp(j * log_r)
                re = re + scale * np.cos(j * theta)
                im = im + scale * np.sin(j * theta)
        return re, im

    def compose_square(self) -> "RealPolynomial":
        """Q(z^2)."""
        coeffs = []
        for b in self.coefficients:
            coeffs.extend([b, 0.0])
        return RealPolynomial(tuple(coeffs))

    def to_dict(self):
        return {"coefficients": list(self.coefficients), "degree": self.degree}

    def __repr__(self):
        return f"RealPolynomial({list(self.coefficients)})"


@dataclass(frozen=True)
class EntireFunctionSpec:
    """
    Finite-order real entire function with real zeros in Hadamard form.

    square_of links a square-substituted spec g(z) = f(z^2) back to f so that
    evaluation and modulus searches can run on f at z^2.
    """
    origin_power: int = 0
    exponent_poly: RealPolynomial = field(default_factory=RealPolynomial)
    zeros: ZeroSequence = field(default_factory=ZeroSequence)
    factor_index: int = 0
    closed_form: Optional[str] = None
    name: str = ""
    square_of: Optional["EntireFunctionSpec"] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.origin_power < 0:
            raise InvalidSpec(f"origin power must be >= 0, got {self.origin_power}")
        if self.factor_index < 0:
            raise InvalidSpec(f"factor index must be >= 0, got {self.factor_index}")
        needed = self.zeros.generator.minimal_factor_index()
        if self.factor_index < needed:
            raise InvalidSpec(
                f"sum of mult*|a_k|^-(m+1) diverges for m = {self.factor_index}; "
                f"the zero sequence needs m >= {needed}"
            )

    @property
    def generator(self) -> ZeroGenerator:
        return self.zeros.generator

    @property
    def genus(self) -> int:
        return max(self.factor_index, self.exponent_poly.degree)

    @property
    def is_polynomial(self) -> bool:
        return self.zeros.is_finite and self.exponent_poly.is_constant

    def zero_sign(self) -> Optional[int]:
        """+1 or -1 when every zero has that sign (or there are none), else None."""
        signs = self.zeros.signs()
        if isinstance(self.generator, ExplicitZeros) and not self.generator.entries:
            return 1
        if len(signs) == 1:
            return next(iter(signs))
        return None

    def delegates_to_source(self) -> bool:
        """True when g(z) = f(z^2) holds factor by factor for the linked source f."""
        source = self.square_of
        return source is not None and self.factor_index // 2 == source.factor_index

    def label(self) -> str:
        return self.name or f"spec(n={self.origin_power}, m={self.factor_index}, {self.generator.kind})"

    def to_dict(self):
        return {
            "name": self.name,
            "origin_power": self.origin_power,
            "exponent_poly": self.exponent_poly.to_dict(),
            "zeros": self.zeros.to_dict(),
            "factor_index": self.factor_index,
            "closed_form": self.closed_form,
            "genus": self.genus,
        }

    def __repr__(self):
        return (f"EntireFunctionSpec({self.label()}, n={self.origin_power}, "
                f"Q={list(self.exponent_poly.coefficients)}, m={self.factor_index}, "
                f"zeros={self.generator.kind}, closed_form={self.closed_form})")
