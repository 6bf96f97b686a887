import math
from dataclasses import dataclass, field
from typing import Dict, List, Literal, Optional

import numpy as np

# --- Strict types for status and verdict enums ---
OrbitStatusKind = Literal["ESCAPED", "BOUNDED", "HIT_ZERO", "MAX_ITERATIONS"]
PropertyVerdictKind = Literal["HOLDS", "FAILS_EVIDENCE", "INCONCLUSIVE"]


def _radius_from_log(log_radius: float) -> float:
    return math.exp(log_radius) if log_radius < 709.0 else math.inf


@dataclass
class ModulusProfile:
    """
    Minimum and maximum of log|f| on the circle |z| = r, from samples on [0, pi]
    plus golden-section refinement. min_log = -inf when a zero lies on the circle.
    """
    log_radius: float
    min_log: float
    argmin_theta: float
    max_log: float
    argmax_theta: float
    sample_count: int
    refined: bool
    thetas: Optional[np.ndarray] = field(default=None, repr=False)
    log_moduli: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def radius(self) -> float:
        return _radius_from_log(self.log_radius)

    @property
    def hits_zero(self) -> bool:
        return self.min_log == -math.inf

    def summary_row(self) -> dict:
        return {
            "r": self.radius,
            "min_log": self.min_log,
            "argmin": self.argmin_theta,
            "max_log": self.max_log,
            "argmax": self.argmax_theta,
        }

    def sample_rows(self) -> List[dict]:
        if self.thetas is None:
            return []
        return [{"r": self.radius, "theta": float(t), "log_modulus": float(v)}
                for t, v in zip(self.thetas, self.log_moduli)]

    def to_dict(self):
        data = dict(self.summary_row())
        data.update({
            "log_radius": self.log_radius,
            "sample_count": self.sample_count,
            "refined": self.refined,
        })
        return data


@dataclass
class TildeScan:
    """
    log m(s) on a geometric radius grid together with its running maximum
    (log tilde-m) and the grid index where the running maximum is attained.
    """
    log_radii: np.ndarray
    min_logs: np.ndarray
    running_max: np.ndarray
    running_argmax: np.ndarray

    def value_at(self, log_r: float) -> float:
        """log tilde-m at the largest grid radius <= r."""
        index = int(np.searchsorted(self.log_radii, log_r, side="right")) - 1
        if index < 0:
            return -math.inf
        return float(self.running_max[index])

    def argmax_log_radius(self, log_r: float) -> float:
        index = int(np.searchsorted(self.log_radii, log_r, side="right")) - 1
        if index < 0:
            return float(self.log_radii[0])
        return float(self.log_radii[self.running_argmax[index]])

    def to_dict(self):
        return {
            "log_radii": self.log_radii.tolist(),
            "min_logs": self.min_logs.tolist(),
            "running_max": self.running_max.tolist(),
        }


@dataclass
class OrbitStatus:
    kind: OrbitStatusKind
    step: Optional[int] = None
    window_max: Optional[float] = None

    def __str__(self):
        if self.kind == "ESCAPED":
            return f"Escaped(step={self.step})"
        if self.kind == "HIT_ZERO":
            return f"HitZero(step={self.step})"
        if self.kind == "BOUNDED":
            return f"Bounded(window_max={self.window_max:.6g})"
        return "MaxIterations"

    def to_dict(self):
        return {"kind": self.kind, "step": self.step, "window_max": self.window_max}


@dataclass
class OrbitRecord:
    """
    values[0] is log(seed); values[n] = log m^n(seed).
    """
    values: List[float]
    status: OrbitStatus
    strictly_increasing: bool
    escape_log_threshold: float

    @property
    def seed_log(self) -> float:
        return self.values[0]

    @property
    def seed(self) -> float:
        return _radius_from_log(self.values[0])

    @property
    def escaped(self) -> bool:
        return self.status.kind == "ESCAPED"

    def to_rows(self) -> List[dict]:
        rows = []
        for step, value in enumerate(self.values[:-1]):
            rows.append({
                "step": step,
                "log_radius": value,
                "log_min_modulus": self.values[step + 1],
                "status": self.status.kind if step == len(self.values) - 2 else "",
            })
        return rows

    def to_dict(self):
        return {
            "seed_log": self.seed_log,
            "values": list(self.values),
            "status": self.status.to_dict(),
            "strictly_increasing": self.strictly_increasing,
            "escape_log_threshold": self.escape_log_threshold,
        }

    def __repr__(self):
        return (f"OrbitRecord(seed_log={self.seed_log:.6g}, steps={len(self.values) - 1}, "
                f"status={self.status}, strictly_increasing={self.strictly_increasing})")


@dataclass
class StrictSeed:
    """A seed found by the pull-back construction and the threshold its orbit crosses."""
    log_seed: float
    escape_log_threshold: float
    chain: List[float] = field(default_factory=list)
    orbit: Optional[OrbitRecord] = None

    @property
    def seed(self) -> float:
        return _radius_from_log(self.log_seed)

    def to_dict(self):
        return {
            "log_seed": self.log_seed,
            "seed": self.seed,
            "escape_log_threshold": self.escape_log_threshold,
            "chain": list(self.chain),
            "orbit": self.orbit.to_dict() if self.orbit else None,
        }


@dataclass
class EquivalenceReport:
    """
    Finite proxies of the equivalent escape conditions:
    (a) some sampled orbit escapes past the tilde-chain horizon, (b) some orbit exceeds T_max,
    (c) tilde-m(t) > t on the grid of [T, T_max], (d) a strictly increasing seed exists,
    (e) a chain t_{n+1} <= m(t_n) reaching T_max exists.
    tail_start is the log radius from which tilde-m(t) > t holds up to T_max.
    """
    T: float
    T_max: float
    verdicts: Dict[str, bool]
    seed: Optional[StrictSeed] = None
    notes: List[str] = field(default_factory=list)
    tail_start: Optional[float] = None

    @property
    def consistent(self) -> bool:
        escapes = bool(self.verdicts.get("a"))
        if self.verdicts.get("c") and not escapes:
            return False
        return not escapes or self.tail_start is not None

    @property
    def flag(self) -> str:
        return "CONSISTENT" if self.consistent else "INCONSISTENT"

    def to_dict(self):
        return {
            "T": self.T,
            "T_max": self.T_max,
            "verdicts": dict(self.verdicts),
            "flag": self.flag,
            "tail_start": self.tail_start,
            "seed": self.seed.to_dict() if self.seed else None,
            "notes": list(self.notes),
        }


@dataclass
class PropertyVerdict:
    """
    Finite-horizon evidence about m^n(r) -> infinity; never a proof.
    bound is max over the tested grid of log tilde-m(r) - log r.
    """
    kind: PropertyVerdictKind
    witness: Optional[StrictSeed] = None
    bound: Optional[float] = None
    details: str = ""

    def __str__(self):
        if self.kind == "HOLDS":
            return f"Holds(seed={self.witness.seed:.12g})"
        if self.kind == "FAILS_EVIDENCE":
            return f"FailsEvidence(bound={self.bound:.6g})"
        return "Inconclusive"

    def to_dict(self):
        return {
            "kind": self.kind,
            "witness": self.witness.to_dict() if self.witness else None,
            "bound": self.bound,
            "details": self.details,
        }
