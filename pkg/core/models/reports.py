from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from core.models.functions import ConstructionLevel


def _floats(values) -> List[float]:
    return [float(v) for v in np.asarray(values, dtype=np.float64).ravel()]


@dataclass
class GrowthReport:
    """
    log log M(r) against log r, with least-squares slopes over one-decade windows.
    order_estimate is the largest window slope (limsup proxy).
    """
    log_radii: np.ndarray
    loglog_max: np.ndarray
    order_estimate: float
    window_slopes: List[float] = field(default_factory=list)
    window_centres: List[float] = field(default_factory=list)

    def to_dict(self):
        return {
            "log_radii": _floats(self.log_radii),
            "loglog_max": _floats(self.loglog_max),
            "order_estimate": self.order_estimate,
            "window_slopes": list(self.window_slopes),
            "window_centres": list(self.window_centres),
        }


@dataclass
class GenusReport:
    factor_index: int
    poly_degree: int
    genus: int
    minimal_factor_index: int

    def to_dict(self):
        return self.__dict__.copy()


@dataclass
class DeficiencyReport:
    """
    N(r), T(r) and their ratio on a radius grid; defect_estimate is
    1 - max of N/T over the trailing half of the grid.
    """
    log_radii: np.ndarray
    N_values: np.ndarray
    T_values: np.ndarray
    ratio_N_over_T: np.ndarray
    defect_estimate: float

    def to_dict(self):
        return {
            "log_radii": _floats(self.log_radii),
            "N_values": _floats(self.N_values),
            "T_values": _floats(self.T_values),
            "ratio_N_over_T": _floats(self.ratio_N_over_T),
            "defect_estimate": self.defect_estimate,
            "label": "estimate of 1 - limsup N(r)/T(r)",
        }


@dataclass
class RayScan:
    """log|f(r e^{i theta})| along one ray with the fitted decay exponent of -log|f|."""
    theta: float
    log_radii: np.ndarray
    log_modulus: np.ndarray
    exponent: Optional[float]
    decreasing: bool
    flagged: bool

    def to_rows(self) -> List[dict]:
        return [{"theta": self.theta, "r": float(np.exp(lr)), "log_modulus": float(v)}
                for lr, v in zip(self.log_radii, self.log_modulus)]

    def to_dict(self):
        return {
            "theta": self.theta,
            "exponent": self.exponent,
            "decreasing": self.decreasing,
            "flagged": self.flagged,
        }


@dataclass
class RayProfile:
    """
    log|E(T e^{i theta}, m)| and its T-derivative along a decay ray, with the
    fitted constants of log|E| <= -C |T|^p for |T| >= T_0.
    """
    m: int
    theta: float
    T_grid: np.ndarray
    log_E_values: np.ndarray
    derivative_values: np.ndarray
    power: int
    fitted_C: float
    fitted_T0: float
    nonpositive: bool
    sign_pattern_ok: bool

    @property
    def passed(self) -> bool:
        return self.nonpositive and self.sign_pattern_ok

    def to_rows(self) -> List[dict]:
        return [{"T": float(t), "log_E": float(v), "derivative": float(d)}
                for t, v, d in zip(self.T_grid, self.log_E_values, self.derivative_values)]

    def to_dict(self):
        return {
            "m": self.m,
            "theta": self.theta,
            "power": self.power,
            "fitted_C": self.fitted_C,
            "fitted_T0": self.fitted_T0,
            "nonpositive": self.nonpositive,
            "sign_pattern_ok": self.sign_pattern_ok,
            "verdict": "PASS" if self.passed else "FAIL",
        }


@dataclass
class ProdLInstance:
    """
    L_0 = 3, L_{n+1} = L_n (1 - delta_n) when n is a subsequence index, else 3.
    Radii are held as log r_n.
    """
    log_r: List[float]
    subsequence_indices: List[int]
    L_sequence: List[float]
    delta_values: List[float]

    @property
    def min_L(self) -> float:
        return min(self.L_sequence)

    @property
    def lower_bound(self) -> float:
        return 3.0 * (1.0 - sum(4.0 ** -(k + 1) for k in range(len(self.subsequence_indices))))

    @property
    def passed(self) -> bool:
        return self.min_L >= 2.0

    def to_dict(self):
        return {
            "log_r": list(self.log_r),
            "subsequence_indices": list(self.subsequence_indices),
            "L_sequence": list(self.L_sequence),
            "delta_values": list(self.delta_values),
            "min_L": self.min_L,
            "lower_bound": self.lower_bound,
            "verdict": "PASS" if self.passed else "FAIL",
        }


@dataclass
class Construction51Data:
    """
    Levels of the recursive construction: zeros a_k, multiplicities m_k, test
    radii r_k = 3 a_k and the claimed bounds log m(r_k) >= ([a_k^rho] - 1) ln 2.
    """
    rho: Optional[float]
    variant: str
    levels: List[ConstructionLevel]

    @property
    def log_a_values(self) -> List[float]:
        return [lv.log_a for lv in self.levels]

    @property
    def m_values(self) -> List[Optional[int]]:
        return [lv.m for lv in self.levels]

    @property
    def log_r_values(self) -> List[float]:
        return [lv.log_a + float(np.log(3.0)) for lv in self.levels]

    @property
    def claimed_lower_bounds(self) -> List[float]:
        out = []
        for lv in self.levels:
            count = lv.n if lv.n is not None else float(np.exp(lv.log_n))
            out.append((count - 1) * float(np.log(2.0)))
        return out

    def to_rows(self) -> List[dict]:
        rows = []
        for lv, log_r, bound in zip(self.levels, self.log_r_values, self.claimed_lower_bounds):
            rows.append({
                "k": lv.k,
                "log_a": lv.log_a,
                "a": str(lv.a) if lv.a is not None else "",
                "m": str(lv.m) if lv.m is not None else "",
                "log_m": lv.log_m,
                "log_r": log_r,
                "claimed_lower_bound": bound,
                "slack": lv.slack,
            })
        return rows

    def to_dict(self):
        return {
            "rho": self.rho,
            "variant": self.variant,
            "levels": [lv.to_dict() for lv in self.levels],
            "claimed_lower_bounds": self.claimed_lower_bounds,
        }


@dataclass
class Construction51Check:
    """Per-level diagnostics of the construction's inequalities."""
    k: int
    tail_sum: float
    tail_ok: bool
    log_min_modulus: float
    claimed_bound: float
    bound_ok: bool
    log_next_radius: Optional[float]
    dominance_ok: Optional[bool]
    slack: int = 0

    @property
    def passed(self) -> bool:
        return self.bound_ok

    def to_dict(self):
        data = self.__dict__.copy()
        data["verdict"] = "PASS" if self.passed else "FAIL"
        return data
