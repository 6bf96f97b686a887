from dataclasses import dataclass, field
from typing import List, Literal, Tuple

import numpy as np

# --- Strict types for schedule kinds ---
ScheduleKind = Literal["MAX_MOD_POWER", "MIN_MOD_ITER_CUBE", "TILDE_MIN_ITER", "QUITE_FAST", "CUSTOM"]

SCHEDULE_NAMES = {
    "max-mod-power": "MAX_MOD_POWER",
    "min-mod-iter-cube": "MIN_MOD_ITER_CUBE",
    "tilde-min-iter": "TILDE_MIN_ITER",
    "quite-fast": "QUITE_FAST",
    "custom": "CUSTOM",
}


@dataclass
class ThresholdSchedule:
    """
    Log-space thresholds: a point survives step n when log|f^{n+offset}(z)| >= values[n].

    MAX_MOD_POWER     values[n] = log M^n(R)
    MIN_MOD_ITER_CUBE values[n] = log M^{-1}(m^{n+N}(r)^exponent)
    TILDE_MIN_ITER    values[n] = log tilde-m^n(R)
    QUITE_FAST        values[n] = log mu^n(R), mu(r) = M(r)^eps
    CUSTOM            values[n] = log a_n
    """
    kind: ScheduleKind
    values: np.ndarray
    offset: int = 0
    parameters: dict = field(default_factory=dict)

    @property
    def steps(self) -> int:
        return len(self.values) - 1

    def raised(self, shift: float) -> "ThresholdSchedule":
        """Same schedule with every threshold raised by `shift` in log-space."""
        return ThresholdSchedule(self.kind, self.values + shift, self.offset, dict(self.parameters))

    def to_dict(self):
        return {
            "kind": self.kind,
            "offset": self.offset,
            "parameters": dict(self.parameters),
            "values": [float(v) for v in self.values],
        }

    def __repr__(self):
        return f"ThresholdSchedule({self.kind}, steps={self.steps}, offset={self.offset})"


@dataclass
class EscapeGrid:
    """
    Per-pixel escape classification over a rectangle; row 0 is the top edge (y_max).
    survived_steps[i, j] is the first step whose threshold the pixel missed, or max_iter.
    """
    rectangle: Tuple[float, float, float, float]
    width: int
    height: int
    max_iter: int
    survived_steps: np.ndarray
    final_log_modulus: np.ndarray

    def pixel_coordinates(self) -> Tuple[np.ndarray, np.ndarray]:
        """Centres of the pixels: x per column, y per row."""
        x_min, x_max, y_min, y_max = self.rectangle
        x = x_min + (np.arange(self.width) + 0.5) * (x_max - x_min) / self.width
        y = y_max - (np.arange(self.height) + 0.5) * (y_max - y_min) / self.height
        return x, y

    def intensities(self) -> np.ndarray:
        """survived_steps scaled linearly onto 0..255."""
        if self.max_iter == 0:
            return np.zeros((self.height, self.width), dtype=np.uint8)
        scaled = np.rint(255.0 * self.survived_steps / self.max_iter)
        return np.clip(scaled, 0, 255).astype(np.uint8)

    def to_rows(self) -> List[dict]:
        x, y = self.pixel_coordinates()
        rows = []
        for i in range(self.height):
            for j in range(self.width):
                rows.append({
                    "x": float(x[j]),
                    "y": float(y[i]),
                    "survived_steps": int(self.survived_steps[i, j]),
                    "final_log_modulus": float(self.final_log_modulus[i, j]),
                })
        return rows

    def summary(self) -> dict:
        survivors = int(np.count_nonzero(self.survived_steps == self.max_iter))
        return {
            "width": self.width,
            "height": self.height,
            "max_iter": self.max_iter,
            "survivors": survivors,
            "fraction_survived": survivors / float(self.width * self.height),
        }

    def __repr__(self):
        return f"EscapeGrid({self.width}x{self.height}, max_iter={self.max_iter})"
