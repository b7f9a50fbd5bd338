from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from core.models.interval import Interval


class Side(str, Enum):
    LEFT  = 'LEFT'
    RIGHT = 'RIGHT'


@dataclass(frozen=True)
class ConvergenceStep:
    index:                  float
    slope_sup_distance:     float
    survival_sup_distance:  float
    tightness_integral:     float
    rate:                   float = float('nan')
    ks_distance:            Optional[float] = None


@dataclass(frozen=True)
class ConvergenceReport:
    steps:          tuple
    limit_family:   str
    compact_window: Interval
    passed:         bool
    tolerance:      float
    tightness_bound: float
    details:        dict = field(default_factory=dict, compare=False)

    @property
    def survival_distances(self) -> np.ndarray:
        return np.array([step.survival_sup_distance for step in self.steps])

    @property
    def slope_distances(self) -> np.ndarray:
        return np.array([step.slope_sup_distance for step in self.steps])

    @property
    def tightness_integrals(self) -> np.ndarray:
        return np.array([step.tightness_integral for step in self.steps])

    def strictly_decreasing(self) -> bool:
        distances = self.survival_distances
        return bool(np.all(np.diff(distances) < 0))
