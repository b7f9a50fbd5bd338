from dataclasses import dataclass
from enum import Enum

import numpy as np

from core.exceptions import DomainError


class MonotoneClass(str, Enum):
    IFR  = 'IFR'
    DFR  = 'DFR'
    NONE = 'NONE'

    def swapped(self) -> 'MonotoneClass':
        if self is MonotoneClass.IFR:
            return MonotoneClass.DFR
        if self is MonotoneClass.DFR:
            return MonotoneClass.IFR
        return self


@dataclass(frozen=True)
class Interval:
    """Open interval (lower, upper) of the extended real line."""

    lower: float
    upper: float

    def __post_init__(self):
        lower, upper = float(self.lower), float(self.upper)
        if np.isnan(lower) or np.isnan(upper) or not lower < upper:
            raise DomainError(f"({self.lower}, {self.upper}) is not a nonempty interval")
        object.__setattr__(self, 'lower', lower)
        object.__setattr__(self, 'upper', upper)

    def __str__(self):
        return f"({self.lower:.17g}, {self.upper:.17g})"

    @property
    def bounded(self) -> bool:
        return bool(np.isfinite(self.lower) and np.isfinite(self.upper))

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, x) -> bool:
        """Open containment, elementwise for arrays."""
        x = np.asarray(x, dtype=float)
        inside = (x > self.lower) & (x < self.upper)
        return bool(inside) if inside.ndim == 0 else inside

    def covers(self, other: 'Interval', tol: float = 0.0) -> bool:
        return other.lower >= self.lower - tol and other.upper <= self.upper + tol

    def intersect(self, other: 'Interval') -> 'Interval':
        return Interval(max(self.lower, other.lower), min(self.upper, other.upper))

    def scaled(self, c: float) -> 'Interval':
        return Interval(self.lower * c, self.upper * c) if c > 0 else Interval(self.upper * c, self.lower * c)

    def shifted(self, s: float) -> 'Interval':
        return Interval(self.lower + s, self.upper + s)

    def reflected(self) -> 'Interval':
        return Interval(-self.upper, -self.lower)

    def shrunk(self, margin: float) -> 'Interval':
        return Interval(self.lower + margin, self.upper - margin)

    def interior_point(self) -> float:
        if self.bounded:
            return 0.5 * (self.lower + self.upper)
        if np.isfinite(self.lower):
            return self.lower + max(1.0, abs(self.lower))
        if np.isfinite(self.upper):
            return self.upper - max(1.0, abs(self.upper))
        return 0.0

    def grid(self, n: int = 200, span: float = 20.0) -> np.ndarray:
        """
        n points inside the interval; unbounded sides are covered up to
        `span` away from the finite endpoint (or the origin).
        """
        if self.bounded:
            pad = 1e-3 * self.width
            return np.linspace(self.lower + pad, self.upper - pad, n)
        if np.isfinite(self.lower):
            return self.lower + np.geomspace(1e-3, span, n)
        if np.isfinite(self.upper):
            return self.upper - np.geomspace(1e-3, span, n)[::-1]
        return np.linspace(-span, span, n)

    def linspace(self, n: int) -> np.ndarray:
        """n points on the closure; only for bounded intervals."""
        if not self.bounded:
            raise DomainError(f"{self} is not compact")
        return np.linspace(self.lower, self.upper, n)


POSITIVE_REALS = Interval(0.0, np.inf)
REAL_LINE = Interval(-np.inf, np.inf)
