import logging
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from core import numerics
from core.exceptions import DomainError, NotMonotone, UnsupportedOrder
from core.models.interval import Interval, MonotoneClass
from xd_platform import settings

logger = logging.getLogger(__name__)

# hazard values beyond these are read as the limits 0 and infinity
_HAZARD_FLOOR = 1e-9
_HAZARD_CEILING = 1e9
_FAR = 1e8


def _margin(end: float) -> float:
    return settings.ENDPOINT_CLAMP * max(1.0, abs(end))


@dataclass(frozen=True)
class SurvivalModel:
    """
    A distribution on the open support (a, b) given by its integrated hazard.

    The raw callables are only ever evaluated inside the support; the public
    methods apply the conventions H = 0 left of the support and H = infinity
    right of it, except at a censored right endpoint where H is finite.
    `hazard_derivatives` holds closed forms of h', h'', ... as far as known,
    and `slope_fn` a closed form of h' o h^{-1} when composing the two loses
    precision near an endpoint.
    """

    support:              Interval
    integrated_hazard_fn: Callable
    hazard_fn:            Callable
    hazard_derivatives:   tuple = ()
    censor_mass:          float = 0.0
    monotone_class:       MonotoneClass = MonotoneClass.NONE
    inverse_hazard_fn:    Optional[Callable] = None
    hazard_range:         Optional[Interval] = None
    survival_fn:          Optional[Callable] = None
    slope_fn:             Optional[Callable] = None
    name:                 str = 'custom'
    parameters:           dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        censor = float(self.censor_mass)
        if not 0.0 <= censor < 1.0:
            raise DomainError(f"censor mass {censor} is not in [0, 1)")
        object.__setattr__(self, 'censor_mass', censor)
        if self.monotone_class is MonotoneClass.DFR and not np.isfinite(self.support.lower):
            raise DomainError(f"{self.name}: a DFR model needs a finite lower endpoint")
        if (
            self.monotone_class is MonotoneClass.IFR
            and not np.isfinite(self.support.upper)
            and censor > 0.0
        ):
            raise DomainError(f"{self.name}: an IFR model on a half-line cannot be improper")

    def __str__(self):
        return f"SurvivalModel {self.name} on {self.support} [{self.monotone_class.value}]"

    # -------------------------------------------------------------------------
    # Structure
    # -------------------------------------------------------------------------
    @property
    def is_proper(self) -> bool:
        return self.censor_mass == 0.0 or bool(np.isfinite(self.support.upper))

    @property
    def is_censored(self) -> bool:
        return self.censor_mass > 0.0

    @property
    def rate_domain(self) -> Interval:
        """Psi = h(C); closed form when known, else read from the hazard near the endpoints."""
        if self.hazard_range is not None:
            return self.hazard_range
        ends = []
        for end, inward in ((self.support.lower, 1.0), (self.support.upper, -1.0)):
            y = end + inward * _margin(end) if np.isfinite(end) else -inward * _FAR
            value = float(self.hazard(y))
            if value < _HAZARD_FLOOR:
                value = 0.0
            elif value > _HAZARD_CEILING or np.isnan(value):
                value = np.inf
            ends.append(value)
        logger.debug("estimated rate domain of %s from endpoint hazards %s", self.name, ends)
        return Interval(min(ends), max(ends))

    def replace(self, **changes) -> 'SurvivalModel':
        # a new hazard invalidates the closed-form slope unless one is passed along
        if 'hazard_fn' in changes and 'slope_fn' not in changes:
            changes['slope_fn'] = None
        return replace(self, **changes)

    # -------------------------------------------------------------------------
    # Evaluation
    # -------------------------------------------------------------------------
    def _clip(self, y: np.ndarray) -> np.ndarray:
        lower, upper = self.support.lower, self.support.upper
        lo = lower + _margin(lower) if np.isfinite(lower) else -np.inf
        hi = upper - _margin(upper) if np.isfinite(upper) else np.inf
        return np.clip(y, lo, hi)

    def _evaluate(self, func, y):
        y = np.asarray(y, dtype=float)
        with np.errstate(all='ignore'):
            values = np.broadcast_to(np.asarray(func(self._clip(y)), dtype=float), y.shape)
        return y, np.array(values, dtype=float)

    def integrated_hazard(self, y):
        y, values = self._evaluate(self.integrated_hazard_fn, y)
        values = np.maximum(values, 0.0)
        values = np.where(y <= self.support.lower, 0.0, values)
        upper = self.support.upper
        if np.isfinite(upper):
            beyond = y >= upper
            if self.is_censored:
                at_edge = beyond & (y <= upper + _margin(upper))
                values = np.where(at_edge, -np.log(self.censor_mass), values)
                values = np.where(beyond & ~at_edge, np.inf, values)
            else:
                values = np.where(beyond, np.inf, values)
        return values[()] if values.ndim == 0 else values

    def survival(self, y):
        y = np.asarray(y, dtype=float)
        with np.errstate(all='ignore'):
            values = np.exp(-np.asarray(self.integrated_hazard(y), dtype=float))
        if self.survival_fn is not None:
            _, closed = self._evaluate(self.survival_fn, y)
            inside = (y > self.support.lower) & (y < self.support.upper)
            values = np.where(inside, closed, values)
        return values[()] if np.ndim(values) == 0 else values

    def cdf(self, y):
        return 1.0 - self.survival(y)

    def hazard(self, y):
        y, values = self._evaluate(self.hazard_fn, y)
        values = np.where(y <= self.support.lower, 0.0, values)
        values = np.where(y >= self.support.upper, np.nan, values)
        return values[()] if values.ndim == 0 else values

    def density(self, y):
        return self.hazard(y) * self.survival(y)

    def hazard_derivative(self, y, order: int = 1):
        """k-th derivative of the hazard; closed form when available."""
        if order < 1:
            raise UnsupportedOrder(f"derivative order {order} is not positive")
        if len(self.hazard_derivatives) >= order:
            func = self.hazard_derivatives[order - 1]
            y, values = self._evaluate(func, y)
        else:
            known = len(self.hazard_derivatives)
            remaining = order - known
            if remaining > 3:
                raise UnsupportedOrder(
                    f"{self.name}: order {order} needs closed forms beyond h^({known})"
                )
            base = self.hazard_fn if known == 0 else self.hazard_derivatives[known - 1]
            y = np.asarray(y, dtype=float)
            inside = (y > self.support.lower) & (y < self.support.upper)
            values = np.zeros(y.shape)
            if np.any(inside):
                values[inside] = numerics.derivative(
                    base, y[inside], remaining, self.support.lower, self.support.upper
                )
        values = np.where(y <= self.support.lower, 0.0, values)
        values = np.where(y >= self.support.upper, np.nan, values)
        return values[()] if np.ndim(values) == 0 else values

    def inverse_hazard(self, mu):
        """h^{-1}(mu) for a monotone hazard."""
        if self.monotone_class is MonotoneClass.NONE:
            raise NotMonotone(f"{self.name} has no monotone hazard")
        if self.inverse_hazard_fn is not None:
            mu = np.asarray(mu, dtype=float)
            with np.errstate(all='ignore'):
                values = np.asarray(self.inverse_hazard_fn(mu), dtype=float)
            return values[()] if values.ndim == 0 else values
        return numerics.invert_monotone(
            self.hazard,
            mu,
            self.support.lower,
            self.support.upper,
            increasing=self.monotone_class is MonotoneClass.IFR,
            fprime=self.hazard_derivative,
        )


@dataclass(frozen=True)
class Semiinvariants:
    order:  int
    values: tuple

    def __getitem__(self, i: int) -> float:
        """k_i, counted from 1."""
        return self.values[i - 1]
