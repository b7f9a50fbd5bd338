from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

from core.exceptions import InvalidSlope
from core.models.interval import Interval, MonotoneClass

_SIGN_CHECK_POINTS = 64


class SignClass(str, Enum):
    POSITIVE = 'POSITIVE'
    NEGATIVE = 'NEGATIVE'

    @property
    def monotone_class(self) -> MonotoneClass:
        return MonotoneClass.IFR if self is SignClass.POSITIVE else MonotoneClass.DFR

    @classmethod
    def of(cls, monotone_class: MonotoneClass) -> 'SignClass':
        return cls.POSITIVE if monotone_class is MonotoneClass.IFR else cls.NEGATIVE


class Verdict(str, Enum):
    VALID_PROPER         = 'VALID_PROPER'
    VALID_RIGHT_CENSORED = 'VALID_RIGHT_CENSORED'
    INVALID              = 'INVALID'


@dataclass(frozen=True)
class SlopeFunction:
    """
    A signed function v on an open rate domain Psi inside (0, inf).

    The sign is checked on a grid at construction; a zero or a sign change
    inside the domain is rejected.
    """

    v:          Callable
    domain:     Interval
    sign_class: SignClass
    name:       str = 'v'
    expression: Optional[str] = None

    def __post_init__(self):
        if self.domain.lower < 0.0:
            raise InvalidSlope(f"slope domain {self.domain} is not inside (0, inf)")
        grid = self.domain.grid(_SIGN_CHECK_POINTS, span=50.0)
        values = np.asarray(self(grid), dtype=float)
        finite = np.isfinite(values)
        expected = 1.0 if self.sign_class is SignClass.POSITIVE else -1.0
        if np.any(np.isnan(values)):
            raise InvalidSlope(f"{self.name} is undefined inside {self.domain}")
        if np.any(np.sign(values[finite]) != expected):
            raise InvalidSlope(
                f"{self.name} does not keep the {self.sign_class.value.lower()} sign on {self.domain}"
            )

    def __call__(self, mu):
        mu = np.asarray(mu, dtype=float)
        with np.errstate(all='ignore'):
            values = np.broadcast_to(np.asarray(self.v(mu), dtype=float), mu.shape)
        return values[()] if values.ndim == 0 else np.array(values)

    def __str__(self):
        label = self.expression or self.name
        return f"v(mu) = {label} on {self.domain}"

    @property
    def monotone_class(self) -> MonotoneClass:
        return self.sign_class.monotone_class

    @property
    def increasing(self) -> bool:
        return self.sign_class is SignClass.POSITIVE

    def hazard_side_endpoints(self) -> tuple:
        """(h(a)-side endpoint, h(b)-side endpoint) of the domain."""
        if self.increasing:
            return self.domain.lower, self.domain.upper
        return self.domain.upper, self.domain.lower


@dataclass(frozen=True)
class SlopeDiagnosis:
    left_integral:   float
    right_integral:  float
    verdict:         Verdict
    continuity_at_a: bool

    @property
    def is_valid(self) -> bool:
        return self.verdict is not Verdict.INVALID
