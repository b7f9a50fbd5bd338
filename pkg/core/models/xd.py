from dataclasses import dataclass
from typing import Callable, Optional

from core.models.interval import Interval
from core.models.slope import SlopeFunction
from core.models.survival import SurvivalModel


@dataclass(frozen=True)
class XDModel:
    """
    Extreme dispersion model XD(mu, lambda) with survival
    G^lambda(y/lambda + h^{-1}(mu)); `model` is the realized distribution.
    """

    generator:  SurvivalModel
    mu:         float
    lam:        float
    unit_slope: SlopeFunction
    model:      SurvivalModel

    def __str__(self):
        return f"XD({self.mu:.6g}, {self.lam:.6g}) generated by {self.generator.name}"

    @property
    def dispersion(self) -> float:
        return 1.0 / self.lam

    @property
    def support(self) -> Interval:
        return self.model.support

    @property
    def censor_mass(self) -> float:
        return self.model.censor_mass

    def survival(self, y):
        return self.model.survival(y)

    def integrated_hazard(self, y):
        return self.model.integrated_hazard(y)

    def hazard(self, y):
        return self.model.hazard(y)

    def hazard_derivative(self, y, order: int = 1):
        return self.model.hazard_derivative(y, order)

    def slope(self, mu):
        """Slope function of the fixed-lambda location family, v(mu)/lambda."""
        return self.unit_slope(mu) / self.lam


@dataclass(frozen=True)
class FrailtyLink:
    """
    Variance function V on Omega of the frailty distribution.

    The mean mapping tau is rebuilt from V by the frailty construction in
    `core.xd_model`, pinned at tau(0) = `pin`.
    """

    variance_function: Callable
    vf_domain:         Interval
    pin:               Optional[float] = None
    name:              str = 'V'

    @property
    def reference_mean(self) -> float:
        if self.pin is not None:
            return float(self.pin)
        if self.vf_domain.bounded:
            return 0.5 * (self.vf_domain.lower + self.vf_domain.upper)
        return self.vf_domain.interior_point()
