from dataclasses import dataclass, field
from typing import Optional

from core.models.interval import Interval
from core.models.slope import SlopeFunction
from core.models.survival import SurvivalModel


@dataclass(frozen=True)
class HazardLocationFamily:
    """The location family of a monotone generator, indexed by its rate."""

    generator:   SurvivalModel
    rate_domain: Interval

    def __str__(self):
        return f"HL({self.generator.name}) on {self.rate_domain}"


@dataclass(frozen=True)
class FamilySpec:
    """A named closed-form family together with its slope function."""

    name:              str
    parameters:        dict
    model:             SurvivalModel
    slope_closed_form: Optional[SlopeFunction]
    citation:          str
    # unit generator when the family is an XD(mu, lambda) model
    generator:         Optional[SurvivalModel] = None
    kind:              str = field(default='example', compare=False)

    @property
    def unit_generator(self) -> SurvivalModel:
        return self.generator if self.generator is not None else self.model
