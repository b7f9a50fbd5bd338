# core/serializers.py

import logging
from pathlib import Path
from typing import Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt, ValidationError, field_validator, model_validator

from core.exceptions import ConfigError
from core.expressions import parse_endpoint

logger = logging.getLogger(__name__)


class FamilyConfig(BaseModel):
    model_config = ConfigDict(extra='forbid')

    name:       str
    parameters: dict[str, float] = Field(default_factory=dict)


class ExperimentConfig(BaseModel):
    """
    A convergence experiment as read from a YAML (or JSON) file.

    Either `family` or `slope_expression` + `domain` names the generator.
    `n_values` drive a GEV experiment, `m_values` an exponential-slope one.
    `seed` feeds the Monte Carlo check that `mc_draws` switches on.
    """

    model_config = ConfigDict(extra='forbid', populate_by_name=True)

    command:          Literal['gev', 'exp_slope']
    family:           Optional[FamilyConfig] = None
    slope_expression: Optional[str] = None
    domain:           Optional[tuple[str | float, str | float]] = None
    mu0:              Optional[PositiveFloat] = None
    mu:               PositiveFloat
    lam:              PositiveFloat = Field(alias='lambda')
    n_values:         Optional[list[int]] = None
    m_values:         Optional[list[PositiveFloat]] = None
    window:           Optional[tuple[float, float]] = None
    slope_window:     Optional[tuple[float, float]] = None
    beta:             Optional[int] = None
    p:                Optional[float] = None
    tolerance:        Optional[PositiveFloat] = None
    mc_draws:         Optional[PositiveInt] = None
    seed:             int = 0
    workers:          int = Field(default=1, ge=1)
    output_path:      Optional[str] = None

    @field_validator('n_values')
    @classmethod
    def positive_counts(cls, values):
        if values is not None and (not values or any(n < 1 for n in values)):
            raise ValueError('n_values must be a nonempty list of positive counts')
        return values

    @field_validator('window', 'slope_window')
    @classmethod
    def ordered(cls, value):
        if value is not None and not value[0] < value[1]:
            raise ValueError('window must be (low, high) with low < high')
        return value

    @model_validator(mode='after')
    def consistent(self):
        # 1. exactly one way to name the generator
        if (self.family is None) == (self.slope_expression is None):
            raise ValueError('give either family or slope_expression')
        if self.slope_expression is not None and self.domain is None:
            raise ValueError('slope_expression needs a domain')

        # 2. the step indices match the command
        if self.command == 'gev':
            if not self.n_values:
                raise ValueError('a gev experiment needs n_values')
            if self.m_values is not None or self.beta is not None:
                raise ValueError('m_values and beta belong to exp_slope experiments')
        else:
            if not self.m_values:
                raise ValueError('an exp_slope experiment needs m_values')
            if self.beta not in (-1, 0, 1):
                raise ValueError('an exp_slope experiment needs beta in {-1, 0, 1}')
            if self.n_values is not None or self.p is not None:
                raise ValueError('n_values and p belong to gev experiments')
        return self

    @property
    def domain_bounds(self) -> Optional[tuple]:
        if self.domain is None:
            return None
        return tuple(parse_endpoint(end) for end in self.domain)


def load_experiment_config(path) -> ExperimentConfig:
    """Read and validate an experiment file; every failure is a ConfigError."""
    path = Path(path)
    try:
        raw = yaml.safe_load(path.read_text(encoding='utf-8'))
    except OSError as err:
        raise ConfigError(f"cannot read {path}: {err}") from err
    except yaml.YAMLError as err:
        raise ConfigError(f"{path} is not valid YAML: {err}") from err
    if not isinstance(raw, dict):
        raise ConfigError(f"{path} does not hold a mapping")
    try:
        config = ExperimentConfig.model_validate(raw)
    except ValidationError as err:
        first = err.errors()[0]
        location = '.'.join(str(part) for part in first['loc']) or 'config'
        raise ConfigError(f"{path}: {location}: {first['msg']}") from err
    logger.debug("loaded %s experiment from %s", config.command, path)
    return config
