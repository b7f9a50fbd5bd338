# core/transforms.py

import logging

import numpy as np

from core.exceptions import (
    DomainError,
    DomainNotFull,
    DomainTooSmall,
    DomainViolation,
    NegativityViolation,
    NotCensorable,
    NotCensored,
    NotMonotone,
    OutOfSupport,
    RateOutOfDomain,
    UnboundedSupport,
)
from core.models import (
    HazardLocationFamily,
    Interval,
    MonotoneClass,
    POSITIVE_REALS,
    SlopeFunction,
    SurvivalModel,
)
from core.survival_core import classify_monotone, translate
from xd_platform import settings

logger = logging.getLogger(__name__)


def _require_monotone(model: SurvivalModel):
    if model.monotone_class is MonotoneClass.NONE:
        raise NotMonotone(f"{model.name} has no monotone hazard")


def _require_inside(model: SurvivalModel, c: float):
    if not model.support.contains(c):
        raise OutOfSupport(f"{c} is not inside the support {model.support} of {model.name}")


def _settle_class(model: SurvivalModel) -> SurvivalModel:
    """Reclassify a model whose class could not be carried over algebraically."""
    if model.monotone_class is not MonotoneClass.NONE:
        return model
    monotone_class = classify_monotone(model)
    if monotone_class is MonotoneClass.DFR and not np.isfinite(model.support.lower):
        monotone_class = MonotoneClass.NONE
    if monotone_class is MonotoneClass.IFR and not np.isfinite(model.support.upper) and model.is_censored:
        monotone_class = MonotoneClass.NONE
    logger.debug("%s settles as %s", model.name, monotone_class.value)
    return model.replace(monotone_class=monotone_class)


# -----------------------------------------------------------------------------
# Hazard location families
# -----------------------------------------------------------------------------
def hazard_location_family(generator: SurvivalModel) -> HazardLocationFamily:
    _require_monotone(generator)
    return HazardLocationFamily(generator=generator, rate_domain=generator.rate_domain)


def hl_member(family: HazardLocationFamily, mu: float) -> SurvivalModel:
    """The member with rate mu: y -> G(y + h^{-1}(mu))."""
    if not family.rate_domain.contains(mu):
        raise RateOutOfDomain(f"mu={mu} is not inside {family.rate_domain}")
    x0 = float(family.generator.inverse_hazard(mu))
    member = translate(family.generator, x0)
    return member.replace(name=f'HL({family.generator.name}; mu={mu:g})', hazard_range=family.rate_domain)


# -----------------------------------------------------------------------------
# Truncation and censoring
# -----------------------------------------------------------------------------
def truncate_left(model: SurvivalModel, c: float) -> SurvivalModel:
    """Law of Y given Y > c: G(y)/G(c) on (c, b)."""
    _require_inside(model, c)
    H, closed = model.integrated_hazard_fn, model.survival_fn
    Hc = float(model.integrated_hazard(c))
    rate_c = float(model.hazard(c))

    if model.monotone_class is MonotoneClass.IFR:
        hazard_range = Interval(rate_c, model.rate_domain.upper)
    elif model.monotone_class is MonotoneClass.DFR:
        hazard_range = Interval(model.rate_domain.lower, rate_c)
    else:
        hazard_range = None

    # G(c) underflows once H(c) passes about 745; the quotient is then read from H
    Gc = float(closed(c)) if closed is not None else 0.0
    if Gc > np.finfo(float).tiny:
        survival_fn = lambda y: closed(y) / Gc
    else:
        survival_fn = None
    if model.censor_mass > 0.0:
        censor = float(np.exp(np.log(model.censor_mass) + Hc))
    else:
        censor = 0.0

    truncated = model.replace(
        support=Interval(c, model.support.upper),
        integrated_hazard_fn=lambda y: H(y) - Hc,
        censor_mass=censor,
        hazard_range=hazard_range,
        survival_fn=survival_fn,
        name=f'{model.name} | y > {c:g}',
    )
    return _settle_class(truncated)


def censor_right(model: SurvivalModel, c: float) -> SurvivalModel:
    """Law of min(Y, c): support (a, c) with mass G(c) left at c."""
    _require_inside(model, c)
    rate_c = float(model.hazard(c))

    if model.monotone_class is MonotoneClass.IFR:
        hazard_range = Interval(model.rate_domain.lower, rate_c)
    elif model.monotone_class is MonotoneClass.DFR:
        hazard_range = Interval(rate_c, model.rate_domain.upper)
    else:
        hazard_range = None

    censored = model.replace(
        support=Interval(model.support.lower, c),
        censor_mass=float(model.survival(c)),
        hazard_range=hazard_range,
        name=f'{model.name} ^ {c:g}',
    )
    return _settle_class(censored)


# -----------------------------------------------------------------------------
# Reflections
# -----------------------------------------------------------------------------
def reflect_horizontal(model: SurvivalModel) -> SurvivalModel:
    """
    y -> G(b)/G(-y) on -C. The hazard becomes h(-y), the slope function -v
    and IFR and DFR swap.
    """
    if not model.is_censored:
        raise NotCensored(f"{model.name} has no censor mass to reflect")
    H, h, inverse, closed = model.integrated_hazard_fn, model.hazard_fn, model.inverse_hazard_fn, model.survival_fn
    Hb = -np.log(model.censor_mass)
    censor = model.censor_mass

    reflected = SurvivalModel(
        support=model.support.reflected(),
        integrated_hazard_fn=lambda y: Hb - H(-np.asarray(y, dtype=float)),
        hazard_fn=lambda y: h(-np.asarray(y, dtype=float)),
        hazard_derivatives=tuple(
            (lambda d, k: lambda y: (-1.0) ** k * d(-np.asarray(y, dtype=float)))(d, k)
            for k, d in enumerate(model.hazard_derivatives, start=1)
        ),
        censor_mass=censor,
        monotone_class=model.monotone_class.swapped(),
        inverse_hazard_fn=None if inverse is None else (lambda mu: -inverse(mu)),
        hazard_range=model.rate_domain,
        survival_fn=None if closed is None else (lambda y: censor / closed(-np.asarray(y, dtype=float))),
        name=f'hreflect({model.name})',
    )
    if model.monotone_class is MonotoneClass.NONE:
        return _settle_class(reflected)
    return reflected


def _restrict_below(model: SurvivalModel, m: float) -> SurvivalModel:
    """Keep the part of the support where the hazard stays below m."""
    upper = model.rate_domain.upper
    at_top = np.isfinite(upper) and abs(m - upper) <= settings.POSITIVITY_GUARD * max(1.0, upper)
    if at_top:
        restricted = model
    else:
        x_m = float(model.inverse_hazard(m))
        if model.monotone_class is MonotoneClass.IFR:
            restricted = censor_right(model, x_m)
        else:
            restricted = truncate_left(model, x_m)
    if not (np.isfinite(restricted.support.upper) and restricted.is_censored):
        raise NotCensorable(
            f"{restricted.name} is not right censored at a finite endpoint"
        )
    return restricted


def reflect_vertical(model: SurvivalModel, m: float) -> SurvivalModel:
    """
    The model with slope function mu -> v(m - mu) on (0, m).

    The support is first cut down to where h < m, which leaves a model right
    censored at a finite b0; the result is G(-y)/G(b0) exp(-m(y + b0)) on
    (-b0, -a0), right censored exactly when a0 is finite.
    """
    _require_monotone(model)
    if not m > 0:
        raise DomainTooSmall(f"reflection level {m} is not positive")
    psi = model.rate_domain
    if psi.lower > settings.POSITIVITY_GUARD or m > psi.upper * (1.0 + settings.POSITIVITY_GUARD):
        raise DomainTooSmall(f"(0, {m:g}) is not inside the rate domain {psi} of {model.name}")

    restricted = _restrict_below(model, m)
    H, h, inverse, closed = (
        restricted.integrated_hazard_fn,
        restricted.hazard_fn,
        restricted.inverse_hazard,
        restricted.survival_fn,
    )
    a0, b0 = restricted.support.lower, restricted.support.upper
    H_b0 = -np.log(restricted.censor_mass)

    def integrated_hazard(y):
        y = np.asarray(y, dtype=float)
        return H(-y) - H_b0 + m * (y + b0)

    if np.isfinite(a0):
        censor = float(np.exp(H_b0 - m * (b0 - a0)))
    else:
        censor = 0.0

    if closed is not None:
        censor_r = restricted.censor_mass
        survival_fn = lambda y: closed(-np.asarray(y, dtype=float)) / censor_r * np.exp(
            -m * (np.asarray(y, dtype=float) + b0)
        )
    else:
        survival_fn = None

    reflected = SurvivalModel(
        support=Interval(-b0, -a0),
        integrated_hazard_fn=integrated_hazard,
        hazard_fn=lambda y: m - h(-np.asarray(y, dtype=float)),
        hazard_derivatives=tuple(
            (lambda d, k: lambda y: (-1.0) ** (k + 1) * d(-np.asarray(y, dtype=float)))(d, k)
            for k, d in enumerate(restricted.hazard_derivatives, start=1)
        ),
        censor_mass=censor,
        monotone_class=model.monotone_class,
        inverse_hazard_fn=lambda mu: -inverse(m - np.asarray(mu, dtype=float)),
        hazard_range=Interval(0.0, m),
        survival_fn=survival_fn,
        name=f'vreflect({model.name}, {m:g})',
        parameters={'m': m},
    )
    logger.debug("vertical reflection of %s at %g lives on %s, censor %g", model.name, m, reflected.support, censor)
    return reflected


# -----------------------------------------------------------------------------
# Exponential components
# -----------------------------------------------------------------------------
def add_exponential_component(model: SurvivalModel, m: float) -> SurvivalModel:
    """
    H(y) + m(y - a): for m > 0 the law of min(Y, a + E_m), for m < 0 the
    removal of an exponential component. The slope function moves to m + Psi.
    """
    a, b = model.support.lower, model.support.upper
    if not np.isfinite(a):
        raise UnboundedSupport(f"{model.name} has no finite lower endpoint")
    eta_low = model.rate_domain.lower
    if m < -eta_low:
        if m < -eta_low - settings.POSITIVITY_GUARD:
            raise NegativityViolation(
                f"m={m:g} would push the hazard of {model.name} below 0 (inf Psi = {eta_low:g})"
            )
        m = -eta_low
    if m == 0:
        return model

    H, h, inverse, closed = model.integrated_hazard_fn, model.hazard_fn, model.inverse_hazard_fn, model.survival_fn
    if np.isfinite(b):
        censor = model.censor_mass * np.exp(-m * (b - a))
    else:
        censor = 0.0 if m > 0 else model.censor_mass

    combined = model.replace(
        integrated_hazard_fn=lambda y: H(y) + m * (np.asarray(y, dtype=float) - a),
        hazard_fn=lambda y: h(y) + m,
        censor_mass=censor,
        inverse_hazard_fn=None if inverse is None else (lambda mu: inverse(np.asarray(mu, dtype=float) - m)),
        hazard_range=model.rate_domain.shifted(m),
        survival_fn=None if closed is None else (
            lambda y: closed(y) * np.exp(-m * (np.asarray(y, dtype=float) - a))
        ),
        name=f'{model.name} {"+" if m > 0 else "-"} E({abs(m):g})',
    )
    return combined


def remove_exponential_component(model: SurvivalModel) -> SurvivalModel:
    """Subtract the largest exponential component, leaving inf Psi = 0."""
    eta_low = model.rate_domain.lower
    if eta_low == 0:
        return model
    return add_exponential_component(model, -eta_low)


# -----------------------------------------------------------------------------
# Slope-function algebra
# -----------------------------------------------------------------------------
def location_scale_slope(
    v: SlopeFunction,
    alpha: float,
    beta: float,
    gamma: float,
    restrict_to: Interval = None,
) -> SlopeFunction:
    """
    mu -> gamma v((mu - alpha)/beta) on alpha + beta Psi, optionally cut
    down to `restrict_to`.
    """
    if not (beta > 0 and gamma > 0):
        raise DomainViolation(f"beta={beta} and gamma={gamma} must both be positive")
    domain = v.domain.scaled(beta).shifted(alpha)
    if restrict_to is not None:
        try:
            domain = domain.intersect(restrict_to)
        except DomainError as err:
            raise DomainViolation(f"{domain} does not meet {restrict_to}") from err
    if domain.lower < 0:
        raise DomainViolation(f"{domain} is not inside (0, inf)")

    base = v.v
    label = v.expression or v.name
    return SlopeFunction(
        v=lambda mu: gamma * base((np.asarray(mu, dtype=float) - alpha) / beta),
        domain=domain,
        sign_class=v.sign_class,
        name=f'{gamma:g}*[{label}]((mu-{alpha:g})/{beta:g})',
    )


def shifted_slope(v: SlopeFunction, m: float) -> SlopeFunction:
    """mu -> v(m + mu) on Psi - m."""
    base = v.v
    return SlopeFunction(
        v=lambda mu: base(m + np.asarray(mu, dtype=float)),
        domain=v.domain.shifted(-m).intersect(POSITIVE_REALS),
        sign_class=v.sign_class,
        name=f'[{v.expression or v.name}](mu+{m:g})',
    )


def shift_transform(xd, m: float):
    """
    Restrict the generator to rates above m, then remove the exponential
    component. The unit slope becomes v(m + mu) on (0, inf).
    """
    from core.xd_model import xd_make

    unit = xd.unit_slope
    if not (unit.domain.lower == 0.0 and unit.domain.upper == np.inf):
        raise DomainNotFull(f"unit slope domain {unit.domain} is not (0, inf)")
    if not m > 0:
        raise DomainViolation(f"shift {m} is not positive")

    generator = xd.generator
    x_m = float(generator.inverse_hazard(m))
    if generator.monotone_class is MonotoneClass.IFR:
        restricted = truncate_left(generator, x_m)
    else:
        restricted = censor_right(generator, x_m)
    shifted = add_exponential_component(restricted, -m).replace(
        hazard_range=POSITIVE_REALS,
        name=f'shift({generator.name}, {m:g})',
    )
    logger.debug("shift by %g turns %s into %s", m, generator.name, shifted.support)
    return xd_make(shifted, xd.mu, xd.lam, unit_slope=shifted_slope(unit, m))
