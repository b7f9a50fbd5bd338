# core/xd_model.py

import logging

import numpy as np
from scipy import optimize

from core import numerics
from core.exceptions import (
    DomainError,
    InvalidScale,
    InvalidVarianceFunction,
    NonpositiveSlope,
    NotMonotone,
    OutOfSupport,
    RateOutOfDomain,
)
from core.models import (
    FrailtyLink,
    Interval,
    MonotoneClass,
    SignClass,
    SlopeFunction,
    SurvivalModel,
    XDModel,
)
from core.slope_calculus import reconstruct_from_slope, slope_function_of
from core.survival_core import exponential_model, scale_model, translate
from core.transforms import truncate_left
from xd_platform import settings

logger = logging.getLogger(__name__)

# Richardson base index for the second-order coefficient
EXPANSION_INDEX = 1000


# -----------------------------------------------------------------------------
# Construction
# -----------------------------------------------------------------------------
def xd_make(generator: SurvivalModel, mu: float, lam: float, unit_slope: SlopeFunction = None) -> XDModel:
    """
    XD(mu, lambda) generated by G: survival G^lambda(y/lambda + h^{-1}(mu))
    on lambda(C - h^{-1}(mu)). The rate at 0 is mu for every lambda.
    """
    if generator.monotone_class is MonotoneClass.NONE:
        raise NotMonotone(f"{generator.name} has no monotone hazard")
    if not lam > 0:
        raise InvalidScale(f"index lambda={lam} is not positive")
    psi = generator.rate_domain
    if not psi.contains(mu):
        raise RateOutOfDomain(f"mu={mu} is not inside {psi}")
    if unit_slope is None:
        unit_slope = slope_function_of(generator)

    x0 = float(generator.inverse_hazard(mu))
    H, h, inverse, closed = (
        generator.integrated_hazard_fn,
        generator.hazard_fn,
        generator.inverse_hazard_fn,
        generator.survival_fn,
    )

    def inner(y):
        return np.asarray(y, dtype=float) / lam + x0

    model = SurvivalModel(
        support=generator.support.shifted(-x0).scaled(lam),
        integrated_hazard_fn=lambda y: lam * H(inner(y)),
        hazard_fn=lambda y: h(inner(y)),
        hazard_derivatives=tuple(
            (lambda d, k: lambda y: d(inner(y)) / lam ** k)(d, k)
            for k, d in enumerate(generator.hazard_derivatives, start=1)
        ),
        censor_mass=generator.censor_mass ** lam if generator.is_censored else 0.0,
        monotone_class=generator.monotone_class,
        inverse_hazard_fn=None if inverse is None else (
            lambda eta: lam * (inverse(eta) - x0)
        ),
        hazard_range=psi,
        survival_fn=None if closed is None else (lambda y: closed(inner(y)) ** lam),
        slope_fn=None if generator.slope_fn is None else (
            lambda eta: generator.slope_fn(eta) / lam
        ),
        name=f'XD({mu:g}, {lam:g}; {generator.name})',
        parameters={'mu': mu, 'lambda': lam},
    )
    return XDModel(generator=generator, mu=mu, lam=lam, unit_slope=unit_slope, model=model)


def with_index(xd: XDModel, lam: float) -> XDModel:
    """Same generator and rate, index lambda."""
    return xd_make(xd.generator, xd.mu, lam, unit_slope=xd.unit_slope)


def scaled_min(xd: XDModel, n: int) -> XDModel:
    """n min(Y_1, ..., Y_n) of n copies of XD(mu, lambda) is XD(mu, n lambda)."""
    if n < 1:
        raise DomainError(f"count {n} is not positive")
    return with_index(xd, n * xd.lam)


def extremal_process_marginal(xd: XDModel, t: float) -> XDModel:
    """t X_t ~ XD(mu, lambda t) for the extremal process started from XD(mu, lambda)."""
    if not t > 0:
        raise InvalidScale(f"time {t} is not positive")
    return with_index(xd, xd.lam * t)


def scale_xd(xd: XDModel, c: float) -> SurvivalModel:
    """c XD(mu, lambda) as a plain model."""
    return scale_model(xd.model, c)


def scale_closure_distance(xd: XDModel, c: float, grid=None) -> float:
    """
    Smallest survival sup-distance between c XD(mu, lambda) and any
    XD(mu/c, lambda') of the same generator. Zero for the GEV families.
    """
    target = scale_xd(xd, c)
    mu = xd.mu / c
    if grid is None:
        grid = np.linspace(-settings.WINDOW_HALF_WIDTH, settings.WINDOW_HALF_WIDTH, 121)
    grid = np.asarray(grid, dtype=float)

    def distance(log_lam):
        candidate = xd_make(xd.generator, mu, float(np.exp(log_lam)), unit_slope=xd.unit_slope)
        return numerics.sup_distance(target.survival, candidate.survival, grid)

    centre = np.log(xd.lam)
    result = optimize.minimize_scalar(distance, bounds=(centre - 10.0, centre + 10.0), method='bounded')
    logger.debug("closest index to %g XD is %g, distance %g", c, np.exp(result.x), result.fun)
    return float(result.fun)


# -----------------------------------------------------------------------------
# Conditional tails and local expansions
# -----------------------------------------------------------------------------
def conditional_tail(xd, c: float) -> SurvivalModel:
    """Law of Y - c given Y > c."""
    model = xd.model if isinstance(xd, XDModel) else xd
    if not model.support.contains(c):
        raise OutOfSupport(f"{c} is not inside the support {model.support} of {model.name}")
    return translate(truncate_left(model, c), c)


def exponential_tail_distance(xd, c: float = 0.0, y_max: float = 3.0, points: int = None) -> float:
    """Sup distance on [0, y_max] between the conditional tail at c and E_mu, mu = h(c)."""
    model = xd.model if isinstance(xd, XDModel) else xd
    tail = conditional_tail(model, c)
    rate = float(model.hazard(c))
    grid = np.linspace(0.0, y_max, points or settings.GRID_POINTS)
    return numerics.sup_distance(tail.survival, lambda y: np.exp(-rate * y), grid)


def conditional_expansion(model: SurvivalModel, y: float, n: int) -> float:
    """log{G^n(y/n)/G^n(0)} + y mu, which behaves like -s y^2/(2n)."""
    if not model.support.contains(0.0):
        raise DomainError(f"0 is outside the support {model.support} of {model.name}")
    mu = float(model.hazard(0.0))
    increment = float(model.integrated_hazard(y / n)) - float(model.integrated_hazard(0.0))
    return -n * increment + y * mu


def second_order_coefficient(model: SurvivalModel, y: float = 1.0, n: int = EXPANSION_INDEX) -> float:
    """The slope h'(0) read off the conditional expansion, one Richardson step."""

    def estimate(k):
        return -2.0 * k * conditional_expansion(model, y, k) / (y * y)

    return 2.0 * estimate(2 * n) - estimate(n)


def rayleigh_limit_curve(generator: SurvivalModel, n: int, y_grid) -> np.ndarray:
    """G^n(y/sqrt n)/G^n(0) e^{y mu sqrt n}, tending to exp(-s y^2/2)."""
    if not generator.support.contains(0.0):
        raise DomainError(f"0 is outside the support {generator.support} of {generator.name}")
    mu = float(generator.hazard(0.0))
    slope = float(generator.hazard_derivative(0.0))
    if not slope > 0:
        raise NonpositiveSlope(f"{generator.name} has slope {slope:g} at 0")
    y = np.asarray(y_grid, dtype=float)
    root = np.sqrt(n)
    increment = np.asarray(generator.integrated_hazard(y / root), dtype=float) - float(generator.integrated_hazard(0.0))
    return np.exp(-n * increment + y * mu * root)


# -----------------------------------------------------------------------------
# Frailty
# -----------------------------------------------------------------------------
def _frailty_slope(link: FrailtyLink) -> SlopeFunction:
    omega = link.vf_domain
    if omega.lower < 0:
        raise InvalidVarianceFunction(f"{link.name} lives on {omega}, which leaves (0, inf)")
    grid = omega.grid(settings.CLASSIFY_POINTS)
    with np.errstate(all='ignore'):
        values = np.asarray(link.variance_function(grid), dtype=float)
    if not np.all(np.isfinite(values) & (values > 0)):
        raise InvalidVarianceFunction(f"{link.name} is not strictly positive on {omega}")
    pin = link.reference_mean
    if not omega.contains(pin):
        raise InvalidVarianceFunction(f"pin {pin} is not inside {omega}")
    V = link.variance_function
    return SlopeFunction(
        v=lambda mu: -np.asarray(V(mu), dtype=float),
        domain=Interval(omega.lower, pin),
        sign_class=SignClass.NEGATIVE,
        name=f'-{link.name}',
    )


def frailty_generator(link: FrailtyLink) -> SurvivalModel:
    """
    Generator with hazard tau(-y) on (0, b): the mean mapping rebuilt from V
    with tau(0) equal to the link's reference mean, so v = -V.
    """
    slope = _frailty_slope(link)
    family = reconstruct_from_slope(slope, slope.domain.interior_point())
    generator = family.generator
    generator = translate(generator, generator.support.lower)
    logger.info(
        "frailty generator for %s lives on %s with censor mass %g",
        link.name, generator.support, generator.censor_mass,
    )
    return generator.replace(name=f'frailty({link.name})')


def frailty_xd(link: FrailtyLink, mu: float, lam: float) -> XDModel:
    slope = _frailty_slope(link)
    return xd_make(frailty_generator(link), mu, lam, unit_slope=slope)


def mean_mapping(link: FrailtyLink):
    """tau(theta) = h(-theta) for theta <= 0."""
    generator = frailty_generator(link)
    return lambda theta: generator.hazard(-np.asarray(theta, dtype=float))


def constant_frailty(x: float) -> SurvivalModel:
    """A frailty fixed at x gives the exponential law with rate x."""
    return exponential_model(x).replace(name=f'constant_frailty({x:g})')
