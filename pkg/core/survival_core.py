# core/survival_core.py

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import stats

from core import numerics
from core.exceptions import DomainError, EmptySupport, InvalidScale, UnsupportedOrder
from core.models import Interval, MonotoneClass, Semiinvariants, SurvivalModel
from xd_platform import settings

logger = logging.getLogger(__name__)

MAX_CLOSED_ORDER = 4


def _require_origin(model: SurvivalModel):
    if not model.support.contains(0.0):
        raise DomainError(f"0 is outside the support {model.support} of {model.name}")


# -----------------------------------------------------------------------------
# Constructors
# -----------------------------------------------------------------------------
def exponential_model(rate: float, shift: float = 0.0) -> SurvivalModel:
    """shift + E_rate: constant hazard on (shift, inf)."""
    if rate <= 0:
        raise InvalidScale(f"exponential rate {rate} is not positive")
    return SurvivalModel(
        support=Interval(shift, np.inf),
        integrated_hazard_fn=lambda y: rate * (y - shift),
        hazard_fn=lambda y: np.full_like(np.asarray(y, dtype=float), rate),
        hazard_derivatives=(
            lambda y: np.zeros_like(np.asarray(y, dtype=float)),
            lambda y: np.zeros_like(np.asarray(y, dtype=float)),
            lambda y: np.zeros_like(np.asarray(y, dtype=float)),
        ),
        survival_fn=lambda y: np.exp(-rate * (y - shift)),
        monotone_class=MonotoneClass.NONE,
        name=f'exponential({rate:g})',
        parameters={'rate': rate, 'shift': shift},
    )


def translate(model: SurvivalModel, s: float) -> SurvivalModel:
    """The law of Y - s, i.e. y -> G(y + s)."""
    if s == 0:
        return model
    H, h, inverse, closed = model.integrated_hazard_fn, model.hazard_fn, model.inverse_hazard_fn, model.survival_fn
    return model.replace(
        support=model.support.shifted(-s),
        integrated_hazard_fn=lambda y: H(y + s),
        hazard_fn=lambda y: h(y + s),
        hazard_derivatives=tuple((lambda d: lambda y: d(y + s))(d) for d in model.hazard_derivatives),
        inverse_hazard_fn=None if inverse is None else (lambda mu: inverse(mu) - s),
        survival_fn=None if closed is None else (lambda y: closed(y + s)),
        slope_fn=model.slope_fn,
    )


# -----------------------------------------------------------------------------
# Class predicates
# -----------------------------------------------------------------------------
def classify_monotone(model: SurvivalModel, points: int = None) -> MonotoneClass:
    """Monotone class read from the sign of h' on a support grid."""
    grid = model.support.grid(points or settings.CLASSIFY_POINTS)
    slopes = np.asarray(model.hazard_derivative(grid), dtype=float)
    slopes = slopes[np.isfinite(slopes)]
    if slopes.size and np.all(slopes > 0):
        return MonotoneClass.IFR
    if slopes.size and np.all(slopes < 0):
        return MonotoneClass.DFR
    return MonotoneClass.NONE


def in_G(model: SurvivalModel) -> bool:
    grid = model.support.grid(settings.CLASSIFY_POINTS)
    return bool(np.all(np.asarray(model.hazard(grid)) > 0))


def in_G0(model: SurvivalModel) -> bool:
    return in_G(model) and model.support.contains(0.0)


def in_G_bar(model: SurvivalModel) -> bool:
    return in_G(model) and model.monotone_class is not MonotoneClass.NONE


def in_G_bar0(model: SurvivalModel) -> bool:
    return in_G_bar(model) and model.support.contains(0.0)


# -----------------------------------------------------------------------------
# Rate, slope and semiinvariants
# -----------------------------------------------------------------------------
def rate_and_slope(model: SurvivalModel) -> tuple:
    _require_origin(model)
    return float(model.hazard(0.0)), float(model.hazard_derivative(0.0))


def slope_via_varform(model: SurvivalModel) -> float:
    """mu * (mu - g'(0)) with g = -log f and f = h G."""
    _require_origin(model)
    mu = float(model.hazard(0.0))

    def g(y):
        return -np.log(model.density(y))

    g_prime = numerics.derivative(g, 0.0, 1, model.support.lower, model.support.upper)
    return mu * (mu - g_prime)


def semiinvariants(model: SurvivalModel, order: int) -> Semiinvariants:
    """k_1, ..., k_order: the derivatives of H at 0."""
    _require_origin(model)
    if order < 1:
        raise UnsupportedOrder(f"order {order} is not positive")
    if order > MAX_CLOSED_ORDER and len(model.hazard_derivatives) < order - 1:
        raise UnsupportedOrder(f"order {order} needs closed-form derivatives of {model.name}")
    values = [float(model.hazard(0.0))]
    for k in range(1, order):
        values.append(float(model.hazard_derivative(0.0, k)))
    return Semiinvariants(order=order, values=tuple(values))


# -----------------------------------------------------------------------------
# Min and scaling
# -----------------------------------------------------------------------------
def min_of(models: list) -> SurvivalModel:
    """Law of the minimum of independent variables: integrated hazards add."""
    if not models:
        raise EmptySupport("min of an empty collection")
    if len(models) == 1:
        return models[0]
    overlap_lower = max(m.support.lower for m in models)
    overlap_upper = min(m.support.upper for m in models)
    if not overlap_lower < overlap_upper:
        raise EmptySupport(
            f"supports {', '.join(str(m.support) for m in models)} do not overlap"
        )
    support = Interval(min(m.support.lower for m in models), overlap_upper)

    def summed(attribute):
        def func(y):
            return sum(np.asarray(getattr(m, attribute)(y), dtype=float) for m in models)
        return func

    if np.isfinite(overlap_upper):
        censor = float(np.prod([m.survival(overlap_upper) for m in models]))
    else:
        censor = float(np.prod([m.censor_mass for m in models]))

    orders = min(len(m.hazard_derivatives) for m in models)
    derivatives = tuple(
        (lambda k: lambda y: sum(np.asarray(m.hazard_derivative(y, k), dtype=float) for m in models))(k)
        for k in range(1, orders + 1)
    )
    if all(m.monotone_class is MonotoneClass.IFR for m in models):
        monotone_class = MonotoneClass.IFR
    else:
        monotone_class = None

    combined = SurvivalModel(
        support=support,
        integrated_hazard_fn=summed('integrated_hazard'),
        hazard_fn=summed('hazard'),
        hazard_derivatives=derivatives,
        censor_mass=censor,
        monotone_class=MonotoneClass.NONE,
        name=' ^ '.join(m.name for m in models),
    )
    if monotone_class is None:
        monotone_class = classify_monotone(combined)
    if monotone_class is MonotoneClass.DFR and not np.isfinite(support.lower):
        monotone_class = MonotoneClass.NONE
    logger.debug("min of %d models on %s is %s", len(models), support, monotone_class.value)
    return combined.replace(monotone_class=monotone_class)


def scale_model(model: SurvivalModel, c: float) -> SurvivalModel:
    """Law of cY: H(y/c) on c*C."""
    if not c > 0:
        raise InvalidScale(f"scale {c} is not positive")
    if c == 1:
        return model
    H, h, inverse, closed = model.integrated_hazard_fn, model.hazard_fn, model.inverse_hazard_fn, model.survival_fn
    return model.replace(
        support=model.support.scaled(c),
        integrated_hazard_fn=lambda y: H(y / c),
        hazard_fn=lambda y: h(y / c) / c,
        hazard_derivatives=tuple(
            (lambda d, k: lambda y: d(y / c) / c ** (k + 1))(d, k)
            for k, d in enumerate(model.hazard_derivatives, start=1)
        ),
        inverse_hazard_fn=None if inverse is None else (lambda mu: c * inverse(c * mu)),
        hazard_range=None if model.hazard_range is None else model.hazard_range.scaled(1.0 / c),
        survival_fn=None if closed is None else (lambda y: closed(y / c)),
        name=f'{c:g}*{model.name}',
    )


# -----------------------------------------------------------------------------
# Sampling
# -----------------------------------------------------------------------------
def quantile(model: SurvivalModel, u):
    """The y with G(y) = u; the right endpoint (or inf) when u < censor mass."""
    u = np.asarray(u, dtype=float)
    scalar = u.ndim == 0
    u = np.atleast_1d(u)
    upper = model.support.upper
    out = np.full(u.shape, upper)
    live = u >= model.censor_mass
    if np.any(live):
        targets = -np.log(u[live])
        out[live] = numerics.invert_monotone(
            model.integrated_hazard,
            targets,
            model.support.lower,
            upper,
            increasing=True,
            fprime=model.hazard,
        )
    return float(out[0]) if scalar else out


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed))


def sample(model: SurvivalModel, n: int, seed: int) -> np.ndarray:
    """n draws by inverse transform; deterministic in `seed`."""
    if n < 1:
        raise DomainError(f"sample size {n} is not positive")
    u = _rng(seed).random(n)
    return quantile(model, u)


def sample_parallel(model: SurvivalModel, n: int, seed: int, workers: int = None) -> np.ndarray:
    """
    n draws split over workers; chunk k uses the stream (seed, k) so the
    result does not depend on scheduling.
    """
    workers = max(1, workers or settings.DEFAULT_WORKERS)
    if n < 1:
        raise DomainError(f"sample size {n} is not positive")
    sizes = [n // workers + (1 if k < n % workers else 0) for k in range(workers)]

    def chunk(k):
        if sizes[k] == 0:
            return np.empty(0)
        return quantile(model, _rng([seed, k]).random(sizes[k]))

    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(chunk, range(workers)))
    return np.concatenate(parts)


def ks_distance(samples, model: SurvivalModel) -> float:
    """Kolmogorov-Smirnov statistic of the samples against the model cdf."""
    samples = np.asarray(samples, dtype=float)
    result = stats.kstest(samples, lambda y: np.clip(model.cdf(y), 0.0, 1.0))
    return float(result.statistic)
