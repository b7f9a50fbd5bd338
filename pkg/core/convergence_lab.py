# core/convergence_lab.py

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

import numpy as np

from core import numerics
from core.exceptions import (
    DivergentIntegral,
    ExponentialDomain,
    MixedMonotoneClass,
    NoExponentialAsymptotics,
    NoPowerAsymptotics,
    NotMonotone,
    RateOutOfDomain,
    WindowOutOfDomain,
)
from core.models import (
    ConvergenceReport,
    ConvergenceStep,
    Interval,
    MonotoneClass,
    Side,
    SlopeFunction,
    SurvivalModel,
    XDModel,
)
from core.slope_calculus import slope_function_of
from core.survival_core import ks_distance, sample, scale_model
from xd_platform import settings

logger = logging.getLogger(__name__)

# rates at which exponential asymptotics are checked
EXP_CHECK_RATES = (10.0, 15.0, 20.0)


# -----------------------------------------------------------------------------
# Distances and tightness
# -----------------------------------------------------------------------------
def slope_sequence_distance(v_n: SlopeFunction, v_limit: SlopeFunction, window: Interval) -> float:
    """sup |v_n - v_limit| over GRID_POINTS points of a compact window."""
    if not window.bounded:
        raise WindowOutOfDomain(f"window {window} is not compact")
    for v in (v_n, v_limit):
        if not v.domain.covers(window):
            raise WindowOutOfDomain(f"window {window} leaves the domain {v.domain} of {v}")
    return numerics.sup_distance(v_n, v_limit, window.linspace(settings.GRID_POINTS))


def tightness_integral(v: SlopeFunction, eta: float, side: Side = Side.LEFT) -> float:
    """
    Integral of mu/|v| between eta and the h(a)-side end of the domain
    (LEFT) or the h(b)-side end (RIGHT); inf when it diverges.
    """
    if not v.domain.contains(eta):
        raise RateOutOfDomain(f"eta={eta} is not inside {v.domain}")
    a_side, b_side = v.hazard_side_endpoints()
    end = a_side if Side(side) is Side.LEFT else b_side
    lower, upper = min(eta, end), max(eta, end)
    try:
        value = numerics.integral(
            lambda m: m / np.abs(v(m)),
            lower,
            upper,
            lower_open=lower <= v.domain.lower,
            upper_open=upper >= v.domain.upper,
        )
    except DivergentIntegral:
        return np.inf
    return float(value)


# -----------------------------------------------------------------------------
# Helpers
# -----------------------------------------------------------------------------
def _default_window(limit: SurvivalModel) -> Interval:
    half = settings.WINDOW_HALF_WIDTH
    box = limit.support.intersect(Interval(-half, half))
    return box.shrunk(settings.WINDOW_MARGIN)


def _survival_distance(model: SurvivalModel, limit: SurvivalModel, window: Interval) -> float:
    return numerics.sup_distance(model.survival, limit.survival, window.linspace(settings.GRID_POINTS))


def _xd_slope(xd: XDModel) -> SlopeFunction:
    """Slope function v/lambda of the fixed-lambda family of an XD model."""
    unit, lam = xd.unit_slope, xd.lam
    base = unit.v
    return SlopeFunction(
        v=lambda mu: base(mu) / lam,
        domain=unit.domain,
        sign_class=unit.sign_class,
        name=f'[{unit.expression or unit.name}]/{lam:g}',
    )


def _run_steps(build_step, indices, workers):
    workers = max(1, workers or settings.DEFAULT_WORKERS)
    if workers == 1:
        steps = [build_step(index) for index in indices]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            steps = list(pool.map(build_step, indices))
    return sorted(steps, key=lambda pair: pair[0].index)


def _monte_carlo(pairs, limit: SurvivalModel, draws: int, seed: int):
    """Step k is sampled on the stream (seed, k), so the result does not depend on workers."""
    checked = []
    for k, (step, model) in enumerate(pairs):
        ks = ks_distance(sample(model, draws, seed=[seed, k]), limit)
        logger.debug("step %s: KS distance %.4g over %s draws", step.index, ks, draws)
        checked.append((replace(step, ks_distance=ks), model))
    return checked


def _assemble(pairs, monotone_class, limit, limit_name, window, tolerance, bound, details,
              draws=None, seed=0) -> ConvergenceReport:
    classes = {model.monotone_class for _, model in pairs}
    if classes != {monotone_class}:
        raise MixedMonotoneClass(
            f"steps change class: {sorted(c.value for c in classes)} against {monotone_class.value}"
        )
    if draws:
        pairs = _monte_carlo(pairs, limit, draws, seed)
        details = {**details, 'draws': draws, 'seed': seed}
    steps = tuple(step for step, _ in pairs)
    final = steps[-1].survival_sup_distance
    bounded = all(step.tightness_integral <= bound for step in steps)
    passed = bool(final < tolerance and bounded)
    report = ConvergenceReport(
        steps=steps,
        limit_family=limit_name,
        compact_window=window,
        passed=passed,
        tolerance=tolerance,
        tightness_bound=bound,
        details=details,
    )
    logger.info(
        "convergence to %s: final distance %.3g (tolerance %g), tightness bound %.3g, passed=%s",
        limit_name, final, tolerance, bound, passed,
    )
    return report


# -----------------------------------------------------------------------------
# Power asymptotics
# -----------------------------------------------------------------------------
def fit_power(v: SlopeFunction) -> tuple:
    """
    Least-squares fit of log|v| on log mu over two decades next to 0 (IFR)
    or infinity (DFR). Returns (p, C) with |v| ~ C mu^p.
    """
    decades = settings.FIT_LOW_DECADES if v.increasing else settings.FIT_HIGH_DECADES
    mu = np.logspace(decades[0], decades[1], settings.FIT_POINTS)
    with np.errstate(all='ignore'):
        magnitude = np.abs(np.asarray(v(mu), dtype=float))
    if not np.all(np.isfinite(magnitude) & (magnitude > 0)):
        raise NoPowerAsymptotics(f"{v} cannot be evaluated near the approach end")
    x, y = np.log(mu), np.log(magnitude)
    p, intercept = np.polyfit(x, y, 1)
    residual = float(np.max(np.abs(y - (p * x + intercept))))
    if residual > settings.FIT_RESIDUAL:
        raise NoPowerAsymptotics(f"{v} is not a power near the approach end (residual {residual:.3g})")
    return float(p), float(np.exp(intercept))


def gev_convergence_experiment(
    generator: SurvivalModel,
    mu: float,
    lam: float,
    n_values,
    window: Interval = None,
    p: float = None,
    unit_slope: SlopeFunction = None,
    slope_window: Interval = None,
    tolerance: float = None,
    k_factor: float = None,
    workers: int = None,
    draws: int = None,
    seed: int = 0,
) -> ConvergenceReport:
    """
    n^{1/(p-2)} XD(n^{1/(p-2)} mu, n lambda) against EV_gamma(mu, lambda*),
    gamma = (1-p)/(p-2), with the power constant folded into lambda*.

    With `draws`, every step is also sampled and its KS distance to the
    limit is stored on the step.
    """
    from core.catalog import gev_gamma, make_gev
    from core.xd_model import xd_make

    if generator.monotone_class is MonotoneClass.NONE:
        raise NotMonotone(f"{generator.name} has no monotone hazard")
    v = unit_slope if unit_slope is not None else slope_function_of(generator)
    psi = v.domain
    if v.increasing and psi.lower > 0:
        raise ExponentialDomain(f"inf Psi = {psi.lower:g} > 0: exponential domain of attraction")
    if not v.increasing and np.isfinite(psi.upper):
        raise ExponentialDomain(f"sup Psi = {psi.upper:g} < inf: exponential domain of attraction")

    p_fit, _ = fit_power(v)
    if p is None:
        p = p_fit
    elif abs(p - p_fit) > settings.POWER_AGREEMENT:
        raise NoPowerAsymptotics(f"fitted power {p_fit:.4g} disagrees with p={p:g}")
    if (v.increasing and not p < 2) or (not v.increasing and not p > 2):
        raise NoPowerAsymptotics(f"power {p:.4g} has the wrong side of 2 for {v.monotone_class.value}")

    decades = settings.FIT_LOW_DECADES if v.increasing else settings.FIT_HIGH_DECADES
    probe = np.logspace(decades[0], decades[1], settings.FIT_POINTS)
    constant = float(np.exp(np.mean(np.log(np.abs(v(probe))) - p * np.log(probe))))
    gamma = gev_gamma(p)
    lam_limit = lam / (constant * abs(2.0 - p))
    limit = make_gev(gamma, mu, lam_limit)
    limit_model = limit.model
    limit_slope = limit.slope_closed_form

    window = window or _default_window(limit_model)
    slope_window = slope_window or Interval(0.5 * mu, 2.0 * mu)
    bound = (k_factor or settings.TIGHTNESS_FACTOR) * tightness_integral(limit_slope, mu, Side.LEFT)
    logger.info(
        "power asymptotics p=%.6g (fitted %.6g), C=%.6g: limit EV_%g(%g, %g)",
        p, p_fit, constant, gamma, mu, lam_limit,
    )

    base = v.v

    def build_step(n):
        c_n = float(n) ** (1.0 / (p - 2.0))
        xd = xd_make(generator, c_n * mu, n * lam, unit_slope=v)
        model = scale_model(xd.model, c_n)
        norm = lam * float(n) ** (p / (p - 2.0))
        v_n = SlopeFunction(
            v=lambda eta: base(c_n * np.asarray(eta, dtype=float)) / norm,
            domain=psi.scaled(1.0 / c_n),
            sign_class=v.sign_class,
            name=f'v_{n}',
        )
        step = ConvergenceStep(
            index=float(n),
            slope_sup_distance=slope_sequence_distance(v_n, limit_slope, slope_window),
            survival_sup_distance=_survival_distance(model, limit_model, window),
            tightness_integral=tightness_integral(v_n, mu, Side.LEFT),
            rate=float(model.hazard(0.0)),
        )
        logger.debug("step n=%s: %s", n, step)
        return step, model

    pairs = _run_steps(build_step, list(n_values), workers)
    details = {'p': p, 'p_fit': p_fit, 'constant': constant, 'gamma': gamma, 'lambda_limit': lam_limit}
    return _assemble(
        pairs,
        v.monotone_class,
        limit_model,
        f'EV_{gamma:g}({mu:g}, {lam_limit:g})',
        window,
        tolerance or settings.CONVERGENCE_TOL,
        bound,
        details,
        draws,
        seed,
    )


# -----------------------------------------------------------------------------
# Exponential asymptotics
# -----------------------------------------------------------------------------
def _exponential_limit(beta: int, mu: float, lam: float):
    from core.catalog import make_example_family, make_gev
    from core.xd_model import xd_make

    if beta == 0:
        spec = make_gev(-0.5, mu, 0.5 * lam)
        return spec.model, spec.slope_closed_form, 'EV_-0.5'
    name = 'exp_slope_dfr' if beta > 0 else 'exp_slope_ifr'
    spec = make_example_family(name)
    xd = xd_make(spec.model, mu, lam, unit_slope=spec.slope_closed_form)
    return xd.model, _xd_slope(xd), name


def exp_slope_convergence_experiment(
    generator: SurvivalModel,
    beta: int,
    mu: float,
    lam: float,
    m_values,
    window: Interval = None,
    unit_slope: SlopeFunction = None,
    slope_window: Interval = None,
    tolerance: float = None,
    k_factor: float = None,
    workers: int = None,
    draws: int = None,
    seed: int = 0,
) -> ConvergenceReport:
    """
    XD_m(mu, lambda e^{beta m}), the shift by m of the rescaled model, against
    the fixed point with unit slope c_beta e^{beta mu}.
    """
    from core.transforms import shift_transform
    from core.xd_model import xd_make

    if beta not in (-1, 0, 1):
        raise NoExponentialAsymptotics(f"beta={beta} is not one of -1, 0, 1")
    v = unit_slope if unit_slope is not None else slope_function_of(generator)
    sign = -1.0 if beta > 0 else 1.0
    rates = np.array(EXP_CHECK_RATES)
    if not v.domain.covers(Interval(rates[0], rates[-1])):
        raise NoExponentialAsymptotics(f"{v} is not defined up to mu={rates[-1]:g}")
    with np.errstate(all='ignore'):
        ratio = np.asarray(v(rates), dtype=float) / (sign * np.exp(beta * rates))
    if not np.all(np.abs(ratio - 1.0) <= settings.EXP_ASYMPTOTIC_TOL):
        raise NoExponentialAsymptotics(
            f"{v} does not behave like {sign:g}*exp({beta}*mu): ratios {np.round(ratio, 4).tolist()}"
        )

    limit_model, limit_slope, limit_name = _exponential_limit(beta, mu, lam)
    window = window or _default_window(limit_model)
    slope_window = slope_window or Interval(0.5 * mu, 2.0 * mu)
    bound = (k_factor or settings.TIGHTNESS_FACTOR) * tightness_integral(limit_slope, mu, Side.LEFT)

    def build_step(m):
        xd = xd_make(generator, mu, lam * np.exp(beta * m), unit_slope=v)
        shifted = shift_transform(xd, m)
        v_m = _xd_slope(shifted)
        step = ConvergenceStep(
            index=float(m),
            slope_sup_distance=slope_sequence_distance(v_m, limit_slope, slope_window),
            survival_sup_distance=_survival_distance(shifted.model, limit_model, window),
            tightness_integral=tightness_integral(v_m, mu, Side.LEFT),
            rate=float(shifted.model.hazard(0.0)),
        )
        logger.debug("step m=%s: %s", m, step)
        return step, shifted.model

    pairs = _run_steps(build_step, list(m_values), workers)
    return _assemble(
        pairs,
        v.monotone_class,
        limit_model,
        f'{limit_name}({mu:g}, {lam:g})',
        window,
        tolerance or settings.CONVERGENCE_TOL,
        bound,
        {'beta': beta},
        draws,
        seed,
    )
