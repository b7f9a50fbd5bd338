# core/catalog.py

import logging

import numpy as np
from scipy import special

from core.exceptions import ExponentialCase, MissingParameter, UnknownFamily, ValidationError
from core.models import (
    FamilySpec,
    Interval,
    MonotoneClass,
    POSITIVE_REALS,
    REAL_LINE,
    SignClass,
    SlopeFunction,
    SurvivalModel,
)

logger = logging.getLogger(__name__)

# below this |gamma| the GEV generator switches to its Gumbel branch
GUMBEL_BAND = 1e-8

QUADRATIC_FAMILIES = ('rayleigh', 'gumbel', 'uniform', 'pareto', 'logistic', 'neg_exponential', 'cosine')
REFLECTED_FAMILIES = ('reflected_gumbel', 'reflected_logistic', 'reflected_neg_exponential')
EXAMPLE_FAMILIES = (
    'negative_pareto', 'burr', 'gompertz_makeham', 'uniform_no_exp', 'exp_slope_ifr', 'exp_slope_dfr',
)

TABLE_QUADRATIC = 'Table of quadratic hazard slope families'
TABLE_REFLECTED = 'Table of vertically reflected quadratic hazard slopes'


def _arr(y):
    return np.asarray(y, dtype=float)


def _slope(v, domain: Interval, positive: bool, expression: str) -> SlopeFunction:
    return SlopeFunction(
        v=v,
        domain=domain,
        sign_class=SignClass.POSITIVE if positive else SignClass.NEGATIVE,
        name=expression,
        expression=expression,
    )


def _spec(name, model, slope, citation, kind, parameters=None, generator=None) -> FamilySpec:
    return FamilySpec(
        name=name,
        parameters=dict(parameters or {}),
        model=model,
        slope_closed_form=slope,
        citation=citation,
        generator=generator,
        kind=kind,
    )


# -----------------------------------------------------------------------------
# Quadratic slope families
# -----------------------------------------------------------------------------
def _rayleigh() -> tuple:
    model = SurvivalModel(
        support=Interval(0.0, np.inf),
        integrated_hazard_fn=lambda y: 0.5 * _arr(y) ** 2,
        hazard_fn=lambda y: _arr(y),
        hazard_derivatives=(np.ones_like, np.zeros_like, np.zeros_like),
        survival_fn=lambda y: np.exp(-0.5 * _arr(y) ** 2),
        inverse_hazard_fn=lambda mu: _arr(mu),
        hazard_range=POSITIVE_REALS,
        monotone_class=MonotoneClass.IFR,
        name='rayleigh',
    )
    return model, _slope(lambda mu: np.ones_like(_arr(mu)), POSITIVE_REALS, True, '1')


def _gumbel() -> tuple:
    model = SurvivalModel(
        support=REAL_LINE,
        integrated_hazard_fn=np.exp,
        hazard_fn=np.exp,
        hazard_derivatives=(np.exp, np.exp, np.exp),
        survival_fn=lambda y: np.exp(-np.exp(y)),
        inverse_hazard_fn=np.log,
        hazard_range=POSITIVE_REALS,
        monotone_class=MonotoneClass.IFR,
        name='gumbel',
    )
    return model, _slope(lambda mu: _arr(mu), POSITIVE_REALS, True, 'mu')


def _uniform() -> tuple:
    def h(y):
        return 1.0 / (1.0 - _arr(y))

    model = SurvivalModel(
        support=Interval(0.0, 1.0),
        integrated_hazard_fn=lambda y: -np.log1p(-_arr(y)),
        hazard_fn=h,
        hazard_derivatives=(lambda y: h(y) ** 2, lambda y: 2.0 * h(y) ** 3, lambda y: 6.0 * h(y) ** 4),
        survival_fn=lambda y: 1.0 - _arr(y),
        inverse_hazard_fn=lambda mu: 1.0 - 1.0 / _arr(mu),
        hazard_range=Interval(1.0, np.inf),
        monotone_class=MonotoneClass.IFR,
        name='uniform',
    )
    return model, _slope(lambda mu: _arr(mu) ** 2, Interval(1.0, np.inf), True, 'mu^2')


def _pareto() -> tuple:
    model = SurvivalModel(
        support=Interval(1.0, np.inf),
        integrated_hazard_fn=lambda y: np.log(_arr(y)),
        hazard_fn=lambda y: 1.0 / _arr(y),
        hazard_derivatives=(
            lambda y: -1.0 / _arr(y) ** 2,
            lambda y: 2.0 / _arr(y) ** 3,
            lambda y: -6.0 / _arr(y) ** 4,
        ),
        survival_fn=lambda y: 1.0 / _arr(y),
        inverse_hazard_fn=lambda mu: 1.0 / _arr(mu),
        hazard_range=Interval(0.0, 1.0),
        monotone_class=MonotoneClass.DFR,
        name='pareto',
    )
    return model, _slope(lambda mu: -_arr(mu) ** 2, Interval(0.0, 1.0), False, '-mu^2')


def _logistic() -> tuple:
    def h1(y):
        h = special.expit(y)
        return h * (1.0 - h)

    def h2(y):
        h = special.expit(y)
        return h1(y) * (1.0 - 2.0 * h)

    def h3(y):
        h = special.expit(y)
        return h1(y) * (1.0 - 2.0 * h) ** 2 - 2.0 * h1(y) ** 2

    model = SurvivalModel(
        support=REAL_LINE,
        integrated_hazard_fn=lambda y: np.logaddexp(0.0, y),
        hazard_fn=special.expit,
        hazard_derivatives=(h1, h2, h3),
        survival_fn=lambda y: special.expit(-_arr(y)),
        inverse_hazard_fn=special.logit,
        hazard_range=Interval(0.0, 1.0),
        monotone_class=MonotoneClass.IFR,
        name='logistic',
    )
    return model, _slope(lambda mu: _arr(mu) * (1.0 - _arr(mu)), Interval(0.0, 1.0), True, 'mu*(1-mu)')


def _neg_exponential() -> tuple:
    def h(y):
        y = _arr(y)
        return -np.exp(y) / np.expm1(y)

    def h1(y):
        return h(y) * (1.0 + h(y))

    def h2(y):
        return h1(y) * (1.0 + 2.0 * h(y))

    def h3(y):
        return h2(y) * (1.0 + 2.0 * h(y)) + 2.0 * h1(y) ** 2

    model = SurvivalModel(
        support=Interval(-np.inf, 0.0),
        integrated_hazard_fn=lambda y: -np.log(-np.expm1(_arr(y))),
        hazard_fn=h,
        hazard_derivatives=(h1, h2, h3),
        survival_fn=lambda y: -np.expm1(_arr(y)),
        inverse_hazard_fn=lambda mu: np.log(_arr(mu) / (1.0 + _arr(mu))),
        hazard_range=POSITIVE_REALS,
        monotone_class=MonotoneClass.IFR,
        name='neg_exponential',
    )
    return model, _slope(lambda mu: _arr(mu) * (1.0 + _arr(mu)), POSITIVE_REALS, True, 'mu*(1+mu)')


def _cosine() -> tuple:
    def h1(y):
        return 1.0 + np.tan(y) ** 2

    model = SurvivalModel(
        support=Interval(0.0, np.pi / 2),
        integrated_hazard_fn=lambda y: -np.log(np.cos(y)),
        hazard_fn=np.tan,
        hazard_derivatives=(
            h1,
            lambda y: 2.0 * np.tan(y) * h1(y),
            lambda y: 2.0 * h1(y) * (1.0 + 3.0 * np.tan(y) ** 2),
        ),
        survival_fn=np.cos,
        inverse_hazard_fn=np.arctan,
        hazard_range=POSITIVE_REALS,
        monotone_class=MonotoneClass.IFR,
        name='cosine',
    )
    return model, _slope(lambda mu: 1.0 + _arr(mu) ** 2, POSITIVE_REALS, True, '1+mu^2')


_QUADRATIC = {
    'rayleigh': _rayleigh,
    'gumbel': _gumbel,
    'uniform': _uniform,
    'pareto': _pareto,
    'logistic': _logistic,
    'neg_exponential': _neg_exponential,
    'cosine': _cosine,
}


def make_quadratic_family(name: str) -> FamilySpec:
    if name not in _QUADRATIC:
        raise UnknownFamily(f"'{name}' is not a quadratic slope family")
    model, slope = _QUADRATIC[name]()
    return _spec(name, model, slope, TABLE_QUADRATIC, 'quadratic')


# -----------------------------------------------------------------------------
# Vertically reflected families
# -----------------------------------------------------------------------------
def _reflected_gumbel() -> tuple:
    model = SurvivalModel(
        support=Interval(0.0, np.inf),
        integrated_hazard_fn=lambda y: _arr(y) + np.expm1(-_arr(y)),
        hazard_fn=lambda y: -np.expm1(-_arr(y)),
        hazard_derivatives=(
            lambda y: np.exp(-_arr(y)),
            lambda y: -np.exp(-_arr(y)),
            lambda y: np.exp(-_arr(y)),
        ),
        survival_fn=lambda y: np.exp(1.0 - _arr(y) - np.exp(-_arr(y))),
        inverse_hazard_fn=lambda mu: -np.log1p(-_arr(mu)),
        hazard_range=Interval(0.0, 1.0),
        monotone_class=MonotoneClass.IFR,
        name='reflected_gumbel',
    )
    return model, _slope(lambda mu: 1.0 - _arr(mu), Interval(0.0, 1.0), True, '1-mu')


def _reflected_logistic() -> tuple:
    def h(y):
        return 0.5 * np.tanh(0.5 * _arr(y))

    def h1(y):
        return 0.25 - h(y) ** 2

    def h2(y):
        return -2.0 * h(y) * h1(y)

    model = SurvivalModel(
        support=Interval(0.0, np.inf),
        integrated_hazard_fn=lambda y: np.logaddexp(0.5 * _arr(y), -0.5 * _arr(y)) - np.log(2.0),
        hazard_fn=h,
        hazard_derivatives=(h1, h2, lambda y: -2.0 * h1(y) ** 2 - 2.0 * h(y) * h2(y)),
        survival_fn=lambda y: 1.0 / np.cosh(0.5 * _arr(y)),
        inverse_hazard_fn=lambda mu: 2.0 * np.arctanh(2.0 * _arr(mu)),
        hazard_range=Interval(0.0, 0.5),
        monotone_class=MonotoneClass.IFR,
        name='reflected_logistic',
    )
    slope = _slope(lambda mu: (0.5 - _arr(mu)) * (0.5 + _arr(mu)), Interval(0.0, 0.5), True, '(1/2-mu)*(1/2+mu)')
    return model, slope


def _reflected_neg_exponential() -> tuple:
    model = SurvivalModel(
        support=Interval(np.log(2.0), np.inf),
        integrated_hazard_fn=lambda y: _arr(y) - np.log(-np.expm1(-_arr(y))) - np.log(4.0),
        hazard_fn=lambda y: 1.0 - 1.0 / np.expm1(_arr(y)),
        hazard_derivatives=(lambda y: np.exp(_arr(y)) / np.expm1(_arr(y)) ** 2,),
        survival_fn=lambda y: 4.0 * (np.exp(-_arr(y)) - np.exp(-2.0 * _arr(y))),
        inverse_hazard_fn=lambda mu: np.log((2.0 - _arr(mu)) / (1.0 - _arr(mu))),
        hazard_range=Interval(0.0, 1.0),
        monotone_class=MonotoneClass.IFR,
        name='reflected_neg_exponential',
    )
    return model, _slope(lambda mu: (_arr(mu) - 1.0) * (_arr(mu) - 2.0), Interval(0.0, 1.0), True, '(mu-1)*(mu-2)')


_REFLECTED = {
    'reflected_gumbel': _reflected_gumbel,
    'reflected_logistic': _reflected_logistic,
    'reflected_neg_exponential': _reflected_neg_exponential,
}


def make_reflected_family(name: str) -> FamilySpec:
    if name not in _REFLECTED:
        raise UnknownFamily(f"'{name}' is not a reflected family")
    model, slope = _REFLECTED[name]()
    return _spec(name, model, slope, TABLE_REFLECTED, 'reflected')


# -----------------------------------------------------------------------------
# Generalized extreme value
# -----------------------------------------------------------------------------
def gev_power(gamma: float) -> float:
    """p(gamma) = (1 + 2 gamma) / (1 + gamma)."""
    if gamma == -1:
        raise ExponentialCase("gamma = -1 is the exponential case")
    return (1.0 + 2.0 * gamma) / (1.0 + gamma)


def gev_gamma(p: float) -> float:
    """Inverse of gev_power."""
    if p == 2:
        raise ExponentialCase("p = 2 is the exponential case")
    return (1.0 - p) / (p - 2.0) + 0.0


def gev_generator(gamma: float) -> SurvivalModel:
    """
    Unit generator of EV_gamma: H(y) = (1 - gamma y)^{-1/gamma}, with unit
    slope mu^p / (2 - p) on (0, inf).
    """
    if gamma == -1:
        raise ExponentialCase("gamma = -1 is the exponential case")
    if abs(gamma) < GUMBEL_BAND:
        model, _ = _gumbel()
        return model.replace(name='gev(0)', parameters={'gamma': 0.0})

    def base(y):
        return 1.0 - gamma * _arr(y)

    def derivative(k):
        factor = float(np.prod([1.0 + j * gamma for j in range(1, k + 1)]))
        exponent = -(1.0 + (k + 1) * gamma) / gamma
        return lambda y: factor * base(y) ** exponent

    p = gev_power(gamma)
    support = Interval(-np.inf, 1.0 / gamma) if gamma > 0 else Interval(1.0 / gamma, np.inf)
    return SurvivalModel(
        support=support,
        integrated_hazard_fn=lambda y: base(y) ** (-1.0 / gamma),
        hazard_fn=lambda y: base(y) ** (-(1.0 + gamma) / gamma),
        hazard_derivatives=(derivative(1), derivative(2), derivative(3)),
        survival_fn=lambda y: np.exp(-base(y) ** (-1.0 / gamma)),
        inverse_hazard_fn=lambda mu: (1.0 - _arr(mu) ** (-gamma / (1.0 + gamma))) / gamma,
        # h^{-1}(mu) rounds onto the support endpoint once mu^{-gamma/(1+gamma)} drops below eps
        slope_fn=lambda mu: _arr(mu) ** p / (2.0 - p),
        hazard_range=POSITIVE_REALS,
        monotone_class=MonotoneClass.IFR if gamma > -1 else MonotoneClass.DFR,
        name=f'gev({gamma:g})',
        parameters={'gamma': gamma},
    )


def gev_slope(gamma: float, lam: float = 1.0) -> SlopeFunction:
    """mu^p / (lambda (2 - p)) on (0, inf)."""
    p = gev_power(gamma)
    return _slope(
        lambda mu: _arr(mu) ** p / (lam * (2.0 - p)),
        POSITIVE_REALS,
        p < 2,
        f'mu^{p:g}/({lam:g}*{2.0 - p:g})',
    )


def make_gev(gamma: float, mu: float, lam: float) -> FamilySpec:
    """EV_gamma(mu, lambda) as an extreme dispersion model."""
    from core.xd_model import xd_make

    generator = gev_generator(gamma)
    xd = xd_make(generator, mu, lam, unit_slope=gev_slope(gamma))
    return _spec(
        'gev',
        xd.model.replace(name=f'EV_{gamma:g}({mu:g}, {lam:g})'),
        gev_slope(gamma, lam),
        'Summary of generalized extreme value distributions',
        'gev',
        parameters={'gamma': gamma, 'mu': mu, 'lambda': lam},
        generator=generator,
    )


# -----------------------------------------------------------------------------
# Worked examples
# -----------------------------------------------------------------------------
def _negative_pareto() -> tuple:
    def h(y):
        y = _arr(y)
        return 1.0 / (y * y - y)

    model = SurvivalModel(
        support=Interval(-np.inf, 0.0),
        integrated_hazard_fn=lambda y: np.log1p(-1.0 / _arr(y)),
        hazard_fn=h,
        hazard_derivatives=(lambda y: (1.0 - 2.0 * _arr(y)) * h(y) ** 2,),
        survival_fn=lambda y: -_arr(y) / (1.0 - _arr(y)),
        inverse_hazard_fn=lambda mu: 0.5 * (1.0 - np.sqrt(1.0 + 4.0 / _arr(mu))),
        hazard_range=POSITIVE_REALS,
        monotone_class=MonotoneClass.IFR,
        name='negative_pareto',
    )
    slope = _slope(
        lambda mu: _arr(mu) * np.sqrt(_arr(mu) ** 2 + 4.0 * _arr(mu)),
        POSITIVE_REALS, True, 'mu*sqrt(mu^2+4*mu)',
    )
    return model, slope, {}


def _burr(alpha: float) -> tuple:
    if not alpha > 0:
        raise ValidationError(f"burr needs alpha > 0, got {alpha}")

    def h1(y):
        y = _arr(y)
        ya = y ** alpha
        return alpha * y ** (alpha - 2.0) * ((alpha - 1.0) - ya) / (1.0 + ya) ** 2

    inverse = None
    slope = None
    hazard_range = None
    if alpha <= 1:
        monotone_class = MonotoneClass.DFR
        hazard_range = POSITIVE_REALS if alpha < 1 else Interval(0.0, 1.0)
    else:
        monotone_class = MonotoneClass.NONE
    if alpha == 0.5:
        def inverse(mu):
            mu = _arr(mu)
            s = (1.0 / mu) / (1.0 + np.sqrt(1.0 + 2.0 / mu))
            return s * s

        slope = _slope(
            lambda mu: -_arr(mu) ** 2 * (_arr(mu) + 2.0 + np.sqrt(_arr(mu) ** 2 + 2.0 * _arr(mu))),
            POSITIVE_REALS, False, '-mu^2*(mu+2+sqrt(mu^2+2*mu))',
        )

    model = SurvivalModel(
        support=Interval(0.0, np.inf),
        integrated_hazard_fn=lambda y: np.log1p(_arr(y) ** alpha),
        hazard_fn=lambda y: alpha * _arr(y) ** (alpha - 1.0) / (1.0 + _arr(y) ** alpha),
        hazard_derivatives=(h1,),
        survival_fn=lambda y: 1.0 / (1.0 + _arr(y) ** alpha),
        inverse_hazard_fn=inverse,
        hazard_range=hazard_range,
        monotone_class=monotone_class,
        name=f'burr({alpha:g})',
        parameters={'alpha': alpha},
    )
    return model, slope, {'alpha': alpha}


def _gompertz_makeham(m: float, beta: float = 1.0) -> tuple:
    if not m > 0:
        raise ValidationError(f"gompertz_makeham needs m > 0, got {m}")
    if beta == 0:
        raise ValidationError("gompertz_makeham needs beta != 0")

    def H(y):
        y = _arr(y)
        return np.expm1(beta * y) / beta + m * y

    if beta > 0:
        hazard_range = Interval(1.0 + m, np.inf)
        monotone_class = MonotoneClass.IFR
    else:
        hazard_range = Interval(m, m + 1.0)
        monotone_class = MonotoneClass.DFR

    model = SurvivalModel(
        support=Interval(0.0, np.inf),
        integrated_hazard_fn=H,
        hazard_fn=lambda y: m + np.exp(beta * _arr(y)),
        hazard_derivatives=(
            lambda y: beta * np.exp(beta * _arr(y)),
            lambda y: beta ** 2 * np.exp(beta * _arr(y)),
            lambda y: beta ** 3 * np.exp(beta * _arr(y)),
        ),
        survival_fn=lambda y: np.exp(-H(y)),
        inverse_hazard_fn=lambda mu: np.log(_arr(mu) - m) / beta,
        hazard_range=hazard_range,
        monotone_class=monotone_class,
        name=f'gompertz_makeham({m:g}, {beta:g})',
        parameters={'m': m, 'beta': beta},
    )
    slope = _slope(lambda mu: beta * (_arr(mu) - m), hazard_range, beta > 0, f'{beta:g}*(mu-{m:g})')
    return model, slope, {'m': m, 'beta': beta}


def _uniform_no_exp() -> tuple:
    model = SurvivalModel(
        support=Interval(0.0, 1.0),
        integrated_hazard_fn=lambda y: -_arr(y) - np.log1p(-_arr(y)),
        hazard_fn=lambda y: _arr(y) / (1.0 - _arr(y)),
        hazard_derivatives=(
            lambda y: 1.0 / (1.0 - _arr(y)) ** 2,
            lambda y: 2.0 / (1.0 - _arr(y)) ** 3,
            lambda y: 6.0 / (1.0 - _arr(y)) ** 4,
        ),
        survival_fn=lambda y: np.exp(_arr(y)) * (1.0 - _arr(y)),
        inverse_hazard_fn=lambda mu: _arr(mu) / (1.0 + _arr(mu)),
        hazard_range=POSITIVE_REALS,
        monotone_class=MonotoneClass.IFR,
        name='uniform_no_exp',
    )
    return model, _slope(lambda mu: (1.0 + _arr(mu)) ** 2, POSITIVE_REALS, True, '(1+mu)^2'), {}


def _exp_slope_ifr() -> tuple:
    model = SurvivalModel(
        support=Interval(0.0, np.inf),
        integrated_hazard_fn=lambda y: (1.0 + _arr(y)) * np.log1p(_arr(y)) - _arr(y),
        hazard_fn=np.log1p,
        hazard_derivatives=(
            lambda y: 1.0 / (1.0 + _arr(y)),
            lambda y: -1.0 / (1.0 + _arr(y)) ** 2,
            lambda y: 2.0 / (1.0 + _arr(y)) ** 3,
        ),
        survival_fn=lambda y: np.exp(_arr(y) - (1.0 + _arr(y)) * np.log1p(_arr(y))),
        inverse_hazard_fn=np.expm1,
        hazard_range=POSITIVE_REALS,
        monotone_class=MonotoneClass.IFR,
        name='exp_slope_ifr',
    )
    return model, _slope(lambda mu: np.exp(-_arr(mu)), POSITIVE_REALS, True, 'exp(-mu)'), {}


def _exp_slope_dfr() -> tuple:
    model = SurvivalModel(
        support=Interval(0.0, 1.0),
        integrated_hazard_fn=lambda y: _arr(y) - special.xlogy(_arr(y), _arr(y)),
        hazard_fn=lambda y: -np.log(_arr(y)),
        hazard_derivatives=(
            lambda y: -1.0 / _arr(y),
            lambda y: 1.0 / _arr(y) ** 2,
            lambda y: -2.0 / _arr(y) ** 3,
        ),
        survival_fn=lambda y: np.exp(special.xlogy(_arr(y), _arr(y)) - _arr(y)),
        censor_mass=np.exp(-1.0),
        inverse_hazard_fn=lambda mu: np.exp(-_arr(mu)),
        hazard_range=POSITIVE_REALS,
        monotone_class=MonotoneClass.DFR,
        name='exp_slope_dfr',
    )
    return model, _slope(lambda mu: -np.exp(_arr(mu)), POSITIVE_REALS, False, '-exp(mu)'), {}


def make_example_family(name: str, alpha: float = None, **parameters) -> FamilySpec:
    """
    Worked examples: negative_pareto, burr (alpha), gompertz_makeham (m, beta),
    uniform_no_exp, exp_slope_ifr and exp_slope_dfr.
    """
    if name == 'negative_pareto':
        model, slope, params = _negative_pareto()
        citation = 'Letac slope mu*sqrt(mu^2+4mu), Frechet domain of attraction'
    elif name == 'burr':
        if alpha is None:
            alpha = parameters.get('alpha')
        if alpha is None:
            raise MissingParameter("burr needs alpha")
        model, slope, params = _burr(float(alpha))
        citation = 'Burr distribution; Weibull domain of attraction for alpha = 1/2'
    elif name == 'gompertz_makeham':
        if 'm' not in parameters:
            raise MissingParameter("gompertz_makeham needs m")
        model, slope, params = _gompertz_makeham(float(parameters['m']), float(parameters.get('beta', 1.0)))
        citation = 'Gumbel truncated at 0 plus an exponential component'
    elif name == 'uniform_no_exp':
        model, slope, params = _uniform_no_exp()
        citation = 'uniform after removing the exponential component; Rayleigh domain of attraction'
    elif name == 'exp_slope_ifr':
        model, slope, params = _exp_slope_ifr()
        citation = 'IFR generator with exponential unit slope'
    elif name == 'exp_slope_dfr':
        model, slope, params = _exp_slope_dfr()
        citation = 'DFR generator with exponential unit slope, right censored at 1'
    else:
        raise UnknownFamily(f"'{name}' is not an example family")
    return _spec(name, model, slope, citation, 'example', parameters=params)


# -----------------------------------------------------------------------------
# Lookup
# -----------------------------------------------------------------------------
def make_family(name: str, **parameters) -> FamilySpec:
    """Any catalog entry by its stable identifier."""
    if name in _QUADRATIC:
        return make_quadratic_family(name)
    if name in _REFLECTED:
        return make_reflected_family(name)
    if name == 'gev':
        if 'gamma' not in parameters:
            raise MissingParameter("gev needs gamma")
        return make_gev(
            float(parameters['gamma']),
            float(parameters.get('mu', 1.0)),
            float(parameters.get('lambda', 1.0)),
        )
    return make_example_family(name, **parameters)


def list_families() -> list:
    """(name, kind, parameters) rows for every catalog identifier."""
    rows = [(name, 'quadratic', '') for name in QUADRATIC_FAMILIES]
    rows += [(name, 'reflected', '') for name in REFLECTED_FAMILIES]
    rows.append(('gev', 'gev', 'gamma'))
    example_parameters = {'burr': 'alpha', 'gompertz_makeham': 'm beta'}
    rows += [(name, 'example', example_parameters.get(name, '')) for name in EXAMPLE_FAMILIES]
    return rows
