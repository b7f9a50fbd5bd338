# core/tests/test_catalog.py

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from core import catalog, numerics
from core.exceptions import ExponentialCase, MissingParameter, UnknownFamily
from core.models import Interval, MonotoneClass, POSITIVE_REALS
from core.slope_calculus import slope_function_of
from core.survival_core import scale_model
from core.tests.helpers import compact_grid

QUADRATIC_TABLE = {
    'rayleigh': (lambda mu: np.ones_like(mu), POSITIVE_REALS),
    'gumbel': (lambda mu: mu, POSITIVE_REALS),
    'uniform': (lambda mu: mu ** 2, Interval(1.0, np.inf)),
    'pareto': (lambda mu: -mu ** 2, Interval(0.0, 1.0)),
    'logistic': (lambda mu: mu * (1.0 - mu), Interval(0.0, 1.0)),
    'neg_exponential': (lambda mu: mu * (1.0 + mu), POSITIVE_REALS),
    'cosine': (lambda mu: 1.0 + mu ** 2, POSITIVE_REALS),
}

REFLECTED_TABLE = {
    'reflected_gumbel': (lambda mu: 1.0 - mu, Interval(0.0, 1.0)),
    'reflected_logistic': (lambda mu: 0.25 - mu ** 2, Interval(0.0, 0.5)),
    'reflected_neg_exponential': (lambda mu: (mu - 1.0) * (mu - 2.0), Interval(0.0, 1.0)),
}

GAMMAS = [-2.0, -0.5, 0.0, 1.0]


def _gev_grid(model, n=200):
    box = model.support.intersect(Interval(-3.0, 3.0))
    return box.shrunk(1e-3).linspace(n)


# -----------------------------------------------------------------------------
# Tables
# -----------------------------------------------------------------------------
@pytest.mark.parametrize('name', catalog.QUADRATIC_FAMILIES)
def test_quadratic_table(name):
    spec = catalog.make_quadratic_family(name)
    expected, domain = QUADRATIC_TABLE[name]
    assert spec.model.rate_domain == domain
    assert spec.slope_closed_form.domain == domain
    grid = compact_grid(domain)
    extracted = slope_function_of(spec.model)
    np.testing.assert_allclose(extracted(grid), expected(grid), rtol=1e-8, atol=1e-8)
    np.testing.assert_allclose(spec.slope_closed_form(grid), expected(grid), rtol=1e-14, atol=1e-14)


@pytest.mark.parametrize('name', catalog.REFLECTED_FAMILIES)
def test_reflected_table(name):
    spec = catalog.make_reflected_family(name)
    expected, domain = REFLECTED_TABLE[name]
    assert spec.model.rate_domain == domain
    grid = compact_grid(domain)
    np.testing.assert_allclose(slope_function_of(spec.model)(grid), expected(grid), atol=1e-8)


def test_monotone_classes_of_the_table():
    for name in catalog.QUADRATIC_FAMILIES:
        expected = MonotoneClass.DFR if name == 'pareto' else MonotoneClass.IFR
        assert catalog.make_quadratic_family(name).model.monotone_class is expected


def test_closed_forms_at_a_point():
    assert catalog.make_family('gumbel').model.survival(0.0) == pytest.approx(np.exp(-1.0))
    assert catalog.make_family('cosine').model.survival(1.0) == pytest.approx(np.cos(1.0))
    assert catalog.make_family('reflected_gumbel').model.survival(1.0) == pytest.approx(np.exp(-np.exp(-1.0)))
    assert catalog.make_family('negative_pareto').model.hazard(-1.0) == pytest.approx(0.5)
    assert catalog.make_family('neg_exponential').model.hazard(-1.0) == pytest.approx(np.exp(-1.0) / (1.0 - np.exp(-1.0)))
    assert catalog.make_family('pareto').model.support == Interval(1.0, np.inf)


def test_hazard_is_the_derivative_of_the_integrated_hazard(catalog_entry):
    model = catalog_entry.unit_generator
    y = compact_grid(model.support, 20)
    dH = numerics.derivative(model.integrated_hazard, y, 1, model.support.lower, model.support.upper)
    np.testing.assert_allclose(model.hazard(y), dH, rtol=1e-6, atol=1e-9)


def test_closed_slope_matches_extracted_slope(catalog_entry):
    closed = catalog_entry.slope_closed_form
    if closed is None:
        pytest.skip('no closed-form slope')
    model = catalog_entry.unit_generator
    grid = compact_grid(closed.domain)
    np.testing.assert_allclose(slope_function_of(model)(grid), closed(grid), rtol=1e-8, atol=1e-8)


# -----------------------------------------------------------------------------
# Lookup
# -----------------------------------------------------------------------------
def test_unknown_names():
    with pytest.raises(UnknownFamily):
        catalog.make_family('weibull')
    with pytest.raises(UnknownFamily):
        catalog.make_quadratic_family('reflected_gumbel')
    with pytest.raises(UnknownFamily):
        catalog.make_reflected_family('gumbel')


def test_missing_parameters():
    with pytest.raises(MissingParameter):
        catalog.make_family('burr')
    with pytest.raises(MissingParameter):
        catalog.make_family('gompertz_makeham')
    with pytest.raises(MissingParameter):
        catalog.make_family('gev')


def test_list_families_covers_every_identifier():
    names = [row[0] for row in catalog.list_families()]
    assert set(names) == {
        *catalog.QUADRATIC_FAMILIES, *catalog.REFLECTED_FAMILIES, 'gev', *catalog.EXAMPLE_FAMILIES,
    }


# -----------------------------------------------------------------------------
# Worked examples
# -----------------------------------------------------------------------------
def test_burr_classes():
    assert catalog.make_family('burr', alpha=0.5).model.monotone_class is MonotoneClass.DFR
    assert catalog.make_family('burr', alpha=1.0).model.rate_domain == Interval(0.0, 1.0)
    assert catalog.make_family('burr', alpha=2.0).model.monotone_class is MonotoneClass.NONE
    assert catalog.make_family('burr', alpha=2.0).slope_closed_form is None


def test_burr_half_has_cubic_slope_at_infinity():
    v = catalog.make_family('burr', alpha=0.5).slope_closed_form
    assert v(1e6) / (-2.0 * 1e18) == pytest.approx(1.0, rel=1e-3)


def test_negative_pareto_slope_is_a_three_halves_power_near_zero():
    v = catalog.make_family('negative_pareto').slope_closed_form
    assert v(1e-8) / (2.0 * 1e-12) == pytest.approx(1.0, rel=1e-6)


def test_exp_slope_dfr_is_right_censored():
    model = catalog.make_family('exp_slope_dfr').model
    assert model.censor_mass == pytest.approx(np.exp(-1.0))
    assert model.survival(1.0) == pytest.approx(np.exp(-1.0))
    assert model.survival(1.5) == 0.0


def test_gompertz_makeham_domains():
    increasing = catalog.make_family('gompertz_makeham', m=0.5)
    decreasing = catalog.make_family('gompertz_makeham', m=0.5, beta=-1.0)
    assert increasing.model.rate_domain == Interval(1.5, np.inf)
    assert decreasing.model.rate_domain == Interval(0.5, 1.5)
    assert decreasing.slope_closed_form(1.0) == pytest.approx(-0.5)


# -----------------------------------------------------------------------------
# Generalized extreme value
# -----------------------------------------------------------------------------
@pytest.mark.parametrize('gamma', [-0.9, -0.5, 0.5, 2.0, 5.0])
def test_power_and_shape_are_consistent(gamma):
    p = catalog.gev_power(gamma)
    assert 1.0 / (2.0 - p) == pytest.approx(1.0 + gamma, rel=1e-13)
    assert catalog.gev_gamma(p) == pytest.approx(gamma, rel=1e-12)


def test_exponential_case_is_excluded():
    with pytest.raises(ExponentialCase):
        catalog.gev_generator(-1.0)
    with pytest.raises(ExponentialCase):
        catalog.make_gev(-1.0, 1.0, 1.0)
    with pytest.raises(ExponentialCase):
        catalog.gev_gamma(2.0)


def test_gumbel_branch():
    spec = catalog.make_gev(0.0, 1.0, 1.0)
    assert catalog.gev_power(0.0) == 1.0
    assert spec.model.support == Interval(-np.inf, np.inf)
    assert spec.model.survival(0.0) == pytest.approx(np.exp(-1.0))
    assert catalog.gev_gamma(1.0) == 0.0


def test_gev_classes_and_supports():
    weibull = catalog.make_gev(-2.0, 1.0, 1.0)
    assert catalog.gev_power(-2.0) == pytest.approx(3.0)
    assert weibull.model.monotone_class is MonotoneClass.DFR
    assert weibull.model.support.lower == pytest.approx(-0.5)
    frechet = catalog.make_gev(1.0, 1.0, 1.0)
    assert frechet.model.monotone_class is MonotoneClass.IFR
    assert frechet.model.support.upper == pytest.approx(1.0)


@pytest.mark.parametrize('gamma', [-2.0, -0.5, 0.3, 1.0])
@pytest.mark.parametrize('mu, lam', [(1.0, 1.0), (0.5, 2.0), (3.0, 0.7)])
def test_gev_closed_form(gamma, mu, lam):
    model = catalog.make_gev(gamma, mu, lam).model
    y = _gev_grid(model)
    expected = np.exp(-lam * (mu ** (-gamma / (1.0 + gamma)) - gamma * y / lam) ** (-1.0 / gamma))
    np.testing.assert_allclose(model.survival(y), expected, rtol=0, atol=1e-12)
    assert model.hazard(0.0) == pytest.approx(mu, rel=1e-12)


@pytest.mark.parametrize('gamma', GAMMAS)
@pytest.mark.parametrize('c', [0.5, 2.0, 10.0])
def test_gev_scaling_closure(gamma, c):
    mu, lam = 1.3, 0.8
    p = catalog.gev_power(gamma)
    scaled = scale_model(catalog.make_gev(gamma, mu, lam).model, c)
    expected = catalog.make_gev(gamma, mu / c, c ** (2.0 - p) * lam).model
    y = _gev_grid(expected)
    np.testing.assert_allclose(scaled.survival(y), expected.survival(y), rtol=0, atol=1e-12)


@pytest.mark.parametrize('gamma', GAMMAS)
@pytest.mark.parametrize('n', [2, 5, 10])
def test_gev_stability_postulate(gamma, n):
    mu, lam = 1.0, 1.5
    p = catalog.gev_power(gamma)
    c_n = float(n) ** (1.0 / (p - 2.0))
    rescaled = scale_model(catalog.make_gev(gamma, c_n * mu, n * lam).model, c_n)
    limit = catalog.make_gev(gamma, mu, lam).model
    y = _gev_grid(limit)
    np.testing.assert_allclose(rescaled.survival(y), limit.survival(y), rtol=0, atol=1e-12)


@given(gamma=st.floats(min_value=-3.0, max_value=3.0).filter(lambda g: abs(g + 1.0) > 0.05 and abs(g) > 1e-3))
@settings(deadline=None, max_examples=40)
def test_gev_generator_has_power_slope(gamma):
    generator = catalog.gev_generator(gamma)
    v = slope_function_of(generator)
    grid = np.array([0.3, 1.0, 2.5])
    np.testing.assert_allclose(v(grid), catalog.gev_slope(gamma)(grid), rtol=1e-8)
    # points where 1 - gamma y is of order one, so h and h' are exact
    y = (1.0 - np.array([0.9, 1.0, 1.1])) / gamma
    np.testing.assert_allclose(v(generator.hazard(y)), generator.hazard_derivative(y), rtol=1e-8)


@pytest.mark.parametrize('gamma', [-1.0625, -1.05, -0.95])
def test_gev_slope_near_the_exponential_case(gamma):
    v = slope_function_of(catalog.gev_generator(gamma))
    mu = np.array([0.3, 2.5, 20.0, 50.0])
    expected = catalog.gev_slope(gamma)(mu)
    np.testing.assert_allclose(v(mu), expected, rtol=1e-12)
    assert np.all(np.sign(v(mu)) == (1.0 if gamma > -1 else -1.0))
