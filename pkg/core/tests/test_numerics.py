# core/tests/test_numerics.py

import numpy as np
import pytest

from core import numerics
from core.exceptions import DivergentIntegral, RootFindingFailure, StencilOutOfSupport


@pytest.mark.parametrize('order, expected', [
    (1, np.cos(0.3)),
    (2, -np.sin(0.3)),
    (3, -np.cos(0.3)),
])
def test_derivative_of_sine(order, expected):
    assert numerics.derivative(np.sin, 0.3, order) == pytest.approx(expected, abs=1e-7)


def test_derivative_is_vectorized():
    x = np.array([0.5, 1.0, 2.0])
    np.testing.assert_allclose(numerics.derivative(np.log, x, 1, 0.0, np.inf), 1.0 / x, rtol=1e-9)


def test_derivative_stencil_must_fit_inside_the_support():
    with pytest.raises(StencilOutOfSupport):
        numerics.derivative(np.log, 1e-9, 1, 0.0, np.inf)


def test_invert_increasing():
    targets = np.array([0.5, 2.0, 10.0])
    roots = numerics.invert_monotone(np.exp, targets, -np.inf, np.inf, fprime=np.exp)
    np.testing.assert_allclose(roots, np.log(targets), atol=1e-10)


def test_invert_decreasing_on_half_line():
    roots = numerics.invert_monotone(lambda x: 1.0 / x, np.array([4.0, 0.25]), 0.0, np.inf, increasing=False)
    np.testing.assert_allclose(roots, [0.25, 4.0], rtol=1e-10)


def test_invert_scalar_returns_float():
    root = numerics.invert_monotone(lambda x: x ** 3, 8.0, 0.0, 10.0)
    assert isinstance(root, float)
    assert root == pytest.approx(2.0, abs=1e-10)


def test_invert_without_a_bracket():
    # tanh never reaches 2, so the upper side keeps doubling
    with pytest.raises(RootFindingFailure):
        numerics.invert_monotone(np.tanh, 2.0, -np.inf, np.inf)


def test_improper_integral_to_infinity():
    assert numerics.improper_integral(lambda x: x ** -2.0, 1.0, np.inf) == pytest.approx(1.0, abs=1e-9)


def test_improper_integral_toward_a_singular_endpoint_is_signed():
    # slowly settling tail: x^{-1/2} needs many halvings before the Cauchy test passes
    value = numerics.improper_integral(lambda x: x ** -0.5, 1.0, 0.0)
    assert value == pytest.approx(-2.0, abs=1e-8)


def test_integral_with_open_endpoint():
    assert numerics.integral(lambda x: x ** -0.5, 0.0, 1.0, lower_open=True) == pytest.approx(2.0, abs=1e-8)


def test_integral_toward_a_singular_endpoint_away_from_zero():
    value = numerics.integral(lambda x: (3.0 - x) ** -0.5, 2.0, 3.0, upper_open=True)
    assert value == pytest.approx(2.0, abs=1e-8)


def test_integral_over_the_real_line():
    value = numerics.integral(lambda x: np.exp(-x * x), -np.inf, np.inf)
    assert value == pytest.approx(np.sqrt(np.pi), abs=1e-9)


@pytest.mark.parametrize('func, start, end', [
    (lambda x: 1.0 / x, 1.0, np.inf),
    (lambda x: 1.0 / x, 1.0, 0.0),
    (lambda x: 1.0 / (1.0 - x), 0.5, 1.0),
    (lambda x: x, 1.0, np.inf),
])
def test_divergent_integrals(func, start, end):
    with pytest.raises(DivergentIntegral) as info:
        numerics.improper_integral(func, start, end)
    assert info.value.direction == ('upper' if end > start else 'lower')


def test_sup_distance():
    grid = np.linspace(0.0, np.pi, 101)
    assert numerics.sup_distance(np.sin, np.zeros_like, grid) == pytest.approx(1.0)
    assert numerics.sup_distance(np.sin, np.sin, grid) == 0.0
