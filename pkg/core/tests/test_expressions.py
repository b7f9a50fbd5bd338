# core/tests/test_expressions.py

import numpy as np
import pytest

from core.exceptions import ExpressionError
from core.expressions import parse_endpoint, parse_expression


@pytest.mark.parametrize('text, mu, expected', [
    ('mu^2', 3.0, 9.0),
    ('mu**2', 3.0, 9.0),
    ('exp(-mu)', 0.0, 1.0),
    ('1 + 1/(1+mu)', 1.0, 1.5),
    ('2^3^2', 0.0, 512.0),
    ('-mu*sqrt(mu^2+4*mu)', 1.0, -np.sqrt(5.0)),
    ('log(e)', 7.0, 1.0),
    ('pi', 0.0, np.pi),
    ('μ - 1', 4.0, 3.0),
])
def test_evaluates(text, mu, expected):
    assert float(parse_expression(text)(mu)) == pytest.approx(expected, rel=1e-15)


def test_is_vectorized():
    grid = np.linspace(0.5, 4.0, 8)
    np.testing.assert_allclose(parse_expression('mu*(1-mu)')(grid), grid * (1.0 - grid))
    assert parse_expression('3')(grid).shape == grid.shape


@pytest.mark.parametrize('text', [
    '',
    '   ',
    'mu +',
    'sin(mu)',
    'x + 1',
    'log(mu, 2)',
    'np.exp(mu)',
    '__import__("os")',
    'mu if mu else 1',
    'True + mu',
])
def test_rejects(text):
    with pytest.raises(ExpressionError):
        parse_expression(text)


@pytest.mark.parametrize('text, expected', [
    ('inf', np.inf),
    ('-inf', -np.inf),
    ('Infinity', np.inf),
    ('1.5', 1.5),
    ('pi/2', np.pi / 2),
    (2, 2.0),
    (0.25, 0.25),
])
def test_parse_endpoint(text, expected):
    assert parse_endpoint(text) == expected


def test_endpoint_must_be_a_number():
    with pytest.raises(ExpressionError):
        parse_endpoint('half')
