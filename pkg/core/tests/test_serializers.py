# core/tests/test_serializers.py

import numpy as np
import pytest

from core.exceptions import ConfigError
from core.serializers import load_experiment_config
from xd_platform import settings

CONFIGS = settings.BASE_DIR / 'configs'


def write(tmp_path, text, name='experiment.yaml'):
    path = tmp_path / name
    path.write_text(text, encoding='utf-8')
    return path


def test_shipped_gev_configs_load():
    negpareto = load_experiment_config(CONFIGS / 'negpareto.yaml')
    assert negpareto.command == 'gev'
    assert negpareto.family.name == 'negative_pareto'
    assert negpareto.lam == 1.0
    assert negpareto.p == 1.5
    assert negpareto.n_values == [10, 100, 1000, 10000]
    assert negpareto.mc_draws == 20000
    assert negpareto.seed == 0

    burr = load_experiment_config(CONFIGS / 'burr.yaml')
    assert burr.family.parameters == {'alpha': 0.5}


def test_shipped_exp_slope_config_loads():
    config = load_experiment_config(CONFIGS / 'perturbed_rayleigh.yaml')
    assert config.command == 'exp_slope'
    assert config.family is None
    assert config.slope_expression == '1 + 1/(1+mu)'
    assert config.domain_bounds == (0.0, np.inf)
    assert config.beta == 0
    assert config.workers == 1


def test_lambda_key_and_defaults(tmp_path):
    config = load_experiment_config(write(tmp_path, """
command: gev
family: {name: logistic}
mu: 0.5
lambda: 2
n_values: [10, 100]
window: [-2, 2]
"""))
    assert config.lam == 2.0
    assert config.window == (-2.0, 2.0)
    assert config.tolerance is None
    assert config.seed == 0
    assert config.mc_draws is None


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError, match='cannot read'):
        load_experiment_config(tmp_path / 'absent.yaml')


@pytest.mark.parametrize('text, message', [
    ('command: [gev', 'not valid YAML'),
    ('- gev\n- 10\n', 'does not hold a mapping'),
    ('command: gev\nfamily: {name: gumbel}\nmu: 1\nlambda: 1\nn_values: [10]\ncolour: red\n', 'colour'),
    ('command: gev\nfamily: {name: gumbel}\nslope_expression: mu\ndomain: [0, inf]\nmu: 1\nlambda: 1\n'
     'n_values: [10]\n', 'either family or slope_expression'),
    ('command: gev\nfamily: {name: gumbel}\nmu: 1\nlambda: 1\n', 'needs n_values'),
    ('command: exp_slope\nfamily: {name: exp_slope_dfr}\nmu: 1\nlambda: 1\nm_values: [1]\nbeta: 2\n', 'beta'),
    ('command: gev\nfamily: {name: gumbel}\nmu: 1\nlambda: 1\nn_values: [10]\nwindow: [2, -2]\n', 'low < high'),
    ('command: gev\nfamily: {name: gumbel}\nmu: -1\nlambda: 1\nn_values: [10]\n', 'mu'),
    ('command: gev\nslope_expression: mu\nmu: 1\nlambda: 1\nn_values: [10]\n', 'needs a domain'),
    ('command: gev\nfamily: {name: gumbel}\nmu: 1\nlambda: 1\nn_values: [0]\n', 'positive counts'),
    ('command: gev\nfamily: {name: gumbel}\nmu: 1\nlambda: 1\nn_values: [10]\nmc_draws: 0\n', 'mc_draws'),
])
def test_rejected_configs(tmp_path, text, message):
    with pytest.raises(ConfigError, match=message):
        load_experiment_config(write(tmp_path, text))
