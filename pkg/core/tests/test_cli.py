# core/tests/test_cli.py

import csv
import io

import numpy as np
import pytest
from click.testing import CliRunner

from core import catalog
from core.cli import cli, run


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def invoke(runner, *args):
    result = runner.invoke(cli, list(args), catch_exceptions=False)
    assert result.exit_code == 0, result.stderr
    return result.stdout


# -----------------------------------------------------------------------------
# Output
# -----------------------------------------------------------------------------
def test_catalog_list(runner):
    table = rows(invoke(runner, 'catalog', 'list'))
    assert table[0] == ['name', 'kind', 'parameters']
    assert ['gumbel', 'quadratic', ''] in table
    assert ['burr', 'example', 'alpha'] in table
    assert len(table) == 1 + len(catalog.list_families())


def test_catalog_list_pretty(runner):
    output = invoke(runner, 'catalog', 'list', '--pretty')
    assert 'reflected_logistic' in output
    assert ',' not in output.splitlines()[0]


def test_eval(runner):
    table = rows(invoke(runner, 'eval', '--family', 'gumbel', '--mu', '1', '--lambda', '1', '--at', '0', '--at', '1'))
    assert table[0] == ['y', 'G', 'H', 'h', 'dh']
    y, G, H, h, dh = (float(x) for x in table[1])
    assert (y, H, h, dh) == (0.0, 1.0, 1.0, 1.0)
    assert G == pytest.approx(np.exp(-1.0), rel=1e-15)
    assert float(table[2][2]) == pytest.approx(np.e, rel=1e-15)


def test_eval_with_family_parameters(runner):
    table = rows(invoke(runner, 'eval', '--family', 'burr', '--param', 'alpha=0.5', '--mu', '1', '--at', '0'))
    assert float(table[1][3]) == pytest.approx(1.0, rel=1e-12)


def test_slope_prints_the_diagnosis_then_the_grid(runner):
    output = invoke(runner, 'slope', '--expr', 'mu^2', '--domain', '1', 'inf', '--points', '5')
    diagnosis, grid = output.split('\n\n')
    diagnosis = rows(diagnosis)
    assert diagnosis[0][4] == 'verdict'
    assert diagnosis[1][4] == 'VALID_PROPER'
    assert diagnosis[1][1] == 'inf'
    grid = rows(grid)
    assert grid[0] == ['mu', 'v']
    assert len(grid) == 6
    for mu, v in grid[1:]:
        assert float(v) == pytest.approx(float(mu) ** 2)


def test_slope_of_a_family(runner):
    output = invoke(runner, 'slope', '--family', 'exp_slope_dfr')
    assert rows(output.split('\n\n')[0])[1][4] == 'VALID_RIGHT_CENSORED'


def test_reconstruct(runner):
    table = rows(invoke(runner, 'reconstruct', '--expr', '1', '--domain', '0', 'inf', '--mu0', '1', '--points', '7'))
    assert table[0] == ['y', 'G', 'h']
    for y, G, h in table[1:]:
        assert float(h) == pytest.approx(float(y) + 1.0, rel=1e-7)
        assert float(G) == pytest.approx(np.exp(-0.5 * (float(y) + 1.0) ** 2), rel=1e-7)


def test_sample_is_deterministic(runner):
    args = ('sample', '--family', 'logistic', '--mu', '0.5', '--lambda', '2', '--n', '5', '--seed', '7')
    first, second = invoke(runner, *args), invoke(runner, *args)
    assert first == second
    assert len(rows(first)) == 6
    assert rows(first)[0] == ['y']
    other = invoke(runner, 'sample', '--family', 'logistic', '--mu', '0.5', '--lambda', '2', '--n', '5', '--seed', '8')
    assert other != first


def test_sample_with_workers(runner):
    args = ('sample', '--family', 'gumbel', '--mu', '1', '--n', '9', '--seed', '3', '--workers', '3')
    assert invoke(runner, *args) == invoke(runner, *args)


def test_transform_vreflect(runner):
    table = rows(invoke(runner, 'transform', '--op', 'vreflect', '--family', 'gumbel', '--m', '1', '--points', '9'))
    expected = catalog.make_family('reflected_gumbel').model
    for y, G, _ in table[1:]:
        assert float(G) == pytest.approx(float(expected.survival(float(y))), rel=1e-10)


def test_transform_censor(runner):
    table = rows(invoke(runner, 'transform', '--op', 'censor', '--family', 'rayleigh', '--c', '1', '--points', '4'))
    assert all(0.0 < float(y) < 1.0 for y, _, _ in table[1:])


def test_converge_writes_the_report(runner, tmp_path):
    out = tmp_path / 'report.csv'
    config = tmp_path / 'logistic.yaml'
    config.write_text(
        'command: gev\nfamily: {name: logistic}\nmu: 0.5\nlambda: 1\n'
        f'n_values: [10, 100, 1000]\noutput_path: {out}\n',
        encoding='utf-8',
    )
    invoke(runner, 'converge', '--config', str(config))
    table = rows(out.read_text(encoding='utf-8'))
    assert table[0] == ['index', 'slope_dist', 'surv_dist', 'tight', 'rate']
    assert [float(row[0]) for row in table[1:]] == [10.0, 100.0, 1000.0]


def test_converge_rebuilds_a_generator_from_an_expression(runner, tmp_path):
    config = tmp_path / 'dfr.yaml'
    config.write_text(
        'command: exp_slope\nslope_expression: "-exp(mu)"\ndomain: [0, inf]\nbeta: 1\n'
        'mu: 1\nlambda: 1\nm_values: [0.5, 1.0]\n',
        encoding='utf-8',
    )
    table = rows(invoke(runner, 'converge', '--config', str(config)))
    assert [float(row[0]) for row in table[1:]] == [0.5, 1.0]
    # -exp(mu) is its own limit under the shift
    assert all(float(row[2]) < 1e-5 for row in table[1:])


def test_converge_monte_carlo_column_follows_the_seed(runner, tmp_path):
    def table_for(seed):
        config = tmp_path / f'seeded_{seed}.yaml'
        config.write_text(
            'command: gev\nfamily: {name: logistic}\nmu: 0.5\nlambda: 1\n'
            f'n_values: [10, 100, 1000]\nmc_draws: 2000\nseed: {seed}\n',
            encoding='utf-8',
        )
        return invoke(runner, 'converge', '--config', str(config))

    first = table_for(5)
    assert rows(first)[0][-1] == 'ks'
    assert table_for(5) == first
    other = rows(table_for(6))
    assert [row[:-1] for row in other] == [row[:-1] for row in rows(first)]
    assert [row[-1] for row in other[1:]] != [row[-1] for row in rows(first)[1:]]


# -----------------------------------------------------------------------------
# Exit codes
# -----------------------------------------------------------------------------
def test_success_exit_code(capsys):
    assert run(['catalog', 'list']) == 0
    assert 'gumbel' in capsys.readouterr().out


@pytest.mark.parametrize('argv', [
    ['eval'],
    ['eval', '--mu', '1', '--at', '0'],
    ['slope', '--family', 'gumbel', '--expr', 'mu'],
    ['slope', '--expr', 'mu'],
    ['transform', '--op', 'flip', '--family', 'gumbel'],
    ['eval', '--family', 'burr', '--mu', '1', '--at', '0'],
    ['eval', '--family', 'weibull', '--mu', '1', '--at', '0'],
    ['eval', '--family', 'uniform', '--mu', '0.5', '--at', '0'],
    ['eval', '--family', 'gumbel', '--param', 'oops', '--mu', '1', '--at', '0'],
    ['reconstruct', '--expr', 'mu^2', '--domain', '0', 'inf', '--mu0', '1'],
    ['slope', '--expr', 'sin(mu)', '--domain', '0', 'inf'],
    ['transform', '--op', 'censor', '--family', 'gumbel'],
])
def test_invalid_input_exits_with_2(argv, capsys):
    assert run(argv) == 2
    assert capsys.readouterr().err


def test_missing_config_exits_with_2(tmp_path):
    assert run(['converge', '--config', str(tmp_path / 'absent.yaml')]) == 2


def test_failed_experiment_exits_with_3(tmp_path, capsys):
    config = tmp_path / 'strict.yaml'
    config.write_text(
        'command: gev\nfamily: {name: logistic}\nmu: 0.5\nlambda: 1\nn_values: [10, 100]\ntolerance: 1.0e-12\n',
        encoding='utf-8',
    )
    assert run(['converge', '--config', str(config)]) == 3
    captured = capsys.readouterr()
    assert captured.out.startswith('index,slope_dist')
    assert 'tolerance' in captured.err
