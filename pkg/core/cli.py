# core/cli.py
"""
Command line front end.

    python manage.py catalog list [--pretty]
    python manage.py eval --family gumbel --mu 1 --lambda 1 --at 0 --at 1
    python manage.py slope --expr "mu^2" --domain 0 inf
    python manage.py reconstruct --expr "exp(-mu)" --domain 0 inf --mu0 0.69
    python manage.py sample --family logistic --mu 0.5 --lambda 2 --n 1000 --seed 7
    python manage.py transform --op vreflect --family gumbel --m 1
    python manage.py converge --config configs/negpareto.yaml

Slope expressions use + - * / ^, exp, log, sqrt, the variable mu and the
constants e and pi; domain endpoints accept `inf`. Tables go to stdout as
CSV with a header row and floats printed to 17 significant digits. Exit
codes: 0 success, 2 invalid input, 3 numerical failure.
"""

import csv
import logging
import sys

import click
import numpy as np
from tabulate import tabulate

from core import catalog, convergence_lab, slope_calculus, survival_core, transforms
from core.exceptions import ExperimentFailed, MissingParameter, ValidationError, XDError
from core.expressions import parse_endpoint, parse_expression
from core.models import Interval, SignClass, SlopeFunction
from core.serializers import load_experiment_config
from core.xd_model import xd_make
from xd_platform import settings

logger = logging.getLogger(__name__)

TRANSFORM_OPS = ('truncate', 'censor', 'hreflect', 'vreflect', 'addexp', 'shift')


# -----------------------------------------------------------------------------
# Output
# -----------------------------------------------------------------------------
def _cell(value):
    if isinstance(value, (float, np.floating)):
        return format(float(value), '.17g')
    return value


def write_csv(header, rows, stream=None):
    writer = csv.writer(stream or click.get_text_stream('stdout'), lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(value) for value in row])


# -----------------------------------------------------------------------------
# Input helpers
# -----------------------------------------------------------------------------
def _parameters(pairs) -> dict:
    parameters = {}
    for pair in pairs:
        key, sep, value = pair.partition('=')
        if not sep or not key:
            raise click.BadParameter(f"'{pair}' is not key=value", param_hint='--param')
        try:
            parameters[key.strip()] = float(value)
        except ValueError:
            raise click.BadParameter(f"'{value}' is not a number", param_hint='--param')
    return parameters


def expression_slope(expression: str, domain) -> SlopeFunction:
    """A slope function from an expression; the sign is read at an interior point."""
    interval = Interval(*(parse_endpoint(end) for end in domain))
    func = parse_expression(expression)
    probe = float(func(interval.interior_point()))
    if not np.isfinite(probe) or probe == 0.0:
        raise ValidationError(f"'{expression}' has no sign at {interval.interior_point():g}")
    return SlopeFunction(
        v=func,
        domain=interval,
        sign_class=SignClass.POSITIVE if probe > 0 else SignClass.NEGATIVE,
        name=expression,
        expression=expression,
    )


def family_generator(name: str, parameters: dict):
    """(unit generator, unit slope or None) of a catalog entry."""
    spec = catalog.make_family(name, **parameters)
    return spec.unit_generator, spec.slope_closed_form


def family_xd(name: str, parameters: dict, mu: float, lam: float):
    generator, unit = family_generator(name, parameters)
    return xd_make(generator, mu, lam, unit_slope=unit)


family_option = click.option('--family', 'family', help='catalog family identifier')
param_option = click.option('--param', 'params', multiple=True, metavar='KEY=VALUE', help='family parameter')
points_option = click.option('--points', default=50, show_default=True, type=click.IntRange(2), help='grid size')


# -----------------------------------------------------------------------------
# Commands
# -----------------------------------------------------------------------------
@click.group()
@click.option('--log-level', default=settings.LOG_LEVEL, show_default=True,
              type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR'], case_sensitive=False))
def cli(log_level):
    """Slope-function calculus for extremes."""
    logging.basicConfig(
        level=log_level.upper(),
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
        stream=sys.stderr,
    )


@cli.group('catalog')
def catalog_group():
    """Closed-form families."""


@catalog_group.command('list')
@click.option('--pretty', is_flag=True, help='aligned table instead of CSV')
def catalog_list(pretty):
    header = ('name', 'kind', 'parameters')
    rows = catalog.list_families()
    if pretty:
        click.echo(tabulate(rows, headers=header))
    else:
        write_csv(header, rows)


@cli.command('eval')
@family_option
@param_option
@click.option('--mu', type=float, required=True)
@click.option('--lambda', 'lam', type=float, default=1.0, show_default=True)
@click.option('--at', 'points', type=float, multiple=True, required=True)
def eval_command(family, params, mu, lam, points):
    """G, H, h and h' of XD(mu, lambda) generated by a family."""
    if not family:
        raise click.UsageError('--family is required')
    xd = family_xd(family, _parameters(params), mu, lam)
    y = np.asarray(points, dtype=float)
    rows = zip(y, xd.survival(y), xd.integrated_hazard(y), xd.hazard(y), xd.hazard_derivative(y))
    write_csv(('y', 'G', 'H', 'h', 'dh'), rows)


@cli.command('slope')
@family_option
@param_option
@click.option('--expr', 'expression', help='slope expression in mu')
@click.option('--domain', nargs=2, type=str, help='rate domain LO HI')
@points_option
def slope_command(family, params, expression, domain, points):
    """Slope function on its domain, preceded by the validity diagnosis."""
    if bool(family) == bool(expression):
        raise click.UsageError('give exactly one of --family and --expr')
    if expression:
        if not domain:
            raise click.UsageError('--expr needs --domain')
        v = expression_slope(expression, domain)
    else:
        generator, unit = family_generator(family, _parameters(params))
        v = unit if unit is not None else slope_calculus.slope_function_of(generator)
    diagnosis = slope_calculus.validate_slope(v)
    write_csv(
        ('domain_low', 'domain_high', 'left_integral', 'right_integral', 'verdict', 'continuity_at_a'),
        [(v.domain.lower, v.domain.upper, diagnosis.left_integral, diagnosis.right_integral,
          diagnosis.verdict.value, diagnosis.continuity_at_a)],
    )
    click.echo('')
    grid = v.domain.grid(points)
    write_csv(('mu', 'v'), zip(grid, v(grid)))


@cli.command('reconstruct')
@click.option('--expr', 'expression', required=True, help='slope expression in mu')
@click.option('--domain', nargs=2, type=str, required=True, help='rate domain LO HI')
@click.option('--mu0', type=float, required=True, help='rate of the generator at 0')
@points_option
def reconstruct_command(expression, domain, mu0, points):
    """Tabulate the generator rebuilt from a slope function."""
    v = expression_slope(expression, domain)
    generator = slope_calculus.reconstruct_from_slope(v, mu0).generator
    y = generator.support.grid(points)
    write_csv(('y', 'G', 'h'), zip(y, generator.survival(y), generator.hazard(y)))


@cli.command('sample')
@family_option
@param_option
@click.option('--mu', type=float, required=True)
@click.option('--lambda', 'lam', type=float, default=1.0, show_default=True)
@click.option('--n', 'size', type=click.IntRange(1), required=True)
@click.option('--seed', type=int, required=True)
@click.option('--workers', type=click.IntRange(1), default=1, show_default=True)
def sample_command(family, params, mu, lam, size, seed, workers):
    """Draws from XD(mu, lambda); censored draws print as the right endpoint or inf."""
    if not family:
        raise click.UsageError('--family is required')
    model = family_xd(family, _parameters(params), mu, lam).model
    if workers == 1:
        draws = survival_core.sample(model, size, seed)
    else:
        draws = survival_core.sample_parallel(model, size, seed, workers)
    write_csv(('y',), ((y,) for y in draws))


@cli.command('transform')
@click.option('--op', type=click.Choice(TRANSFORM_OPS), required=True)
@family_option
@param_option
@click.option('--c', type=float, help='cut point for truncate and censor')
@click.option('--m', type=float, help='level for vreflect, addexp and shift')
@click.option('--mu', type=float, default=1.0, show_default=True, help='rate for shift')
@click.option('--lambda', 'lam', type=float, default=1.0, show_default=True, help='index for shift')
@points_option
def transform_command(op, family, params, c, m, mu, lam, points):
    """Apply one transformation to a family generator and tabulate the result."""
    if not family:
        raise click.UsageError('--family is required')
    parameters = _parameters(params)
    generator, _ = family_generator(family, parameters)
    if op in ('truncate', 'censor') and c is None:
        raise MissingParameter(f"{op} needs --c")
    if op in ('vreflect', 'addexp', 'shift') and m is None:
        raise MissingParameter(f"{op} needs --m")

    if op == 'truncate':
        result = transforms.truncate_left(generator, c)
    elif op == 'censor':
        result = transforms.censor_right(generator, c)
    elif op == 'hreflect':
        result = transforms.reflect_horizontal(generator)
    elif op == 'vreflect':
        result = transforms.reflect_vertical(generator, m)
    elif op == 'addexp':
        result = transforms.add_exponential_component(generator, m)
    else:
        result = transforms.shift_transform(family_xd(family, parameters, mu, lam), m).model

    logger.info("%s: support %s, rate domain %s, censor mass %g", result.name, result.support,
                result.rate_domain, result.censor_mass)
    y = result.support.grid(points)
    write_csv(('y', 'G', 'h'), zip(y, result.survival(y), result.hazard(y)))


@cli.command('converge')
@click.option('--config', 'config_path', type=click.Path(dir_okay=False), required=True)
def converge_command(config_path):
    """Run a convergence experiment described by a YAML file."""
    config = load_experiment_config(config_path)
    if config.family is not None:
        generator, unit = family_generator(config.family.name, config.family.parameters)
        if unit is None:
            unit = slope_calculus.slope_function_of(generator)
    else:
        unit = expression_slope(config.slope_expression, config.domain_bounds)
        mu0 = config.mu0 or unit.domain.interior_point()
        generator = slope_calculus.reconstruct_from_slope(unit, mu0).generator

    window = Interval(*config.window) if config.window else None
    slope_window = Interval(*config.slope_window) if config.slope_window else None
    if config.command == 'gev':
        report = convergence_lab.gev_convergence_experiment(
            generator, config.mu, config.lam, config.n_values,
            window=window, p=config.p, unit_slope=unit, slope_window=slope_window,
            tolerance=config.tolerance, workers=config.workers,
            draws=config.mc_draws, seed=config.seed,
        )
    else:
        report = convergence_lab.exp_slope_convergence_experiment(
            generator, config.beta, config.mu, config.lam, config.m_values,
            window=window, unit_slope=unit, slope_window=slope_window,
            tolerance=config.tolerance, workers=config.workers,
            draws=config.mc_draws, seed=config.seed,
        )

    header = ('index', 'slope_dist', 'surv_dist', 'tight', 'rate')
    rows = [
        (step.index, step.slope_sup_distance, step.survival_sup_distance, step.tightness_integral, step.rate)
        for step in report.steps
    ]
    if config.mc_draws:
        logger.info("Monte Carlo check: %s draws per step, seed %s", config.mc_draws, config.seed)
        header += ('ks',)
        rows = [row + (step.ks_distance,) for row, step in zip(rows, report.steps)]
    if config.output_path:
        with open(config.output_path, 'w', newline='', encoding='utf-8') as handle:
            write_csv(header, rows, handle)
    else:
        write_csv(header, rows)
    if not report.passed:
        raise ExperimentFailed(
            f"{report.limit_family}: final distance {report.steps[-1].survival_sup_distance:.3g} "
            f"against tolerance {report.tolerance:g}"
        )


# -----------------------------------------------------------------------------
# Entry point
# -----------------------------------------------------------------------------
def run(argv=None) -> int:
    """Run one command and return its exit code."""
    try:
        cli.main(args=list(argv if argv is not None else sys.argv[1:]), prog_name='xd', standalone_mode=False)
    except click.exceptions.Abort:
        click.echo('aborted', err=True)
        return 1
    except click.ClickException as err:
        err.show()
        return 2
    except XDError as err:
        logger.debug("command failed", exc_info=True)
        click.echo(f"error: {err}", err=True)
        return err.exit_code
    return 0
