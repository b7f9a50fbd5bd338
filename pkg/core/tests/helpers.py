# core/tests/helpers.py

import numpy as np

from core import catalog
from core.models import Interval

# every catalog entry with the parameters needed to build it
CATALOG_ENTRIES = [
    *[(name, {}) for name in catalog.QUADRATIC_FAMILIES],
    *[(name, {}) for name in catalog.REFLECTED_FAMILIES],
    ('gev', {'gamma': 1.0}),
    ('gev', {'gamma': -2.0}),
    ('negative_pareto', {}),
    ('burr', {'alpha': 0.5}),
    ('burr', {'alpha': 2.0}),
    ('gompertz_makeham', {'m': 1.0}),
    ('gompertz_makeham', {'m': 1.0, 'beta': -1.0}),
    ('uniform_no_exp', {}),
    ('exp_slope_ifr', {}),
    ('exp_slope_dfr', {}),
]


def entry_id(entry):
    name, parameters = entry
    if not parameters:
        return name
    return name + '[' + ','.join(f'{k}={v:g}' for k, v in parameters.items()) + ']'


def compact_grid(interval: Interval, n: int = 100) -> np.ndarray:
    """n points on a compact piece well inside an interval."""
    if interval.bounded:
        pad = 0.05 * interval.width
        return np.linspace(interval.lower + pad, interval.upper - pad, n)
    if np.isfinite(interval.lower):
        return np.linspace(interval.lower + 0.1, interval.lower + 10.0, n)
    if np.isfinite(interval.upper):
        return np.linspace(interval.upper - 10.0, interval.upper - 0.1, n)
    return np.linspace(-3.0, 3.0, n)
