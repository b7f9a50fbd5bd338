# core/numerics.py

import logging
import warnings

import numpy as np
from scipy import integrate

from core.exceptions import (
    DivergentIntegral,
    IntegrationFailure,
    RootFindingFailure,
    StencilOutOfSupport,
)
from xd_platform import settings

logger = logging.getLogger(__name__)

# central stencils of second order: (offsets, weights, reach)
_STENCILS = {
    1: (np.array([-1.0, 1.0]), np.array([-0.5, 0.5]), 1.0),
    2: (np.array([-1.0, 0.0, 1.0]), np.array([1.0, -2.0, 1.0]), 1.0),
    3: (np.array([-2.0, -1.0, 1.0, 2.0]), np.array([-0.5, 1.0, -1.0, 0.5]), 2.0),
}


# -----------------------------------------------------------------------------
# Finite differences
# -----------------------------------------------------------------------------
def derivative(func, x, order: int = 1, lower: float = -np.inf, upper: float = np.inf):
    """
    Richardson-extrapolated central difference of `func` at `x`.

    The finest step is max(DIFF_STEP, DIFF_STEP*|x|) raised to 1/order, and
    the stencil is kept inside (lower, upper). Raises StencilOutOfSupport
    when even the finest stencil does not fit.
    """
    if order not in _STENCILS:
        raise ValueError(f"finite differences of order {order} are not available")
    offsets, weights, reach = _STENCILS[order]
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)

    base = np.maximum(settings.DIFF_STEP, settings.DIFF_STEP * np.abs(x)) ** (1.0 / order)
    levels = max(1, settings.RICHARDSON_LEVELS)
    room = np.minimum(x - lower, upper - x) / reach
    if np.any(room <= base):
        raise StencilOutOfSupport(
            f"difference stencil around {x[room <= base][0]:.6g} leaves ({lower}, {upper})"
        )
    step = np.minimum(base * 2.0 ** (levels - 1), 0.9 * room)

    table = []
    for level in range(levels):
        h = step / 2.0 ** level
        points = x[None, :] + offsets[:, None] * h[None, :]
        with np.errstate(all='ignore'):
            values = np.asarray(func(points.ravel()), dtype=float).reshape(points.shape)
            row = [weights @ values / h ** order]
            for j in range(1, level + 1):
                factor = 4.0 ** j
                row.append(row[j - 1] + (row[j - 1] - table[level - 1][j - 1]) / (factor - 1.0))
        table.append(row)
    result = table[-1][-1]
    return float(result[0]) if scalar else result


# -----------------------------------------------------------------------------
# Monotone inversion
# -----------------------------------------------------------------------------
def _clamped(end: float) -> float:
    return settings.ENDPOINT_CLAMP * max(1.0, abs(end))


def _bracket(func, targets, lower, upper, increasing):
    def below(values):
        return values <= targets if increasing else values >= targets

    def above(values):
        return values >= targets if increasing else values <= targets

    if np.isfinite(lower) and np.isfinite(upper):
        anchor = 0.5 * (lower + upper)
    elif np.isfinite(lower):
        anchor = lower + max(1.0, abs(lower))
    elif np.isfinite(upper):
        anchor = upper - max(1.0, abs(upper))
    else:
        anchor = 0.0

    if np.isfinite(lower):
        lo = np.full_like(targets, lower + _clamped(lower))
    else:
        width = 1.0
        lo = np.full_like(targets, anchor - width)
        for _ in range(settings.IMPROPER_DOUBLINGS):
            with np.errstate(all='ignore'):
                values = func(lo)
            done = below(values) | np.isnan(values)
            if np.all(done):
                break
            width *= 2.0
            lo = np.where(done, lo, anchor - width)
        else:
            raise RootFindingFailure("could not bracket the root from below")

    if np.isfinite(upper):
        hi = np.full_like(targets, upper - _clamped(upper))
    else:
        width = 1.0
        hi = np.full_like(targets, anchor + width)
        for _ in range(settings.IMPROPER_DOUBLINGS):
            with np.errstate(all='ignore'):
                values = func(hi)
            done = above(values) | np.isnan(values)
            if np.all(done):
                break
            width *= 2.0
            hi = np.where(done, hi, anchor + width)
        else:
            raise RootFindingFailure("could not bracket the root from above")
    return lo, hi


def invert_monotone(func, targets, lower: float, upper: float, increasing: bool = True, fprime=None):
    """
    Solve func(x) = target for a monotone `func` on (lower, upper).

    Vectorized bisection to ROOT_TOL (at most ROOT_MAXITER halvings), then a
    Newton polish that is only accepted when it stays inside the bracket.
    """
    targets = np.asarray(targets, dtype=float)
    scalar = targets.ndim == 0
    targets = np.atleast_1d(targets)
    lo, hi = _bracket(func, targets, lower, upper, increasing)

    for _ in range(settings.ROOT_MAXITER):
        mid = 0.5 * (lo + hi)
        with np.errstate(all='ignore'):
            values = func(mid)
        go_right = values < targets if increasing else values > targets
        lo = np.where(go_right, mid, lo)
        hi = np.where(go_right, hi, mid)
        tol = np.maximum(settings.ROOT_TOL, 4.0 * np.finfo(float).eps * np.abs(mid))
        if np.all(hi - lo <= tol):
            break
    root = 0.5 * (lo + hi)

    if fprime is not None:
        with np.errstate(all='ignore'):
            for _ in range(2):
                step = (func(root) - targets) / fprime(root)
                candidate = root - step
                ok = np.isfinite(candidate) & (candidate >= lo) & (candidate <= hi)
                root = np.where(ok, candidate, root)

    return float(root[0]) if scalar else root


# -----------------------------------------------------------------------------
# Quadrature
# -----------------------------------------------------------------------------
def _quad(func, x0: float, x1: float) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', integrate.IntegrationWarning)
        with np.errstate(all='ignore'):
            value, _ = integrate.quad(
                func, x0, x1,
                epsabs=settings.QUAD_EPSABS,
                epsrel=settings.QUAD_EPSREL,
                limit=settings.QUAD_LIMIT,
            )
    return value


def improper_integral(func, start: float, end: float) -> float:
    """
    Integral of `func` from the interior point `start` toward the endpoint
    `end`, which may be infinite or a singular point of `func`.

    The range is cut into geometric pieces (halvings toward a finite end,
    doublings toward an infinite one). Divergence is declared when the
    partial sum exceeds IMPROPER_DIVERGENCE or the geometric tail estimate
    never drops below IMPROPER_CAUCHY.
    """
    direction = 'upper' if end > start else 'lower'
    if start == end:
        return 0.0
    sign = 1.0 if end > start else -1.0

    if np.isfinite(end):
        # measured from the end so that nodes near it keep their resolution
        distance = end - start
        nodes = iter([start] + [end - distance * 0.5 ** k for k in range(1, settings.IMPROPER_HALVINGS + 1)])
    else:
        width = max(1.0, abs(start))
        nodes = (start + sign * width * (2.0 ** k - 1.0) for k in range(settings.IMPROPER_DOUBLINGS + 1))

    total = 0.0
    previous = None
    streak = 0
    tail = 0.0
    ratios = []
    x0 = next(nodes)
    for x1 in nodes:
        # nodes stopped moving or reached the end: the rest is the geometric tail
        if x1 == x0 or x1 == end or not np.isfinite(x1):
            break
        piece = _quad(func, x0, x1)
        if not np.isfinite(piece):
            raise DivergentIntegral(f"integrand is not integrable near {end}", direction)
        total += piece
        if abs(total) > settings.IMPROPER_DIVERGENCE:
            raise DivergentIntegral(f"integral diverges toward {end}", direction)

        if piece == 0.0:
            ratio, tail = 0.0, 0.0
        elif previous is None or previous == 0.0:
            ratio, tail = np.inf, np.inf
        else:
            ratio = abs(piece / previous)
            tail = abs(piece) * ratio / (1.0 - ratio) if ratio < 1.0 else np.inf
        ratios.append(ratio)
        if tail <= settings.IMPROPER_CAUCHY * max(1.0, abs(total)):
            streak += 1
            if streak >= 3:
                return total + np.copysign(tail, total)
        else:
            streak = 0
        previous = piece
        x0 = x1

    # subdivision ran out before the tail test settled: accept a geometric decay
    recent = ratios[-3:]
    if streak > 0 or (len(recent) == 3 and max(recent) < settings.IMPROPER_RATIO):
        logger.debug("integral toward %s accepted on piece ratios %s", end, recent)
        return total + np.copysign(tail, total)
    raise DivergentIntegral(f"integral toward {end} does not settle", direction)


def integral(func, lower: float, upper: float, lower_open: bool = False, upper_open: bool = False) -> float:
    """
    Integral of `func` over (lower, upper); an endpoint flagged open (or
    infinite) is approached by geometric subdivision.
    """
    if lower == upper:
        return 0.0
    lower_open = lower_open or not np.isfinite(lower)
    upper_open = upper_open or not np.isfinite(upper)
    if not lower_open and not upper_open:
        value = _quad(func, lower, upper)
        if not np.isfinite(value):
            raise IntegrationFailure(f"quadrature over ({lower}, {upper}) returned {value}")
        return value

    if np.isfinite(lower) and np.isfinite(upper):
        middle = 0.5 * (lower + upper)
    elif np.isfinite(lower):
        middle = lower + max(1.0, abs(lower))
    elif np.isfinite(upper):
        middle = upper - max(1.0, abs(upper))
    else:
        middle = 0.0

    if lower_open:
        left = -improper_integral(func, middle, lower)
    else:
        left = _quad(func, lower, middle)
    if upper_open:
        right = improper_integral(func, middle, upper)
    else:
        right = _quad(func, middle, upper)
    value = left + right
    if not np.isfinite(value):
        raise IntegrationFailure(f"quadrature over ({lower}, {upper}) returned {value}")
    return value


def sup_distance(first, second, grid) -> float:
    """Largest absolute difference of two vectorized callables on a grid."""
    grid = np.asarray(grid, dtype=float)
    with np.errstate(all='ignore'):
        gap = np.abs(np.asarray(first(grid), dtype=float) - np.asarray(second(grid), dtype=float))
    if np.any(np.isnan(gap)):
        raise IntegrationFailure("distance is undefined on part of the grid")
    return float(np.max(gap))
