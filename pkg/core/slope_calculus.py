# core/slope_calculus.py

import logging

import numpy as np
from scipy.integrate import solve_ivp

from core import numerics
from core.exceptions import (
    DivergentIntegral,
    IntegrationFailure,
    InvalidSlope,
    NotMonotone,
    RateOutOfDomain,
)
from core.models import (
    HazardLocationFamily,
    Interval,
    MonotoneClass,
    SignClass,
    SlopeDiagnosis,
    SlopeFunction,
    SurvivalModel,
    Verdict,
)
from xd_platform import settings

logger = logging.getLogger(__name__)


# -----------------------------------------------------------------------------
# Slope functions of models
# -----------------------------------------------------------------------------
def slope_function_of(family) -> SlopeFunction:
    """v = h' o h^{-1} on Psi = h(C), for a family or a bare monotone generator."""
    if isinstance(family, HazardLocationFamily):
        generator, domain = family.generator, family.rate_domain
    else:
        generator, domain = family, family.rate_domain
    if generator.monotone_class is MonotoneClass.NONE:
        raise NotMonotone(f"{generator.name} has no monotone hazard")

    if generator.slope_fn is not None:
        v = generator.slope_fn
    else:
        def v(mu):
            return generator.hazard_derivative(generator.inverse_hazard(mu))

    return SlopeFunction(
        v=v,
        domain=domain,
        sign_class=SignClass.of(generator.monotone_class),
        name=f'slope of {generator.name}',
    )


def _in_closure(v: SlopeFunction, mu: float) -> bool:
    return v.domain.lower <= mu <= v.domain.upper


def hazard_interval_integral(v: SlopeFunction, mu_c: float, mu_d: float) -> float:
    """
    Integral of mu / v(mu) from mu_c to mu_d, which equals H(d) - H(c) for
    any model with h(c) = mu_c and h(d) = mu_d. Domain endpoints are limits.
    """
    if not (_in_closure(v, mu_c) and _in_closure(v, mu_d)):
        raise RateOutOfDomain(f"[{mu_c}, {mu_d}] is not inside the closure of {v.domain}")
    if mu_c == mu_d:
        return 0.0
    lower, upper = min(mu_c, mu_d), max(mu_c, mu_d)
    value = numerics.integral(
        lambda m: m / v(m),
        lower,
        upper,
        lower_open=lower <= v.domain.lower,
        upper_open=upper >= v.domain.upper,
    )
    return value if mu_c < mu_d else -value


def _inverse_hazard_integral(v: SlopeFunction, mu_from: float, mu_to: float) -> float:
    """psi(mu_to) - psi(mu_from) with psi' = 1/v; infinite on divergence."""
    lower, upper = min(mu_from, mu_to), max(mu_from, mu_to)
    try:
        value = numerics.integral(
            lambda m: 1.0 / v(m),
            lower,
            upper,
            lower_open=lower <= v.domain.lower,
            upper_open=upper >= v.domain.upper,
        )
    except DivergentIntegral:
        sign = 1.0 if v.increasing else -1.0
        return sign * (np.inf if mu_to > mu_from else -np.inf)
    return value if mu_from < mu_to else -value


def _endpoint_hazard_integral(v: SlopeFunction, reference: float, endpoint: float) -> float:
    """|integral of mu/v between reference and endpoint|; inf when it diverges."""
    try:
        return abs(hazard_interval_integral(v, reference, endpoint))
    except DivergentIntegral:
        return np.inf


def validate_slope(v: SlopeFunction) -> SlopeDiagnosis:
    """
    Continuity at a needs the integral of mu/|v| toward the h(a)-side end to
    converge; the model is right censored when the h(b)-side one converges.
    """
    reference = v.domain.interior_point()
    a_side, b_side = v.hazard_side_endpoints()
    left = _endpoint_hazard_integral(v, reference, a_side)
    right = _endpoint_hazard_integral(v, reference, b_side)
    continuity = bool(np.isfinite(left))
    if not continuity:
        verdict = Verdict.INVALID
    elif np.isfinite(right):
        verdict = Verdict.VALID_RIGHT_CENSORED
    else:
        verdict = Verdict.VALID_PROPER
    logger.debug("validated %s: left=%s right=%s verdict=%s", v, left, right, verdict.value)
    return SlopeDiagnosis(
        left_integral=left,
        right_integral=right,
        verdict=verdict,
        continuity_at_a=continuity,
    )


# -----------------------------------------------------------------------------
# Reconstruction
# -----------------------------------------------------------------------------
class _Trajectory:
    """
    Hazard and integrated hazard along the solution of dh/dy = v(h) with
    h(0) = mu0, stored as dense output in both directions from 0.
    """

    def __init__(self, v: SlopeFunction, H0: float, forward, backward):
        self.v = v
        self.H0 = H0
        self.forward = forward
        self.backward = backward
        self.y_max = float(forward.t[-1])
        self.y_min = float(backward.t[-1])
        self.h_max, self.dH_max = (float(x) for x in forward.y[:, -1])
        self.h_min, self.dH_min = (float(x) for x in backward.y[:, -1])

    def _state(self, y):
        y = np.atleast_1d(np.asarray(y, dtype=float))
        h = np.empty_like(y)
        H = np.empty_like(y)

        ahead = y > self.y_max
        behind = y < self.y_min
        fwd = (y >= 0) & ~ahead
        bwd = (y < 0) & ~behind
        if np.any(fwd):
            h[fwd], H[fwd] = self.forward.sol(y[fwd])
        if np.any(bwd):
            h[bwd], H[bwd] = self.backward.sol(y[bwd])
        H = H + self.H0

        domain = self.v.domain
        with np.errstate(all='ignore'):
            if np.any(ahead):
                gap = y[ahead] - self.y_max
                slope = self.v(self.h_max)
                h[ahead] = np.clip(self.h_max + slope * gap, domain.lower, domain.upper)
                H[ahead] = self.H0 + self.dH_max + self.h_max * gap
                if self.v.increasing:
                    H[ahead] += 0.5 * slope * gap ** 2
            if np.any(behind):
                gap = y[behind] - self.y_min
                H_min = max(self.H0 + self.dH_min, 0.0)
                if H_min > 0:
                    H[behind] = H_min * np.exp(self.h_min / H_min * gap)
                else:
                    H[behind] = 0.0
                if self.v.increasing:
                    h[behind] = self.h_min * np.exp(self.v(self.h_min) / self.h_min * gap)
                else:
                    h[behind] = self.h_min + self.v(self.h_min) * gap
                h[behind] = np.clip(h[behind], domain.lower, domain.upper)
        return h, np.maximum(H, 0.0)

    def hazard(self, y):
        h, _ = self._state(y)
        return h if np.ndim(y) else h[0]

    def integrated_hazard(self, y):
        _, H = self._state(y)
        return H if np.ndim(y) else H[0]

    def hazard_derivative(self, y):
        return self.v(self.hazard(y))


def _dynamics(v: SlopeFunction, H0: float, direction: int):
    finite_ends = [e for e in (v.domain.lower, v.domain.upper) if np.isfinite(e)]
    lo, hi = v.domain.lower, v.domain.upper

    def rhs(_, state):
        # stages may overshoot a finite end before the event is located
        slope = float(v(min(max(state[0], lo), hi)))
        return [slope if np.isfinite(slope) else 0.0, state[0]]

    events = []
    for end_value in finite_ends:
        def at_end(_, state, end_value=end_value):
            return state[0] - end_value
        at_end.terminal = True
        events.append(at_end)

    def runaway_hazard(_, state):
        return settings.ODE_HUGE - abs(state[0])
    runaway_hazard.terminal = True
    events.append(runaway_hazard)

    def runaway_slope(_, state):
        value = float(v(state[0]))
        return settings.ODE_HUGE - abs(value) if np.isfinite(value) else -1.0
    runaway_slope.terminal = True
    events.append(runaway_slope)

    if direction > 0:
        def exhausted(_, state):
            return settings.ODE_MAX_HAZARD - (H0 + state[1])
    else:
        def exhausted(_, state):
            return (H0 + state[1]) - settings.ODE_MIN_HAZARD
    exhausted.terminal = True
    events.append(exhausted)

    return rhs, events


def _solve(v: SlopeFunction, mu0: float, H0: float, end: float, direction: int):
    rhs, events = _dynamics(v, H0, direction)
    result = solve_ivp(
        rhs,
        (0.0, end),
        [mu0, 0.0],
        method=settings.ODE_METHOD,
        dense_output=True,
        events=events,
        rtol=settings.ODE_RTOL,
        atol=settings.ODE_ATOL,
    )
    if result.status == -1 or result.sol is None or result.t.size < 2:
        raise IntegrationFailure(f"hazard trajectory for {v} failed: {result.message}")
    logger.debug(
        "trajectory for %s %s stopped at y=%.6g (h=%.6g)",
        v, 'forward' if direction > 0 else 'backward', result.t[-1], result.y[0, -1],
    )
    return result


def reconstruct_from_slope(v: SlopeFunction, mu0: float) -> HazardLocationFamily:
    """
    The hazard location family with slope function v, pinned so that the
    generator has h(0) = mu0.
    """
    if not v.domain.contains(mu0):
        raise RateOutOfDomain(f"mu0={mu0} is not inside {v.domain}")
    diagnosis = validate_slope(v)
    if diagnosis.verdict is Verdict.INVALID:
        raise InvalidSlope(f"{v} does not generate a survival function")

    a_side, b_side = v.hazard_side_endpoints()
    H0 = hazard_interval_integral(v, a_side, mu0)
    lower = _inverse_hazard_integral(v, mu0, a_side)
    upper = _inverse_hazard_integral(v, mu0, b_side)
    if diagnosis.verdict is Verdict.VALID_RIGHT_CENSORED:
        H_upper = H0 + hazard_interval_integral(v, mu0, b_side)
        censor = float(np.exp(-H_upper))
    else:
        censor = 0.0
    logger.info(
        "reconstructing %s at mu0=%g: support (%g, %g), H(0)=%g, censor mass %g",
        v, mu0, lower, upper, H0, censor,
    )

    forward = _solve(v, mu0, H0, min(upper, settings.ODE_SPAN), +1)
    backward = _solve(v, mu0, H0, max(lower, -settings.ODE_SPAN), -1)
    trajectory = _Trajectory(v, H0, forward, backward)

    generator = SurvivalModel(
        support=Interval(lower, upper),
        integrated_hazard_fn=trajectory.integrated_hazard,
        hazard_fn=trajectory.hazard,
        hazard_derivatives=(trajectory.hazard_derivative,),
        censor_mass=censor,
        monotone_class=v.monotone_class,
        hazard_range=v.domain,
        name=f'reconstructed({v.expression or v.name})',
        parameters={'mu0': mu0},
    )
    return HazardLocationFamily(generator=generator, rate_domain=v.domain)
