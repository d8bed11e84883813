"""Power function, critical speed and competitive-ratio constants."""

import logging

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from ..exceptions import DomainError, UsageError
from ..models.policy import PolicyKind
from ..models.power import AnalysisConstants, PowerParams, ProcessorMode

logger = logging.getLogger(__name__)


def power(params: PowerParams, s: float, state: ProcessorMode) -> float:
    """Return the power drawn at speed s in the given state.

    Working and idle states pay s^alpha + g; sleep pays nothing and ignores s.

    Raises:
        DomainError: If s is negative.
    """
    if state is ProcessorMode.SLEEP:
        return 0.0
    if s < 0:
        raise DomainError(f"Speed must be >= 0, got {s}")
    return s ** params.alpha + params.g


def critical_speed(params: PowerParams) -> float:
    """Return s* = (g / (alpha - 1))^(1/alpha), the minimiser of P(s)/s."""
    return params.critical_speed


def energy_per_work(params: PowerParams, s: float) -> float:
    """Return P(s)/s, the energy spent per unit of work at speed s.

    Raises:
        DomainError: If s is not positive.
    """
    if not s > 0:
        raise DomainError(f"Speed must be > 0, got {s}")
    return (s ** params.alpha + params.g) / s


def numeric_critical_speed(params: PowerParams, xatol: float = 1e-12) -> float:
    """Minimise P(s)/s numerically on (0, 10 s*]; cross-check for the closed form.

    A bounded minimisation brackets the minimiser, then the stationarity
    condition (alpha - 1) s^alpha = g is polished with Brent's root finder.
    """
    upper = 10.0 * params.critical_speed
    result = minimize_scalar(
        lambda s: energy_per_work(params, s),
        bounds=(upper * 1e-9, upper),
        method="bounded",
        options={"xatol": xatol * upper},
    )
    rough = float(result.x)

    def stationarity(s: float) -> float:
        return (params.alpha - 1.0) * s ** params.alpha - params.g

    low, high = rough / 2.0, rough * 2.0
    if stationarity(low) < 0 < stationarity(high):
        speed = brentq(stationarity, low, high, xtol=xatol * rough, rtol=4 * np.finfo(float).eps)
    else:
        speed = rough
    logger.debug(f"Numeric critical speed {speed:.12g} (closed form {params.critical_speed:.12g})")
    return float(speed)


def competitive_bound(params: PowerParams, which: PolicyKind) -> float:
    """Return the proven total-energy competitive ratio of SqOA or SOA.

    SqOA: max{4, 2 + (2 - 1/alpha)^alpha * 2^(alpha-1)}; SOA: max{4, 2 + alpha^alpha}.

    Raises:
        UsageError: For policies without a bound.
    """
    alpha = params.alpha
    if which is PolicyKind.SQOA:
        return max(4.0, 2.0 + (2.0 - 1.0 / alpha) ** alpha * 2.0 ** (alpha - 1.0))
    if which is PolicyKind.SOA:
        return max(4.0, 2.0 + alpha ** alpha)
    raise UsageError(f"No competitive bound known for {which.value}")


def analysis_constants(params: PowerParams, beta_scale: float = 1.0) -> AnalysisConstants:
    """Return beta, c and the total-energy constant for the given parameters."""
    return AnalysisConstants.from_params(params, beta_scale=beta_scale)
