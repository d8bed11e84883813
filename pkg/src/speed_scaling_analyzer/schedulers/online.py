"""Speed rules of the online policies."""

from typing import Iterable, Optional, Tuple

from speed_scaling_analyzer.models.job import Job
from speed_scaling_analyzer.models.pending import PendingWork
from speed_scaling_analyzer.models.policy import Policy, PolicyKind, ProcessorState
from speed_scaling_analyzer.models.power import PowerParams, ProcessorMode
from speed_scaling_analyzer.utils.tolerance import DEFAULT_TOLERANCE, Tolerance


def prefix_densities(pending: PendingWork, t0: float) -> Iterable[Tuple[float, float]]:
    """Yield (deadline, density) of every deadline prefix after t0."""
    for deadline, work in pending.prefix_work(t0):
        yield deadline, work / (deadline - t0)


def max_density(pending: PendingWork, t0: float,
                tol: Tolerance = DEFAULT_TOLERANCE) -> Tuple[float, Optional[float]]:
    """Return the highest prefix density rho and the latest deadline attaining it.

    Returns:
        (rho, t1); (0.0, None) when nothing is pending after t0.
    """
    rho, t1 = 0.0, None
    for deadline, density in prefix_densities(pending, t0):
        if t1 is None or density > rho + tol.margin(density, rho):
            rho, t1 = density, deadline
        elif tol.close(density, rho):
            rho, t1 = max(rho, density), deadline
    return rho, t1


def working_speed(rho: float, params: PowerParams, q: float,
                  tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Speed while working: q * rho at or above s*, s* below it, 0 without work.

    rho within tolerance of s* counts as reaching it, as in the wake rule.
    """
    if rho <= 0:
        return 0.0
    s_star = params.critical_speed
    return q * max(rho, s_star) if tol.geq(rho, s_star) else s_star


def sqoa_decision(
    state: ProcessorState,
    rho: float,
    params: PowerParams,
    t: float,
    q: Optional[float] = None,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> Tuple[ProcessorMode, float]:
    """Apply the working, idle and sleep rules once.

    Working: rho >= s* runs at q * rho, 0 < rho < s* runs at s*, no work goes
    idle. Idle or asleep: rho >= s* wakes into working; an idle processor
    sleeps once (t - t') * g reaches L. Waking wins over sleeping.

    Args:
        state: Current mode and the last working time t'.
        rho: Highest pending density at t.
        params: Power parameters.
        t: Current time.
        q: Multiplier; defaults to params.q (pass 1 for SOA).
        tol: Tolerance for the wake and sleep thresholds.

    Returns:
        (new mode, speed).
    """
    q = params.q if q is None else q
    s_star = params.critical_speed

    if state.mode is ProcessorMode.WORKING:
        if rho <= 0:
            return ProcessorMode.IDLE, 0.0
        return ProcessorMode.WORKING, working_speed(rho, params, q, tol)

    if rho > 0 and tol.geq(rho, s_star):
        return ProcessorMode.WORKING, q * max(rho, s_star)

    if state.mode is ProcessorMode.IDLE and tol.geq((t - state.last_working_time) * params.g, params.L):
        return ProcessorMode.SLEEP, 0.0
    return state.mode, 0.0


def avr_speed(active: Iterable[Job], t0: float) -> float:
    """Sum of densities of the jobs whose window [r, d) contains t0."""
    return sum(job.density for job in active if job.release <= t0 < job.deadline)


def policy_speed(
    policy: Policy,
    pending: PendingWork,
    t0: float,
    params: PowerParams,
    active: Optional[Iterable[Job]] = None,
) -> float:
    """Return the speed a policy runs at with the given pending work.

    OA runs at the highest density, qOA at q times it, AVR at the summed
    densities of active jobs, SOA/SqOA at their working-rule speed.

    Args:
        policy: The policy.
        pending: Released, unfinished work.
        t0: Current time.
        params: Power parameters.
        active: Jobs considered by AVR; defaults to the pending jobs.
    """
    if policy.kind is PolicyKind.AVR:
        jobs = active if active is not None else [entry.job for entry in pending]
        return avr_speed(jobs, t0)

    rho, _ = max_density(pending, t0)
    if policy.kind in (PolicyKind.OA, PolicyKind.QOA):
        return policy.q * rho
    return working_speed(rho, params, policy.q)
