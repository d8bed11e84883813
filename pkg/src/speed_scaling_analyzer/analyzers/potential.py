"""Critical partition of the excess work, the potential and the amortized check."""

import logging
from typing import Optional, Tuple, Union

import numpy as np

from speed_scaling_analyzer.exceptions import UsageError
from speed_scaling_analyzer.models.pending import PendingWork
from speed_scaling_analyzer.models.power import AnalysisConstants, PowerParams
from speed_scaling_analyzer.models.reports import CriticalPartition, PotentialSample, Violation, ViolationReport
from speed_scaling_analyzer.models.schedule import Schedule
from speed_scaling_analyzer.models.trace import Trace
from speed_scaling_analyzer.schedulers.offline import schedule_energy
from speed_scaling_analyzer.utils.tolerance import DEFAULT_TOLERANCE, Tolerance

SIGNED = "signed"
CLAMPED = "clamped"


def excess_work(pending_alg: PendingWork, pending_opt: PendingWork, start: float, end: float) -> float:
    """Return d(start, end) = max{0, w_a - w_o} over deadlines in (start, end]."""
    return max(0.0, pending_alg.work_between(start, end) - pending_opt.work_between(start, end))


def critical_partition(
    pending_alg: PendingWork,
    pending_opt: PendingWork,
    t0: float,
    s_star: float,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> CriticalPartition:
    """Split (t0, latest deadline] into critical intervals.

    From t_i, t_{i+1} is the latest deadline maximising d(t_i, t) / (t - t_i);
    its ratio is g_i. Deadlines of both pending sets are candidates.
    """
    deadlines = sorted(set(pending_alg.deadlines()) | set(pending_opt.deadlines()))
    deadlines = [d for d in deadlines if d > t0]

    times, densities, alg_work, opt_work = [t0], [], [], []
    current = t0
    while deadlines and current < deadlines[-1]:
        best_t: Optional[float] = None
        best = 0.0
        for deadline in deadlines:
            if deadline <= current:
                continue
            density = excess_work(pending_alg, pending_opt, current, deadline) / (deadline - current)
            if best_t is None or density > best + tol.margin(density, best):
                best, best_t = density, deadline
            elif tol.close(density, best):
                best, best_t = max(best, density), deadline
        times.append(best_t)
        densities.append(best)
        alg_work.append(pending_alg.work_between(current, best_t))
        opt_work.append(pending_opt.work_between(current, best_t))
        current = best_t

    return CriticalPartition(
        times=tuple(times),
        densities=tuple(densities),
        clamped=tuple(max(s_star, g) for g in densities),
        alg_work=tuple(alg_work),
        opt_work=tuple(opt_work),
    )


def potential(partition: CriticalPartition, beta: float, alpha: float, variant: str = SIGNED) -> float:
    """Return beta * sum of clamped_i^(alpha-1) times the work difference of interval i.

    Args:
        partition: Critical partition.
        beta: Potential weight.
        alpha: Power exponent.
        variant: "signed" uses w_a - w_o, "clamped" uses max{0, w_a - w_o}.
    """
    if variant == SIGNED:
        differences = [a - o for a, o in zip(partition.alg_work, partition.opt_work)]
    elif variant == CLAMPED:
        differences = list(partition.excess)
    else:
        raise UsageError(f"Unknown potential variant: {variant!r}")
    return beta * sum(g ** (alpha - 1.0) * diff for g, diff in zip(partition.clamped, differences))


def same_instance(left, right) -> bool:
    """Return True when two instances hold the same jobs."""
    return left is not None and right is not None and left.jobs == right.jobs


def as_schedule(run: Union[Trace, Schedule]) -> Schedule:
    return run.to_schedule() if isinstance(run, Trace) else run


class AmortizedChecker:
    """Checks E_a(t) + phi(t) <= c * E_o(t) + tau along a pair of runs.

    Energies are working energies. tau is the energy of one brute-force slot
    at the highest speed either run uses. The potential must also vanish once
    every deadline has passed and may not jump when a job arrives.
    """

    def __init__(self, params: PowerParams, consts: AnalysisConstants,
                 grid_dt: float = 0.0, tol: Tolerance = Tolerance(abs_tol=1e-6, rel_tol=1e-6)):
        """Initialize the checker.

        Args:
            params: Power parameters.
            consts: beta and c.
            grid_dt: Slot length of the offline schedule (0 for exact schedules).
            tol: Tolerance of every comparison.
        """
        self.params = params
        self.consts = consts
        self.grid_dt = grid_dt
        self.tol = tol
        self.logger = logging.getLogger(self.__class__.__name__)

    def _phi(self, alg: Schedule, opt: Schedule, t: float, exclude=()) -> Tuple[float, float]:
        """Return the signed and clamped potential at t, ignoring the excluded jobs."""
        pending_alg = alg.pending_at(t).without(exclude)
        pending_opt = opt.pending_at(t).without(exclude)
        partition = critical_partition(pending_alg, pending_opt, t, self.params.critical_speed)
        return (
            potential(partition, self.consts.beta, self.params.alpha, SIGNED),
            potential(partition, self.consts.beta, self.params.alpha, CLAMPED),
        )

    def check(self, trace_alg: Trace, trace_opt: Union[Trace, Schedule], samples: int = 200) -> ViolationReport:
        """Evaluate the invariant at evenly spaced sample times.

        Raises:
            UsageError: If the runs are on different instances.
        """
        alg = as_schedule(trace_alg)
        opt = as_schedule(trace_opt)
        if not same_instance(alg.instance, opt.instance):
            raise UsageError("Online and offline runs are on different instances")

        instance = alg.instance
        end = max(alg.horizon, opt.horizon, instance.horizon)
        s_max = max(alg.max_speed, opt.max_speed)
        tau = (s_max ** self.params.alpha + self.params.g) * self.grid_dt
        policy = trace_alg.policy if isinstance(trace_alg, Trace) else "schedule"
        report = ViolationReport(instance=instance.name, policy=policy, slack=tau)

        for t in np.linspace(0.0, end, max(samples, 2)):
            t = float(t)
            phi, phi_clamped = self._phi(alg, opt, t)
            e_alg = schedule_energy(alg, self.params, until=t).working
            e_opt = schedule_energy(opt, self.params, until=t).working
            report.samples.append(PotentialSample(t, phi, phi_clamped, e_alg, e_opt))
            report.max_divergence = max(report.max_divergence, abs(phi - phi_clamped))

            lhs, rhs = e_alg + phi, self.consts.c * e_opt + tau
            if not self.tol.leq(lhs, rhs):
                report.violations.append(Violation(
                    "amortized", t, lhs, rhs, f"phi={phi:.6g} E_a={e_alg:.6g} E_o={e_opt:.6g}"
                ))

        final_phi, _ = self._phi(alg, opt, end)
        if not self.tol.is_zero(final_phi):
            report.violations.append(Violation("phi_end", end, final_phi, 0.0, "potential must vanish at the end"))

        for release in sorted({job.release for job in instance}):
            arriving = [job.id for job in instance if job.release == release]
            before, _ = self._phi(alg, opt, release, exclude=arriving)
            after, _ = self._phi(alg, opt, release)
            if not self.tol.close(before, after):
                report.violations.append(Violation(
                    "phi_arrival", release, abs(after - before), 0.0, f"phi {before:.9g} -> {after:.9g}"
                ))

        if report.max_divergence > self.tol.abs_tol:
            self.logger.warning(
                f"{report.instance}/{report.policy}: signed and clamped potentials differ by up to "
                f"{report.max_divergence:.6g}"
            )
        self.logger.info(
            f"Amortized check {report.instance}/{report.policy}: {len(report.samples)} samples, "
            f"{len(report.violations)} violations"
        )
        return report


def amortized_check(
    trace_alg: Trace,
    trace_opt: Union[Trace, Schedule],
    params: PowerParams,
    consts: AnalysisConstants,
    samples: int = 200,
    grid_dt: float = 0.0,
) -> ViolationReport:
    """Check the integrated amortized invariant of an online run against OPT."""
    return AmortizedChecker(params, consts, grid_dt=grid_dt).check(trace_alg, trace_opt, samples)
