"""Structural checks of online runs against an offline optimum."""

import logging
import math
from typing import List, Union

import numpy as np

from speed_scaling_analyzer.analyzers.potential import as_schedule, critical_partition, same_instance
from speed_scaling_analyzer.exceptions import UsageError
from speed_scaling_analyzer.models.policy import Policy, PolicyKind
from speed_scaling_analyzer.models.power import PowerParams, ProcessorMode
from speed_scaling_analyzer.models.reports import LemmaReport, Violation
from speed_scaling_analyzer.models.schedule import Schedule
from speed_scaling_analyzer.models.trace import EventKind, Trace, TraceSample
from speed_scaling_analyzer.schedulers.offline import GRID_EPS, snap_instance
from speed_scaling_analyzer.schedulers.online import max_density
from speed_scaling_analyzer.utils.tolerance import Tolerance

BUSY_AFTER_WAKE = "busy_after_wake"
OPT_SPEED_COVERS_DENSITY = "opt_speed_covers_density"
SPEED_LOWER = "speed_lower"
SPEED_UPPER = "speed_upper"


class LemmaChecker:
    """Checks the structural properties the competitive analysis relies on.

    - busy_after_wake: after every wake the processor keeps working until the
      deadline of the first job it serves (within one step).
    - opt_speed_covers_density: whenever OPT works, its speed is at least the
      highest density of its own pending work.
    - speed_lower / speed_upper: whenever rho >= s*, the online speed lies in
      [q g_0, q g_0 + q s_o], with s* in place of s_o while OPT is not working.

    A slot-grid OPT only sees windows snapped to its slots, holds one speed
    per slot and may lag the continuous schedule by one slot. With grid_dt
    set, OPT's pending work is replayed on the snapped windows, its density
    may lag by one slot, samples within one slot of a window edge are
    skipped, and the speed bounds tolerate one slot of work at OPT's top
    speed spread over the first critical interval.
    """

    def __init__(self, params: PowerParams, grid_tol: float = 0.0, grid_dt: float = 0.0,
                 tol: Tolerance = Tolerance(abs_tol=1e-6, rel_tol=1e-6)):
        """Initialize the checker.

        Args:
            params: Power parameters.
            grid_tol: Extra speed slack for a discretized OPT.
            grid_dt: Slot length of a discretized OPT (0 for a continuous one).
            tol: Tolerance of every comparison.
        """
        self.params = params
        self.grid_tol = grid_tol
        self.grid_dt = grid_dt
        self.tol = tol
        self.logger = logging.getLogger(self.__class__.__name__)

    def check(self, trace: Trace, opt: Union[Trace, Schedule], samples: int = 200) -> LemmaReport:
        """Run every check.

        Raises:
            UsageError: If the runs are on different instances.
            InfeasibleGridError: If grid_dt leaves a window without a full slot.
        """
        opt_schedule = as_schedule(opt)
        if not same_instance(trace.instance, opt_schedule.instance):
            raise UsageError("Trace and offline schedule are on different instances")

        if self.grid_dt > 0:
            opt_schedule = Schedule(
                segments=opt_schedule.segments,
                horizon=opt_schedule.horizon,
                instance=snap_instance(opt_schedule.instance, self.grid_dt),
            )

        report = LemmaReport(instance=trace.instance.name, policy=trace.policy)
        self._busy_after_wake(trace, report)
        self._opt_speed_covers_density(opt_schedule, report)
        self._speed_bounds(trace, opt_schedule, report, samples)
        self.logger.info(
            f"Lemma checks {report.instance}/{report.policy}: {sum(report.checked.values())} evaluations, "
            f"{len(report.violations)} violations"
        )
        return report

    def _busy_after_wake(self, trace: Trace, report: LemmaReport) -> None:
        jobs = trace.instance.by_id()
        idles = [event.t for event in trace.events_of(EventKind.TO_IDLE)]
        for wake in trace.events_of(EventKind.WAKE):
            first = next(
                (seg for seg in trace.segments
                 if seg.state is ProcessorMode.WORKING and seg.end > wake.t),
                None,
            )
            if first is None:
                continue
            report.count(BUSY_AFTER_WAKE)
            deadline = jobs[first.job].deadline
            early = [t for t in idles if wake.t < t < deadline - trace.step]
            if early:
                report.violations.append(Violation(
                    BUSY_AFTER_WAKE, early[0], early[0], deadline,
                    f"woke at {wake.t:.9g}, served {first.job}, went idle before its deadline",
                ))

    def _opt_density(self, opt: Schedule, t: float) -> float:
        pending = opt.pending_at(t)
        if self.grid_dt <= 0:
            return max_density(pending, t)[0]
        return max(
            (work / (deadline - t + self.grid_dt) for deadline, work in pending.prefix_work(t)),
            default=0.0,
        )

    def _opt_speed_covers_density(self, opt: Schedule, report: LemmaReport) -> None:
        for seg in opt.working_segments:
            mid = 0.5 * (seg.start + seg.end)
            density = self._opt_density(opt, mid)
            report.count(OPT_SPEED_COVERS_DENSITY)
            if not self.tol.geq(seg.speed + self.grid_tol, density):
                report.violations.append(Violation(
                    OPT_SPEED_COVERS_DENSITY, mid, density, seg.speed,
                    f"OPT runs {seg.job} at {seg.speed:.6g} below its density {density:.6g}",
                ))

    def _near_window_edge(self, t: float, alg: Schedule, opt: Schedule) -> bool:
        """True within one slot after a release or before a deadline, on either instance."""
        dt = self.grid_dt
        snapped = opt.instance.by_id()
        for job in alg.instance:
            edge = snapped.get(job.id, job)
            if min(job.release, edge.release) <= t < max(job.release, edge.release) + dt:
                return True
            if min(job.deadline, edge.deadline) - dt < t <= max(job.deadline, edge.deadline):
                return True
        return False

    def _opt_slot_speed(self, opt: Schedule, t: float) -> float:
        speed = opt.speed_at(t)
        if self.grid_dt <= 0:
            return speed
        slot_start = math.floor(t / self.grid_dt + GRID_EPS) * self.grid_dt
        return max(speed, opt.speed_at(slot_start))

    def _samples(self, trace: Trace, samples: int) -> List[TraceSample]:
        s_star = self.params.critical_speed
        fast = [
            sample for sample in trace.samples
            if sample.mode is ProcessorMode.WORKING and sample.rho >= s_star
        ]
        if len(fast) <= samples:
            return fast
        picks = np.unique(np.linspace(0, len(fast) - 1, samples).round().astype(int))
        return [fast[i] for i in picks]

    def _speed_bounds(self, trace: Trace, opt: Schedule, report: LemmaReport, samples: int) -> None:
        q = Policy.create(PolicyKind.parse(trace.policy), self.params).q
        s_star = self.params.critical_speed
        alg = trace.to_schedule()
        top = max((seg.speed for seg in opt.working_segments), default=0.0)
        for sample in self._samples(trace, samples):
            t = sample.t
            if self.grid_dt > 0 and self._near_window_edge(t, alg, opt):
                continue
            partition = critical_partition(alg.pending_at(t), opt.pending_at(t), t, s_star)
            g0 = partition.g0
            s_o = self._opt_slot_speed(opt, t)
            lower = q * g0
            upper = q * g0 + q * (s_o if s_o > 0 else s_star)
            slack = q * self.grid_tol
            if self.grid_dt > 0 and len(partition.times) > 1:
                slack += q * top * self.grid_dt / (partition.times[1] - t)

            report.count(SPEED_LOWER)
            if not self.tol.leq(lower, sample.speed + slack):
                report.violations.append(Violation(
                    SPEED_LOWER, t, sample.speed, lower, f"g0={g0:.6g} rho={sample.rho:.6g}"
                ))
            report.count(SPEED_UPPER)
            if not self.tol.leq(sample.speed, upper + slack):
                report.violations.append(Violation(
                    SPEED_UPPER, t, sample.speed, upper, f"g0={g0:.6g} s_o={s_o:.6g} rho={sample.rho:.6g}"
                ))


def lemma_checks(trace: Trace, opt: Union[Trace, Schedule], params: PowerParams,
                 samples: int = 200, grid_tol: float = 0.0, grid_dt: float = 0.0) -> LemmaReport:
    """Check the structural lemmas of an online trace against OPT."""
    return LemmaChecker(params, grid_tol=grid_tol, grid_dt=grid_dt).check(trace, opt, samples)
