"""Time-stepped simulation of the online policies."""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from scipy.optimize import brentq

from speed_scaling_analyzer.exceptions import DeadlineMissError
from speed_scaling_analyzer.models.job import Instance
from speed_scaling_analyzer.models.pending import PendingWork
from speed_scaling_analyzer.models.policy import Policy, PolicyKind, ProcessorState
from speed_scaling_analyzer.models.power import PowerParams, ProcessorMode
from speed_scaling_analyzer.models.schedule import EnergyBreakdown, Segment
from speed_scaling_analyzer.models.trace import EventKind, SimConfig, Trace, TraceEvent, TraceSample
from speed_scaling_analyzer.schedulers.online import max_density, policy_speed, sqoa_decision
from speed_scaling_analyzer.utils.tolerance import Tolerance


class Simulator:
    """Runs one policy on one instance.

    Time advances by the smallest of the maximum step h and the distance to
    the next event: an arrival, completion of the job in service, the idle
    timeout t' + L/g, the instant rho reaches s* while asleep or idle, or the
    instant rho falls below s* while working (located by root finding). Speed
    is held constant within a step and the earliest-deadline job is served.
    """

    def __init__(self, instance: Instance, policy: Policy, params: PowerParams,
                 sim: Optional[SimConfig] = None):
        """Initialize a run.

        Args:
            instance: Jobs to schedule.
            policy: Online policy.
            params: Power parameters.
            sim: Step and event tolerance; defaults to SimConfig().
        """
        self.instance = instance
        self.policy = policy
        self.params = params
        self.sim = sim or SimConfig()
        self.eps = self.sim.event_tolerance
        self.tol = Tolerance(abs_tol=self.eps, rel_tol=self.eps)
        self.work_tol = self.eps * max(1.0, max((job.volume for job in instance), default=1.0))
        self.logger = logging.getLogger(self.__class__.__name__)

        self.t = 0.0
        self.mode = ProcessorMode.SLEEP
        self.last_working = 0.0
        self.pending = PendingWork()
        self.arrivals = list(instance.jobs)
        self.next_arrival = 0

        self.e_working = 0.0
        self.e_idle = 0.0
        self.e_wakeup = 0.0
        self.e_dynamic = 0.0
        self.wakes = 0

        self.samples: List[TraceSample] = []
        self.events: List[TraceEvent] = []
        self.segments: List[Segment] = []

    def _event(self, kind: EventKind, detail: str = "") -> None:
        self.events.append(TraceEvent(self.t, kind, detail))
        self.logger.debug(f"{self.policy.name} t={self.t:.9g} {kind.value} {detail}")

    def _release(self) -> None:
        while self.next_arrival < len(self.arrivals) and self.arrivals[self.next_arrival].release <= self.t + self.eps:
            job = self.arrivals[self.next_arrival]
            self.pending.add(job)
            self.next_arrival += 1
            self._event(EventKind.ARRIVAL, job.id)

    def _check_deadlines(self) -> None:
        for entry in self.pending.overdue(self.t, 10 * self.eps):
            raise DeadlineMissError(entry.id, entry.deadline, entry.remaining, self.t, self.policy.name)

    def _transition(self, mode: ProcessorMode) -> None:
        """Move to a new mode, logging the event and charging wake-ups."""
        if mode is self.mode:
            return
        if self.mode is ProcessorMode.SLEEP:
            self.wakes += 1
            self.e_wakeup += self.params.L
            self._event(EventKind.WAKE)
        if mode is ProcessorMode.IDLE:
            self._event(EventKind.TO_IDLE)
        elif mode is ProcessorMode.SLEEP:
            self._event(EventKind.TO_SLEEP)
        if self.mode is ProcessorMode.WORKING:
            self.last_working = self.t
        self.mode = mode

    def _decide(self, rho: float) -> float:
        """Settle the mode at the current time and return the speed."""
        if self.policy.manages_sleep:
            # Working to idle to sleep may all happen at one instant.
            for _ in range(3):
                state = ProcessorState(self.mode, self.last_working)
                mode, speed = sqoa_decision(state, rho, self.params, self.t, q=self.policy.q, tol=self.tol)
                if mode is self.mode:
                    return speed
                self._transition(mode)
            return speed

        if self.pending.is_empty:
            if self.mode is ProcessorMode.WORKING:
                self._transition(ProcessorMode.IDLE)
            return 0.0
        self._transition(ProcessorMode.WORKING)
        return policy_speed(self.policy, self.pending, self.t, self.params, active=self.arrivals[:self.next_arrival])

    def _rho_after(self, prefixes: Sequence[Tuple[float, float]], speed: float, tau: float) -> float:
        """Highest prefix density after serving the EDF job at speed for tau."""
        t = self.t + tau
        return max(
            (work - speed * tau) / (deadline - t)
            for deadline, work in prefixes if deadline > t
        )

    def _step_length(self, speed: float, rho: float) -> float:
        """Distance to the next event, capped at the maximum step."""
        s_star = self.params.critical_speed
        candidates = [self.sim.max_step]
        if self.next_arrival < len(self.arrivals):
            candidates.append(self.arrivals[self.next_arrival].release - self.t)

        if self.mode is ProcessorMode.WORKING:
            entry = self.pending.edf_job()
            candidates.append(entry.remaining / speed)
        elif not self.pending.is_empty and self.policy.manages_sleep:
            wake_at = min(d - w / s_star for d, w in self.pending.prefix_work(self.t))
            if wake_at > self.t:
                candidates.append(wake_at - self.t + self.eps)

        if self.mode is ProcessorMode.IDLE and self.policy.manages_sleep:
            timeout = self.last_working + self.params.idle_timeout - self.t
            if timeout > 0:
                candidates.append(timeout)

        if self.pending.is_empty:
            candidates.append(self.instance.horizon - self.t)

        if self.policy.kind is PolicyKind.AVR:
            ends = [job.deadline - self.t for job in self.arrivals[:self.next_arrival] if job.deadline > self.t]
            candidates.extend(ends)

        dt = max(min(c for c in candidates if c > 0), self.eps)

        if self.mode is ProcessorMode.WORKING and self.policy.manages_sleep and rho >= s_star:
            dt = self._locate_slowdown(speed, dt, s_star)
        return dt

    def _locate_slowdown(self, speed: float, dt: float, s_star: float) -> float:
        """Shorten the step so it ends just after rho drops below s*."""
        prefixes = self.pending.prefix_work(self.t)
        # Near the end of the step the last prefix may close; stop short of it.
        horizon = min(dt, prefixes[-1][0] - self.t - self.eps)
        if horizon <= self.eps:
            return dt
        if self.tol.geq(self._rho_after(prefixes, speed, horizon), s_star):
            return dt
        root = brentq(lambda tau: self._rho_after(prefixes, speed, tau) - s_star, 0.0, horizon,
                      xtol=self.eps / 10)
        return min(dt, root + self.eps)

    def _advance(self, dt: float, speed: float, rho: float) -> None:
        """Integrate energy and work over one step."""
        entry = self.pending.edf_job() if self.mode is ProcessorMode.WORKING else None
        self.samples.append(TraceSample(
            t=self.t, mode=self.mode, speed=speed, rho=rho,
            job=entry.id if entry else None,
            e_working=self.e_working, e_idle=self.e_idle, e_wakeup=self.e_wakeup,
        ))

        alpha, g = self.params.alpha, self.params.g
        end = self.t + dt
        if self.next_arrival < len(self.arrivals) and abs(self.arrivals[self.next_arrival].release - end) <= self.eps:
            end = self.arrivals[self.next_arrival].release
        step = end - self.t

        if entry is not None:
            self.e_working += (speed ** alpha + g) * step
            self.e_dynamic += speed ** alpha * step
            amount = min(speed * step, entry.remaining)
            if entry.remaining - speed * step <= self.work_tol:
                amount = entry.remaining
            finished = self.pending.deliver(entry.id, amount, self.work_tol)
            self._add_segment(Segment(self.t, end, speed, entry.id, ProcessorMode.WORKING))
            self.t = end
            self.last_working = self.t
            if finished:
                self._event(EventKind.COMPLETION, entry.id)
            return

        if self.mode is ProcessorMode.IDLE:
            self.e_idle += g * step
        self._add_segment(Segment(self.t, end, 0.0, None, self.mode))
        self.t = end

    def _add_segment(self, segment: Segment) -> None:
        if self.segments:
            last = self.segments[-1]
            if last.state is segment.state and last.job == segment.job and last.speed == segment.speed:
                self.segments[-1] = Segment(last.start, segment.end, last.speed, last.job, last.state)
                return
        self.segments.append(segment)

    def _finished(self) -> bool:
        """Stop at the horizon once no work is pending or still to arrive."""
        if not self.pending.is_empty or self.next_arrival < len(self.arrivals):
            return False
        return self.t >= self.instance.horizon - self.eps

    def run(self) -> Trace:
        """Simulate until the horizon with no work left.

        Raises:
            DeadlineMissError: If a job is still unfinished after its deadline.
        """
        self.logger.debug(f"Simulating {self.policy.name} on {self.instance.name} ({len(self.instance)} jobs)")
        while True:
            self._release()
            self._check_deadlines()
            rho, _ = max_density(self.pending, self.t, self.tol)
            speed = self._decide(rho)
            if self._finished():
                break
            if self.mode is ProcessorMode.WORKING and speed <= 0:
                speed = 0.0
                self._transition(ProcessorMode.IDLE)
            dt = self._step_length(speed, rho)
            self._advance(dt, speed, rho)

        self.samples.append(TraceSample(
            t=self.t, mode=self.mode, speed=0.0, rho=0.0, job=None,
            e_working=self.e_working, e_idle=self.e_idle, e_wakeup=self.e_wakeup,
        ))
        energy = EnergyBreakdown(
            working=self.e_working,
            idle=self.e_idle,
            wakeup=self.e_wakeup,
            dynamic_only=self.e_dynamic,
            wake_count=self.wakes,
        )
        self.logger.debug(
            f"{self.policy.name} on {self.instance.name}: total {energy.total:.6g} "
            f"(working {energy.working:.6g}, idle {energy.idle:.6g}, wakeup {energy.wakeup:.6g}) "
            f"until t={self.t:.6g}"
        )
        return Trace(
            instance=self.instance,
            policy=self.policy.name,
            params=self.params,
            samples=tuple(self.samples),
            events=tuple(self.events),
            segments=tuple(self.segments),
            energy=energy,
            end_time=self.t,
            step=self.sim.max_step,
        )


def simulate(instance: Instance, policy: Policy, params: PowerParams, sim: Optional[SimConfig] = None) -> Trace:
    """Run a policy on an instance and return its trace."""
    return Simulator(instance, policy, params, sim).run()


@dataclass(frozen=True)
class ConvergenceResult:
    """Total energy at successively halved steps.

    Attributes:
        steps: Step sizes h, h/2, h/4, ...
        energies: Total energy at each step.
        ratios: (E_k - E_{k+1}) / (E_{k+1} - E_{k+2}); about 2 for first-order convergence.
    """

    steps: Tuple[float, ...]
    energies: Tuple[float, ...]
    ratios: Tuple[float, ...]

    @property
    def differences(self) -> Tuple[float, ...]:
        return tuple(abs(a - b) for a, b in zip(self.energies, self.energies[1:]))


def convergence_study(instance: Instance, policy: Policy, params: PowerParams,
                      step: float = 1e-2, levels: int = 3,
                      event_tolerance: float = 1e-9) -> ConvergenceResult:
    """Simulate at step, step/2, ... and measure how total energy converges."""
    steps = tuple(step / 2 ** k for k in range(levels))
    energies = tuple(
        simulate(instance, policy, params, SimConfig(max_step=h, event_tolerance=event_tolerance)).total_energy
        for h in steps
    )
    diffs = [a - b for a, b in zip(energies, energies[1:])]
    ratios = tuple(
        a / b if b != 0 else math.inf
        for a, b in zip(diffs, diffs[1:])
    )
    return ConvergenceResult(steps=steps, energies=energies, ratios=ratios)
