"""Offline schedule data models: segments, schedules and energy breakdowns."""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .job import Instance
from .pending import PendingWork
from .power import ProcessorMode


@dataclass(frozen=True)
class Segment:
    """A piece of constant processor behaviour.

    Attributes:
        start: Segment start time.
        end: Segment end time (> start).
        speed: Processing speed; positive exactly when working.
        job: Id of the job served, or None when not working.
        state: Processor mode during the segment.
    """

    start: float
    end: float
    speed: float
    job: Optional[str]
    state: ProcessorMode

    def __post_init__(self):
        """Validate segment data."""
        if not self.start < self.end:
            raise ValueError(f"Segment start {self.start} must be before end {self.end}")
        if (self.speed > 0) != (self.state is ProcessorMode.WORKING):
            raise ValueError(f"Speed {self.speed} inconsistent with state {self.state.value}")
        if self.state is ProcessorMode.WORKING and self.job is None:
            raise ValueError("Working segment needs a job")
        if self.state is not ProcessorMode.WORKING and self.job is not None:
            raise ValueError(f"Non-working segment cannot serve job {self.job}")

    @property
    def duration(self) -> float:
        return self.end - self.start

    @property
    def work(self) -> float:
        return self.speed * self.duration

    def work_before(self, t: float) -> float:
        """Work delivered by this segment strictly before time t."""
        if t <= self.start:
            return 0.0
        return self.speed * (min(t, self.end) - self.start)


@dataclass(frozen=True)
class EnergyBreakdown:
    """Energy split by processor activity.

    Attributes:
        working: Energy while working (s^alpha + g, or s^alpha in dynamic-only mode).
        idle: Energy while idle (g per unit time).
        wakeup: L per sleep to active transition.
        dynamic_only: Integral of s^alpha over working time.
        wake_count: Number of sleep to active transitions.
    """

    working: float = 0.0
    idle: float = 0.0
    wakeup: float = 0.0
    dynamic_only: float = 0.0
    wake_count: int = 0

    @property
    def total(self) -> float:
        return self.working + self.idle + self.wakeup

    def as_dict(self) -> Dict[str, float]:
        return {
            "working": self.working,
            "idle": self.idle,
            "wakeup": self.wakeup,
            "dynamic_only": self.dynamic_only,
            "total": self.total,
            "wake_count": self.wake_count,
        }


@dataclass(frozen=True)
class Schedule:
    """A piecewise-constant plan covering [0, horizon].

    Attributes:
        segments: Ordered, non-overlapping segments.
        horizon: End of the planning window.
        instance: The instance the schedule serves (not part of equality).
    """

    segments: Tuple[Segment, ...]
    horizon: float
    instance: Optional[Instance] = field(default=None, compare=False)

    def __post_init__(self):
        """Check ordering of segments."""
        for before, after in zip(self.segments, self.segments[1:]):
            if after.start < before.end - 1e-12:
                raise ValueError(f"Overlapping segments at t={after.start}")

    @property
    def working_segments(self) -> List[Segment]:
        return [seg for seg in self.segments if seg.state is ProcessorMode.WORKING]

    @property
    def max_speed(self) -> float:
        return max((seg.speed for seg in self.segments), default=0.0)

    def work_by_job(self) -> Dict[str, float]:
        """Return total work delivered per job id."""
        work: Dict[str, float] = {}
        for seg in self.working_segments:
            work[seg.job] = work.get(seg.job, 0.0) + seg.work
        return work

    def segment_at(self, t: float) -> Optional[Segment]:
        """Return the segment with start <= t < end, if any."""
        for seg in self.segments:
            if seg.start <= t < seg.end:
                return seg
        return None

    def speed_at(self, t: float) -> float:
        seg = self.segment_at(t)
        return seg.speed if seg else 0.0

    def delivered_before(self, t: float) -> Dict[str, float]:
        """Return work delivered per job in [0, t)."""
        delivered: Dict[str, float] = {}
        for seg in self.working_segments:
            if seg.start >= t:
                break
            delivered[seg.job] = delivered.get(seg.job, 0.0) + seg.work_before(t)
        return delivered

    def pending_at(self, t: float, work_tol: float = 1e-9) -> PendingWork:
        """Replay the schedule: unfinished work of jobs released by t.

        Raises:
            ValueError: If the schedule carries no instance.
        """
        if self.instance is None:
            raise ValueError("Schedule has no instance to replay against")
        delivered = self.delivered_before(t)
        jobs = {job.id: job for job in self.instance.released_by(t)}
        remaining = {
            job_id: job.volume - delivered.get(job_id, 0.0)
            for job_id, job in jobs.items()
        }
        largest = max((job.volume for job in jobs.values()), default=1.0)
        return PendingWork.from_remaining(jobs, remaining, work_tol=work_tol * max(1.0, largest))

    def feasibility_errors(self, tol: float = 1e-6) -> List[str]:
        """List violations of the feasibility invariant.

        Every job must receive its volume (within tol, relative to the volume),
        and all of its work must lie inside [release, deadline].
        """
        if self.instance is None:
            return ["schedule has no instance"]
        errors = []
        jobs = self.instance.by_id()
        for seg in self.working_segments:
            job = jobs.get(seg.job)
            if job is None:
                errors.append(f"segment [{seg.start:g}, {seg.end:g}) serves unknown job {seg.job}")
                continue
            if seg.start < job.release - tol or seg.end > job.deadline + tol:
                errors.append(
                    f"job {job.id} served in [{seg.start:g}, {seg.end:g}) outside "
                    f"[{job.release:g}, {job.deadline:g}]"
                )
        work = self.work_by_job()
        for job in self.instance:
            got = work.get(job.id, 0.0)
            if abs(got - job.volume) > tol * max(1.0, job.volume):
                errors.append(f"job {job.id} received {got:.9g} of {job.volume:.9g}")
        return errors

    def is_feasible(self, tol: float = 1e-6) -> bool:
        return not self.feasibility_errors(tol)

    def to_rows(self) -> List[Dict[str, object]]:
        """Return CSV-ready rows (start, end, state, speed, job_id)."""
        return [
            {
                "start": seg.start,
                "end": seg.end,
                "state": seg.state.value,
                "speed": seg.speed,
                "job_id": seg.job or "",
            }
            for seg in self.segments
        ]


@dataclass(frozen=True)
class BruteGrid:
    """Discretization of the brute-force optimum.

    Attributes:
        dt: Slot length.
        speeds: Allowed speeds; 0 is implied, positive entries are working speeds.
        max_states: Upper bound on dynamic-programming states per slot.
    """

    dt: float
    speeds: Tuple[float, ...]
    max_states: int = 200_000

    def __post_init__(self):
        """Validate the grid and normalise the speed set."""
        if not self.dt > 0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if any(s < 0 for s in self.speeds):
            raise ValueError(f"Speeds must be >= 0, got {self.speeds}")
        positive = tuple(sorted({float(s) for s in self.speeds if s > 0}))
        if not positive:
            raise ValueError("Speed grid needs at least one positive speed")
        object.__setattr__(self, "speeds", positive)

    @property
    def min_speed(self) -> float:
        return self.speeds[0]

    @property
    def work_unit(self) -> float:
        """Work quantum: one slot at the lowest positive speed."""
        return self.dt * self.speeds[0]
