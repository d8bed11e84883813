"""Offline references: YDS, energy accounting and lower bounds on OPT."""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, Optional, Sequence, Tuple

from speed_scaling_analyzer.exceptions import InfeasibleGridError
from speed_scaling_analyzer.models.job import Instance, Job
from speed_scaling_analyzer.models.power import PowerParams, ProcessorMode
from speed_scaling_analyzer.models.schedule import EnergyBreakdown, Schedule, Segment
from speed_scaling_analyzer.utils.tolerance import DEFAULT_TOLERANCE, Tolerance

logger = logging.getLogger(__name__)

# Pieces shorter than this are dropped when building segments.
MIN_PIECE = 1e-12

# Slack used when snapping times and work to a slot grid.
GRID_EPS = 1e-9


class EnergyMode(str, Enum):
    """How a schedule's energy is accounted."""

    DYNAMIC_ONLY = "dynamic_only"
    FULL_SLEEP_MODEL = "full_sleep_model"


@dataclass(frozen=True)
class CriticalInterval:
    """One round of YDS: a maximum-density interval and the jobs fixed in it.

    Attributes:
        density: Speed the jobs run at.
        job_ids: Jobs scheduled in this round.
        pieces: Original-time pieces (start, end, job id) of the round.
    """

    density: float
    job_ids: Tuple[str, ...]
    pieces: Tuple[Tuple[float, float, str], ...]


@dataclass
class _LiveJob:
    """A job not yet scheduled by YDS, in compressed time."""

    job: Job
    release: float
    deadline: float

    @property
    def id(self) -> str:
        return self.job.id


def _densest_interval(live: Sequence[_LiveJob], tol: Tolerance) -> Tuple[float, float, float, List[_LiveJob]]:
    """Return (start, end, density, members) of a maximum-density interval.

    Ties go to the longer interval.
    """
    best: Optional[Tuple[float, float, float]] = None
    for start in sorted({job.release for job in live}):
        inside = sorted(
            (job for job in live if job.release >= start - tol.abs_tol),
            key=lambda job: job.deadline,
        )
        work = 0.0
        for index, job in enumerate(inside):
            work += job.job.volume
            if index + 1 < len(inside) and inside[index + 1].deadline == job.deadline:
                continue
            density = work / (job.deadline - start)
            if best is None or density > best[2] + tol.margin(density, best[2]):
                best = (start, job.deadline, density)
            elif tol.close(density, best[2]) and job.deadline - start > best[1] - best[0]:
                best = (start, job.deadline, density)

    start, end, density = best
    members = [
        job for job in live
        if job.release >= start - tol.abs_tol and job.deadline <= end + tol.abs_tol
    ]
    return start, end, density, members


def _edf_pieces(members: Sequence[_LiveJob], start: float, speed: float) -> List[Tuple[float, float, str]]:
    """Run EDF at constant speed from start; return compressed (a, b, job id) pieces."""
    remaining = {job.id: job.job.volume for job in members}
    by_id = {job.id: job for job in members}
    pieces = []
    x = start
    while remaining:
        available = [by_id[i] for i in remaining if by_id[i].release <= x + MIN_PIECE]
        upcoming = [by_id[i].release for i in remaining if by_id[i].release > x + MIN_PIECE]
        if not available:
            x = min(upcoming)
            continue
        current = min(available, key=lambda job: (job.deadline, job.id))
        finish = x + remaining[current.id] / speed
        stop = min([finish] + upcoming)
        pieces.append((x, stop, current.id))
        if stop >= finish:
            del remaining[current.id]
        else:
            remaining[current.id] -= speed * (stop - x)
        x = stop
    return pieces


def _to_original(free: Sequence[Tuple[float, float]], a: float, b: float) -> Iterator[Tuple[float, float]]:
    """Map the compressed range [a, b] onto the free original-time intervals."""
    offset = 0.0
    for lo, hi in free:
        length = hi - lo
        start = max(a, offset)
        end = min(b, offset + length)
        if end - start > MIN_PIECE:
            yield lo + (start - offset), lo + (end - offset)
        offset += length


def _cut(free: Sequence[Tuple[float, float]], a: float, b: float) -> List[Tuple[float, float]]:
    """Remove the compressed range [a, b] from the free intervals."""
    removed = list(_to_original(free, a, b))
    result = []
    for lo, hi in free:
        cursor = lo
        for r_lo, r_hi in removed:
            if r_hi <= lo or r_lo >= hi:
                continue
            if r_lo - cursor > MIN_PIECE:
                result.append((cursor, r_lo))
            cursor = max(cursor, r_hi)
        if hi - cursor > MIN_PIECE:
            result.append((cursor, hi))
    return result


def _compress(x: float, start: float, end: float) -> float:
    if x <= start:
        return x
    if x >= end:
        return x - (end - start)
    return start


def yds_rounds(instance: Instance, tol: Tolerance = DEFAULT_TOLERANCE) -> List[CriticalInterval]:
    """Run YDS and return its rounds in extraction order.

    Each round picks the interval of maximum density (work of jobs whose
    window lies inside it, over its length), runs those jobs under EDF at
    that density, then removes the interval by time compression.
    """
    live = [_LiveJob(job, job.release, job.deadline) for job in instance]
    free = [(0.0, instance.horizon)]
    rounds = []
    while live:
        start, end, density, members = _densest_interval(live, tol)
        pieces = []
        for a, b, job_id in _edf_pieces(members, start, density):
            for lo, hi in _to_original(free, a, b):
                pieces.append((lo, hi, job_id))
        rounds.append(CriticalInterval(
            density=density,
            job_ids=tuple(sorted(job.id for job in members)),
            pieces=tuple(pieces),
        ))
        logger.debug(f"YDS round: density {density:.6g} on [{start:.6g}, {end:.6g}] jobs {rounds[-1].job_ids}")

        free = _cut(free, start, end)
        member_ids = {job.id for job in members}
        live = [
            _LiveJob(job.job, _compress(job.release, start, end), _compress(job.deadline, start, end))
            for job in live if job.id not in member_ids
        ]
    return rounds


def _merge(pieces: List[Tuple[float, float, float, str]]) -> List[Tuple[float, float, float, str]]:
    """Merge touching pieces with the same job and speed."""
    merged: List[Tuple[float, float, float, str]] = []
    for piece in sorted(pieces):
        if merged:
            start, end, speed, job_id = merged[-1]
            if job_id == piece[3] and speed == piece[2] and abs(piece[0] - end) <= MIN_PIECE:
                merged[-1] = (start, piece[1], speed, job_id)
                continue
        merged.append(piece)
    return merged


def yds(instance: Instance, tol: Tolerance = DEFAULT_TOLERANCE) -> Schedule:
    """Return the YDS schedule, which minimises the integral of s(t)^alpha.

    Time not used by any round is marked idle, so the schedule covers
    [0, horizon]; use assign_gap_states for the sleep-state model.
    """
    if not instance.jobs:
        return Schedule(segments=(), horizon=0.0, instance=instance)

    pieces = [
        (start, end, interval.density, job_id)
        for interval in yds_rounds(instance, tol)
        for start, end, job_id in interval.pieces
    ]
    segments = []
    cursor = 0.0
    for start, end, speed, job_id in _merge(pieces):
        if start - cursor > MIN_PIECE:
            segments.append(Segment(cursor, start, 0.0, None, ProcessorMode.IDLE))
        segments.append(Segment(start, end, speed, job_id, ProcessorMode.WORKING))
        cursor = end
    if instance.horizon - cursor > MIN_PIECE:
        segments.append(Segment(cursor, instance.horizon, 0.0, None, ProcessorMode.IDLE))
    return Schedule(segments=tuple(segments), horizon=instance.horizon, instance=instance)


def schedule_energy(
    schedule: Schedule,
    params: PowerParams,
    mode: EnergyMode = EnergyMode.FULL_SLEEP_MODEL,
    until: Optional[float] = None,
) -> EnergyBreakdown:
    """Account the energy of a schedule.

    The processor starts asleep and time not covered by a segment counts as
    sleep. In the full sleep model working pays s^alpha + g, idle pays g and
    every sleep to active transition pays L. In dynamic-only mode only the
    integral of s^alpha over working time is charged.

    Args:
        schedule: Schedule to account.
        params: Power parameters.
        mode: EnergyMode or its value.
        until: Stop accounting at this time (None for the whole schedule).
    """
    mode = EnergyMode(mode)
    alpha, g = params.alpha, params.g
    dynamic = working = idle = 0.0
    wakes = 0
    previous = ProcessorMode.SLEEP
    previous_end = 0.0

    for seg in schedule.segments:
        if until is not None and seg.start >= until:
            break
        end = seg.end if until is None else min(seg.end, until)
        duration = end - seg.start
        if seg.start - previous_end > MIN_PIECE:
            previous = ProcessorMode.SLEEP
        if seg.state.is_active and previous is ProcessorMode.SLEEP:
            wakes += 1
        if seg.state is ProcessorMode.WORKING:
            dynamic += seg.speed ** alpha * duration
            working += (seg.speed ** alpha + g) * duration
        elif seg.state is ProcessorMode.IDLE:
            idle += g * duration
        previous = seg.state
        previous_end = seg.end

    if mode is EnergyMode.DYNAMIC_ONLY:
        return EnergyBreakdown(working=dynamic, dynamic_only=dynamic)
    return EnergyBreakdown(
        working=working,
        idle=idle,
        wakeup=params.L * wakes,
        dynamic_only=dynamic,
        wake_count=wakes,
    )


def assign_gap_states(schedule: Schedule, params: PowerParams) -> Schedule:
    """Mark the non-working gaps of a schedule idle or asleep.

    A gap between two busy periods stays idle when idling through it costs
    no more than waking up again (g * gap <= L) and sleeps otherwise; time
    before the first and after the last working segment sleeps.
    """
    working = schedule.working_segments
    segments: List[Segment] = []
    cursor = 0.0
    for index, seg in enumerate(working):
        gap = seg.start - cursor
        if gap > MIN_PIECE:
            if index > 0 and DEFAULT_TOLERANCE.leq(params.g * gap, params.L):
                state = ProcessorMode.IDLE
            else:
                state = ProcessorMode.SLEEP
            segments.append(Segment(cursor, seg.start, 0.0, None, state))
        segments.append(seg)
        cursor = seg.end
    if schedule.horizon - cursor > MIN_PIECE:
        segments.append(Segment(cursor, schedule.horizon, 0.0, None, ProcessorMode.SLEEP))
    return Schedule(segments=tuple(segments), horizon=schedule.horizon, instance=schedule.instance)


def opt_lower_bound(instance: Instance, params: PowerParams) -> float:
    """Return a lower bound on the total energy of any feasible schedule.

    The larger of the volume times the minimum energy per unit of work and
    the dynamic energy of YDS. Wake-up energy is not included.
    """
    if not instance.jobs:
        return 0.0
    per_work = instance.total_volume * params.min_energy_per_work
    dynamic = schedule_energy(yds(instance), params, EnergyMode.DYNAMIC_ONLY).total
    return max(per_work, dynamic)




def slot_window(job: Job, dt: float) -> Tuple[int, int]:
    """Return the first and one-past-last slot lying inside the job's window."""
    return math.ceil(job.release / dt - GRID_EPS), math.floor(job.deadline / dt + GRID_EPS)


def snap_instance(instance: Instance, dt: float) -> Instance:
    """Shrink every window to the slots of length dt it fully contains.

    Raises:
        InfeasibleGridError: If a window contains no full slot.
    """
    jobs = []
    for job in instance:
        first, end = slot_window(job, dt)
        if end <= first:
            raise InfeasibleGridError(
                f"Job {job.id} window [{job.release:g}, {job.deadline:g}] contains no full slot of {dt:g}"
            )
        jobs.append(Job(job.id, first * dt, end * dt, job.volume))
    return Instance(jobs=tuple(jobs), name=instance.name)


def min_slot_credits(instance: Instance, dt: float, unit: float) -> Optional[int]:
    """Smallest work credit per slot at which slot-by-slot EDF meets every deadline.

    Each slot serves one job and credits k units of the given work quantum,
    so a job needing u units occupies ceil(u / k) slots. Returns None when
    even one slot per job does not fit.
    """
    jobs = []
    for job in instance:
        first, end = slot_window(job, dt)
        jobs.append((first, end, max(1, math.ceil(job.volume / unit - GRID_EPS))))
    if not jobs:
        return None
    starts = sorted({first for first, _, _ in jobs})
    ends = sorted({end for _, end, _ in jobs})

    def fits(credit: int) -> bool:
        for a in starts:
            for b in ends:
                if b <= a:
                    continue
                slots = sum(-(-units // credit) for first, end, units in jobs if a <= first and end <= b)
                if slots > b - a:
                    return False
        return True

    lo, hi = 1, max(units for _, _, units in jobs)
    if not fits(hi):
        return None
    while lo < hi:
        mid = (lo + hi) // 2
        if fits(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def default_speed_grid(instance: Instance, params: PowerParams, dt: Optional[float] = None) -> Tuple[float, ...]:
    """Return the default brute-force speed set.

    Multiples of the critical speed, the YDS speeds and the job densities,
    plus 0. Given the slot length dt, the YDS speeds and densities of the
    snapped windows are added too, together with their round-ups to whole
    work credits and the lowest credit at which slot-by-slot EDF is feasible.
    """
    s_star = params.critical_speed
    speeds = {0.0, 0.5 * s_star, s_star, 1.5 * s_star, 2.0 * s_star, 3.0 * s_star}
    speeds.update(seg.speed for seg in yds(instance).working_segments)
    speeds.update(job.density for job in instance)

    if dt is not None and instance.jobs:
        try:
            snapped = snap_instance(instance, dt)
        except InfeasibleGridError as e:
            logger.debug(f"{instance.name}: no snapped speeds ({e})")
        else:
            snapped_speeds = {seg.speed for seg in yds(snapped).working_segments}
            snapped_speeds.update(job.density for job in snapped)
            speeds.update(snapped_speeds)
            s_min = min(s for s in speeds if s > 0)
            speeds.update(math.ceil(s / s_min - GRID_EPS) * s_min for s in snapped_speeds)
            credit = min_slot_credits(snapped, dt, dt * s_min)
            if credit is not None:
                speeds.add(credit * s_min)
    return tuple(sorted({round(s, 12) for s in speeds}))
