"""Grid-optimal schedules for the sleep-state model by dynamic programming."""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from speed_scaling_analyzer.exceptions import InfeasibleGridError, StateLimitError
from speed_scaling_analyzer.models.job import Instance, Job
from speed_scaling_analyzer.models.power import PowerParams, ProcessorMode
from speed_scaling_analyzer.models.schedule import BruteGrid, EnergyBreakdown, Schedule, Segment
from speed_scaling_analyzer.schedulers.offline import GRID_EPS, MIN_PIECE, schedule_energy, slot_window

# DP state: remaining work units per job (instance order) and whether asleep.
State = Tuple[Tuple[int, ...], bool]


@dataclass(frozen=True)
class _Action:
    """What the processor does during one slot."""

    mode: ProcessorMode
    speed: float = 0.0
    job: Optional[int] = None


@dataclass(frozen=True)
class _GridJob:
    """A job snapped to the slot grid."""

    job: Job
    units: int
    first_slot: int
    end_slot: int


class BruteForceSolver:
    """Exact dynamic program over a time and speed grid.

    Every slot sleeps, idles, or runs the earliest-deadline pending job at one
    speed of the grid. Work is counted in units of one slot at the lowest
    positive speed; a slot at speed s credits floor(s / s_min) units. A job may
    only run in slots lying inside its window.
    """

    def __init__(self, params: PowerParams, grid: BruteGrid):
        """Initialize the solver.

        Args:
            params: Power parameters.
            grid: Slot length, speed set and state cap.
        """
        self.params = params
        self.grid = grid
        self.logger = logging.getLogger(self.__class__.__name__)

    def _snap(self, instance: Instance) -> List[_GridJob]:
        dt, unit = self.grid.dt, self.grid.work_unit
        jobs = []
        for job in instance:
            first_slot, end_slot = slot_window(job, dt)
            grid_job = _GridJob(
                job=job,
                units=max(1, math.ceil(job.volume / unit - GRID_EPS)),
                first_slot=first_slot,
                end_slot=end_slot,
            )
            if grid_job.end_slot <= grid_job.first_slot:
                raise InfeasibleGridError(
                    f"Job {job.id} window [{job.release:g}, {job.deadline:g}] contains no full slot of {dt:g}"
                )
            jobs.append(grid_job)
        return jobs

    def _credits(self, speed: float) -> int:
        return math.floor(speed / self.grid.min_speed + GRID_EPS)

    def _can_finish(self, remaining: Tuple[int, ...], jobs: List[_GridJob], next_slot: int) -> bool:
        """Cheap necessary condition: EDF at top speed meets every slot deadline."""
        top = self._credits(self.grid.speeds[-1])
        needed = 0
        for index in sorted(range(len(jobs)), key=lambda i: jobs[i].end_slot):
            needed += remaining[index]
            if needed > top * max(0, jobs[index].end_slot - next_slot):
                return False
        return True

    def _edf_job(self, remaining: Tuple[int, ...], jobs: List[_GridJob], slot: int) -> Optional[int]:
        candidates = [
            i for i, job in enumerate(jobs)
            if remaining[i] > 0 and job.first_slot <= slot < job.end_slot
        ]
        if not candidates:
            return None
        return min(candidates, key=lambda i: (jobs[i].job.deadline, jobs[i].job.id))

    def solve(self, instance: Instance) -> Tuple[Schedule, EnergyBreakdown]:
        """Return a minimum-energy grid schedule and its energy.

        Raises:
            InfeasibleGridError: If no grid schedule meets every deadline.
            StateLimitError: If a slot holds more states than the grid allows.
        """
        if not instance.jobs:
            return Schedule(segments=(), horizon=0.0, instance=instance), EnergyBreakdown()

        jobs = self._snap(instance)
        dt, alpha, g, wake = self.grid.dt, self.params.alpha, self.params.g, self.params.L
        slots = max(job.end_slot for job in jobs)
        idle_cost = g * dt

        layer: Dict[State, float] = {(tuple(job.units for job in jobs), True): 0.0}
        parents: List[Dict[State, Tuple[State, _Action]]] = []
        peak = 1

        for slot in range(slots):
            next_layer: Dict[State, float] = {}
            back: Dict[State, Tuple[State, _Action]] = {}

            def relax(state: State, cost: float, parent: State, action: _Action) -> None:
                if cost < next_layer.get(state, math.inf):
                    next_layer[state] = cost
                    back[state] = (parent, action)

            for state, cost in layer.items():
                remaining, asleep = state
                wake_cost = wake if asleep else 0.0
                relax((remaining, True), cost, state, _Action(ProcessorMode.SLEEP))
                relax((remaining, False), cost + wake_cost + idle_cost, state, _Action(ProcessorMode.IDLE))

                index = self._edf_job(remaining, jobs, slot)
                if index is None:
                    continue
                for speed in self.grid.speeds:
                    left = list(remaining)
                    left[index] = max(0, left[index] - self._credits(speed))
                    step_cost = (speed ** alpha + g) * dt
                    relax((tuple(left), False), cost + wake_cost + step_cost, state,
                          _Action(ProcessorMode.WORKING, speed, index))

            # Drop states that missed a deadline or cannot catch up.
            layer = {
                state: cost for state, cost in next_layer.items()
                if all(state[0][i] == 0 for i, job in enumerate(jobs) if job.end_slot <= slot + 1)
                and self._can_finish(state[0], jobs, slot + 1)
            }
            if not layer:
                raise InfeasibleGridError(
                    f"No grid schedule meets all deadlines (dt={dt:g}, speeds={self.grid.speeds})"
                )
            if len(layer) > self.grid.max_states:
                raise StateLimitError(
                    f"Slot {slot} holds {len(layer)} states, above the cap of {self.grid.max_states}"
                )
            peak = max(peak, len(layer))
            parents.append(back)

        final = min(layer, key=layer.get)
        self.logger.info(
            f"Brute force: {len(jobs)} jobs, {slots} slots, peak {peak} states, grid energy {layer[final]:.6g}"
        )

        actions: List[_Action] = []
        state = final
        for back in reversed(parents):
            state, action = back[state]
            actions.append(action)
        actions.reverse()

        schedule = self._build_schedule(instance, jobs, actions)
        return schedule, schedule_energy(schedule, self.params)

    def _build_schedule(self, instance: Instance, jobs: List[_GridJob], actions: List[_Action]) -> Schedule:
        """Turn slot actions into segments, delivering no more than each job needs."""
        dt = self.grid.dt
        left = {job.job.id: job.job.volume for job in jobs}
        pieces: List[Tuple[float, float, float, Optional[str], ProcessorMode]] = []

        for slot, action in enumerate(actions):
            start, end = slot * dt, (slot + 1) * dt
            if action.mode is not ProcessorMode.WORKING:
                pieces.append((start, end, 0.0, None, action.mode))
                continue
            job_id = jobs[action.job].job.id
            work = min(action.speed * dt, left[job_id])
            if work > MIN_PIECE * action.speed:
                busy_end = start + work / action.speed
                if end - busy_end <= MIN_PIECE:
                    busy_end = end
                left[job_id] -= work
                pieces.append((start, busy_end, action.speed, job_id, ProcessorMode.WORKING))
                start = busy_end
            if end - start > MIN_PIECE:
                pieces.append((start, end, 0.0, None, ProcessorMode.IDLE))

        segments: List[Segment] = []
        for start, end, speed, job_id, mode in pieces:
            if segments:
                last = segments[-1]
                if (last.state is mode and last.job == job_id and last.speed == speed
                        and abs(last.end - start) <= MIN_PIECE):
                    segments[-1] = Segment(last.start, end, speed, job_id, mode)
                    continue
            segments.append(Segment(start, end, speed, job_id, mode))

        horizon = max(instance.horizon, segments[-1].end if segments else 0.0)
        return Schedule(segments=tuple(segments), horizon=horizon, instance=instance)


def brute_force_opt(instance: Instance, params: PowerParams, grid: BruteGrid) -> Tuple[Schedule, EnergyBreakdown]:
    """Return the grid-optimal sleep-model schedule and its recomputed energy.

    The first wake from the initial sleep state is charged L.
    """
    return BruteForceSolver(params, grid).solve(instance)
