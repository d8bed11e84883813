"""Unit tests for YDS, energy accounting and the offline lower bound."""

import pytest

from speed_scaling_analyzer.exceptions import InfeasibleGridError
from speed_scaling_analyzer.models.power import PowerParams, ProcessorMode
from speed_scaling_analyzer.schedulers.offline import (
    EnergyMode,
    assign_gap_states,
    default_speed_grid,
    min_slot_credits,
    opt_lower_bound,
    schedule_energy,
    snap_instance,
    yds,
    yds_rounds,
)
from tests.utils.data_factory import InstanceFactory


def _working(schedule):
    return [(seg.start, seg.end, seg.speed, seg.job) for seg in schedule.working_segments]


@pytest.mark.unit
class TestYDS:
    """Test the YDS critical-interval algorithm."""

    def test_single_job_runs_at_density(self, single_job):
        schedule = yds(single_job)
        assert _working(schedule) == [(0.0, 4.0, 1.0, "J1")]

    def test_nested_jobs(self, two_jobs):
        rounds = yds_rounds(two_jobs)
        assert [r.density for r in rounds] == [pytest.approx(2.0), pytest.approx(1.0)]
        assert [r.job_ids for r in rounds] == [("A",), ("B",)]

        schedule = yds(two_jobs)
        assert _working(schedule) == [
            (0.0, pytest.approx(2.0), pytest.approx(2.0), "A"),
            (pytest.approx(2.0), 4.0, pytest.approx(1.0), "B"),
        ]
        assert schedule.is_feasible()

    def test_compression_splits_outer_job(self):
        instance = InstanceFactory.from_tuples([("A", 1.0, 3.0, 4.0), ("B", 0.0, 4.0, 2.0)])
        schedule = yds(instance)

        assert schedule.is_feasible()
        by_job = {}
        for start, end, speed, job in _working(schedule):
            by_job.setdefault(job, []).append((pytest.approx(start), pytest.approx(end), pytest.approx(speed)))
        assert by_job["A"] == [(1.0, 3.0, 2.0)]
        assert by_job["B"] == [(0.0, 1.0, 1.0), (3.0, 4.0, 1.0)]

    def test_gaps_are_idle(self, far_jobs):
        schedule = yds(far_jobs)
        states = [(seg.start, seg.end, seg.state) for seg in schedule.segments]
        assert (pytest.approx(1.0), pytest.approx(3.0), ProcessorMode.IDLE) in states

    def test_empty_instance(self, empty_instance):
        assert yds(empty_instance).segments == ()

    def test_speeds_never_increase_between_rounds(self):
        instance = InstanceFactory.random_instances(count=1, size=6, first_seed=21)[0]
        densities = [r.density for r in yds_rounds(instance)]
        assert densities == sorted(densities, reverse=True)
        assert yds(instance).is_feasible()


@pytest.mark.unit
class TestScheduleEnergy:
    """Test energy accounting of schedules."""

    def test_dynamic_only(self, two_jobs, params):
        energy = schedule_energy(yds(two_jobs), params, EnergyMode.DYNAMIC_ONLY)
        assert energy.total == pytest.approx(18.0)
        assert energy.wakeup == 0.0

    def test_full_model(self, two_jobs, params):
        energy = schedule_energy(yds(two_jobs), params, "full_sleep_model")
        assert energy.working == pytest.approx(26.0)
        assert energy.wakeup == pytest.approx(1.0)
        assert energy.wake_count == 1
        assert energy.total == pytest.approx(27.0)

    def test_until(self, two_jobs, params):
        energy = schedule_energy(yds(two_jobs), params, until=1.0)
        assert energy.working == pytest.approx(10.0)
        assert energy.wake_count == 1

    def test_until_zero(self, two_jobs, params):
        assert schedule_energy(yds(two_jobs), params, until=0.0).total == 0.0

    def test_idle_gap_charged(self, far_jobs, params):
        energy = schedule_energy(yds(far_jobs), params)
        assert energy.idle == pytest.approx(4.0)
        assert energy.wake_count == 1

    def test_unknown_mode(self, single_job, params):
        with pytest.raises(ValueError):
            schedule_energy(yds(single_job), params, "approximate")


@pytest.mark.unit
class TestAssignGapStates:
    """Test the idle-or-sleep choice for gaps of a schedule."""

    def test_long_gap_sleeps(self, far_jobs, params):
        schedule = assign_gap_states(yds(far_jobs), params)
        gap = schedule.segment_at(2.0)
        assert gap.state is ProcessorMode.SLEEP

        energy = schedule_energy(schedule, params)
        assert energy.wake_count == 2
        assert energy.total == pytest.approx(8.0)

    def test_short_gap_idles(self, far_jobs):
        params = PowerParams(alpha=3.0, g=2.0, L=10.0)
        schedule = assign_gap_states(yds(far_jobs), params)
        assert schedule.segment_at(2.0).state is ProcessorMode.IDLE

        energy = schedule_energy(schedule, params)
        assert energy.wake_count == 1
        assert energy.total == pytest.approx(20.0)

    def test_leading_time_sleeps(self, params):
        instance = InstanceFactory.from_tuples([("J1", 1.0, 2.0, 1.0)])
        schedule = assign_gap_states(yds(instance), params)
        assert schedule.segment_at(0.5).state is ProcessorMode.SLEEP


@pytest.mark.unit
class TestLowerBound:
    """Test the lower bound on the optimum and the default speed grid."""

    def test_single_job(self, single_job, params):
        assert opt_lower_bound(single_job, params) == pytest.approx(12.0)

    def test_dynamic_part_can_dominate(self, two_jobs, params):
        assert opt_lower_bound(two_jobs, params) == pytest.approx(18.0)
        fast = InstanceFactory.from_tuples([("A", 0.0, 1.0, 3.0)])
        assert opt_lower_bound(fast, params) == pytest.approx(27.0)

    def test_empty(self, empty_instance, params):
        assert opt_lower_bound(empty_instance, params) == 0.0

    def test_default_speed_grid(self, single_job, params):
        assert default_speed_grid(single_job, params) == (0.0, 0.5, 1.0, 1.5, 2.0, 3.0)

    def test_default_speed_grid_on_slot_boundaries_unchanged(self, single_job, params):
        assert default_speed_grid(single_job, params, dt=0.05) == (0.0, 0.5, 1.0, 1.5, 2.0, 3.0)

    def test_default_speed_grid_adds_snapped_speeds(self, params):
        late = InstanceFactory.from_tuples([("J1", 0.04, 1.0, 3.0)])
        assert default_speed_grid(late, params) == (0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 3.125)
        assert default_speed_grid(late, params, dt=0.05) == (
            0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 3.125, round(3.0 / (1.0 - 0.05), 12), 3.5,
        )


@pytest.mark.unit
class TestSlotGrid:
    """Snapping windows to slots and the slot-by-slot EDF credit."""

    def test_snap_shrinks_windows_to_whole_slots(self):
        instance = InstanceFactory.from_tuples([("J1", 0.01, 0.99, 1.0), ("J2", 0.5, 1.0, 2.0)], name="off")
        snapped = snap_instance(instance, 0.05)

        jobs = snapped.by_id()
        assert jobs["J1"].release == pytest.approx(0.05)
        assert jobs["J1"].deadline == pytest.approx(0.95)
        assert jobs["J1"].volume == 1.0
        assert (jobs["J2"].release, jobs["J2"].deadline) == (pytest.approx(0.5), pytest.approx(1.0))
        assert snapped.name == "off"

    def test_snap_keeps_windows_on_slot_boundaries(self, two_jobs):
        snapped = snap_instance(two_jobs, 0.05)
        for job, original in zip(snapped, two_jobs):
            assert job.id == original.id
            assert job.release == pytest.approx(original.release)
            assert job.deadline == pytest.approx(original.deadline)

    def test_snap_rejects_window_without_full_slot(self):
        short = InstanceFactory.from_tuples([("J1", 0.01, 0.04, 1.0)])
        with pytest.raises(InfeasibleGridError):
            snap_instance(short, 0.05)

    def test_min_slot_credits(self):
        one = InstanceFactory.from_tuples([("A", 0.0, 1.0, 1.0)])
        assert min_slot_credits(one, 0.25, 0.125) == 2

        two = InstanceFactory.from_tuples([("A", 0.0, 0.5, 0.5), ("B", 0.0, 0.5, 0.5)])
        assert min_slot_credits(two, 0.25, 0.125) == 4

    def test_min_slot_credits_without_enough_slots(self):
        crowded = InstanceFactory.from_tuples([("A", 0.0, 0.5, 0.1), ("B", 0.0, 0.5, 0.1), ("C", 0.0, 0.5, 0.1)])
        assert min_slot_credits(crowded, 0.25, 0.125) is None
        assert min_slot_credits(InstanceFactory.from_tuples([]), 0.25, 0.125) is None
