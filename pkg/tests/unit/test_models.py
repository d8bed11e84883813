"""Unit tests for the job, pending-work and schedule models."""

import pytest

from speed_scaling_analyzer.models.job import Instance, job_density
from speed_scaling_analyzer.models.pending import PendingWork
from speed_scaling_analyzer.models.power import ProcessorMode
from speed_scaling_analyzer.models.schedule import BruteGrid, EnergyBreakdown, Schedule, Segment
from speed_scaling_analyzer.models.trace import SimConfig
from speed_scaling_analyzer.utils.tolerance import Tolerance
from tests.utils.data_factory import InstanceFactory, JobFactory, PendingFactory


@pytest.mark.unit
class TestJob:
    """Test Job validation."""

    def test_density(self):
        job = JobFactory.create_job("A", 1.0, 3.0, 4.0)
        assert job.window == pytest.approx(2.0)
        assert job.density == pytest.approx(2.0)
        assert job_density(job) == job.density

    @pytest.mark.parametrize("spec", [
        ("A", -1.0, 2.0, 1.0),
        ("A", 2.0, 2.0, 1.0),
        ("A", 3.0, 2.0, 1.0),
        ("A", 0.0, 2.0, 0.0),
        ("A", 0.0, 2.0, -1.0),
        ("", 0.0, 2.0, 1.0),
    ])
    def test_invalid_jobs(self, spec):
        with pytest.raises(ValueError):
            JobFactory.create_job(*spec)


@pytest.mark.unit
class TestInstance:
    """Test Instance ordering and derived values."""

    def test_jobs_sorted_by_release_deadline_id(self):
        instance = InstanceFactory.from_tuples([
            ("C", 1.0, 3.0, 1.0), ("B", 0.0, 5.0, 1.0), ("A", 0.0, 2.0, 1.0),
        ])
        assert [job.id for job in instance] == ["A", "B", "C"]

    def test_duplicate_ids_rejected(self):
        with pytest.raises(ValueError, match="Duplicate"):
            InstanceFactory.from_tuples([("A", 0.0, 2.0, 1.0), ("A", 1.0, 3.0, 1.0)])

    def test_horizon_and_volume(self, two_jobs):
        assert two_jobs.horizon == pytest.approx(4.0)
        assert two_jobs.total_volume == pytest.approx(6.0)
        assert len(two_jobs) == 2

    def test_empty_instance(self, empty_instance):
        assert empty_instance.horizon == 0.0
        assert empty_instance.uncovered_gaps() == []

    def test_released_by(self, far_jobs):
        assert [job.id for job in far_jobs.released_by(2.0)] == ["J1"]
        assert [job.id for job in far_jobs.released_by(3.0)] == ["J1", "J2"]

    def test_uncovered_gaps(self, far_jobs, two_jobs):
        assert far_jobs.uncovered_gaps() == [(1.0, 3.0)]
        assert two_jobs.uncovered_gaps() == []

    def test_name_not_part_of_equality(self, single_job):
        renamed = Instance(jobs=single_job.jobs, name="other")
        assert renamed == single_job


@pytest.mark.unit
class TestPendingWork:
    """Test the pending-work container."""

    def test_edf_job_and_prefixes(self, two_jobs):
        pending = PendingFactory.create(two_jobs, {"A": 4.0, "B": 2.0})
        assert pending.edf_job().id == "A"
        assert pending.prefix_work(0.0) == [(2.0, 4.0), (4.0, 6.0)]
        assert pending.prefix_work(2.0) == [(4.0, 2.0)]
        assert pending.work_between(0.0, 2.0) == pytest.approx(4.0)
        assert pending.work_between(2.0, 4.0) == pytest.approx(2.0)
        assert pending.total == pytest.approx(6.0)

    def test_deliver_removes_finished_job(self, two_jobs):
        pending = PendingFactory.create(two_jobs, {"A": 4.0, "B": 2.0})
        assert not pending.deliver("A", 1.0)
        assert pending.remaining("A") == pytest.approx(3.0)
        assert pending.deliver("A", 3.0)
        assert "A" not in pending
        assert pending.remaining("A") == 0.0

    def test_from_remaining_skips_finished(self, two_jobs):
        pending = PendingFactory.create(two_jobs, {"A": 0.0, "B": 1.0})
        assert pending.as_dict() == {"B": 1.0}
        pending = PendingWork.from_remaining(two_jobs.by_id(), {"A": 1e-12, "B": 1.0}, work_tol=1e-9)
        assert pending.as_dict() == {"B": 1.0}

    def test_add_twice_rejected(self, single_job):
        pending = PendingWork()
        pending.add(single_job.jobs[0])
        with pytest.raises(ValueError):
            pending.add(single_job.jobs[0])

    def test_copy_is_independent(self, single_job):
        pending = PendingFactory.create(single_job, {"J1": 4.0})
        copy = pending.copy()
        copy.deliver("J1", 1.0)
        assert pending.remaining("J1") == pytest.approx(4.0)

    def test_without_and_overdue(self, two_jobs):
        pending = PendingFactory.create(two_jobs, {"A": 1.0, "B": 1.0})
        assert pending.without(["A"]).as_dict() == {"B": 1.0}
        assert [entry.id for entry in pending.overdue(2.0)] == ["A"]
        assert pending.overdue(1.9) == []


@pytest.mark.unit
class TestSchedule:
    """Test schedule segments and replay."""

    @pytest.fixture
    def schedule(self, two_jobs) -> Schedule:
        return Schedule(
            segments=(
                Segment(0.0, 2.0, 2.0, "A", ProcessorMode.WORKING),
                Segment(2.0, 4.0, 1.0, "B", ProcessorMode.WORKING),
            ),
            horizon=4.0,
            instance=two_jobs,
        )

    def test_segment_validation(self):
        with pytest.raises(ValueError):
            Segment(1.0, 1.0, 1.0, "A", ProcessorMode.WORKING)
        with pytest.raises(ValueError):
            Segment(0.0, 1.0, 0.0, "A", ProcessorMode.WORKING)
        with pytest.raises(ValueError):
            Segment(0.0, 1.0, 1.0, None, ProcessorMode.WORKING)
        with pytest.raises(ValueError):
            Segment(0.0, 1.0, 0.0, "A", ProcessorMode.IDLE)

    def test_overlapping_segments_rejected(self):
        with pytest.raises(ValueError):
            Schedule(segments=(
                Segment(0.0, 2.0, 1.0, "A", ProcessorMode.WORKING),
                Segment(1.0, 3.0, 1.0, "B", ProcessorMode.WORKING),
            ), horizon=3.0)

    def test_work_and_speed_lookup(self, schedule):
        assert schedule.work_by_job() == {"A": pytest.approx(4.0), "B": pytest.approx(2.0)}
        assert schedule.speed_at(1.0) == 2.0
        assert schedule.speed_at(3.0) == 1.0
        assert schedule.speed_at(5.0) == 0.0
        assert schedule.max_speed == 2.0

    def test_pending_at(self, schedule):
        assert schedule.pending_at(1.0).as_dict() == {"A": pytest.approx(2.0), "B": pytest.approx(2.0)}
        assert schedule.pending_at(3.0).as_dict() == {"B": pytest.approx(1.0)}
        assert schedule.pending_at(4.0).is_empty

    def test_feasible(self, schedule):
        assert schedule.is_feasible()

    def test_infeasible_outside_window_and_short(self, two_jobs):
        schedule = Schedule(
            segments=(
                Segment(0.0, 1.0, 2.0, "B", ProcessorMode.WORKING),
                Segment(1.0, 3.0, 2.0, "A", ProcessorMode.WORKING),
            ),
            horizon=4.0,
            instance=two_jobs,
        )
        errors = schedule.feasibility_errors()
        assert any("outside" in error for error in errors)
        assert not schedule.is_feasible()

    def test_rows(self, schedule):
        rows = schedule.to_rows()
        assert rows[0] == {"start": 0.0, "end": 2.0, "state": "working", "speed": 2.0, "job_id": "A"}


@pytest.mark.unit
class TestSmallModels:
    """Test grids, energy breakdowns, settings and tolerances."""

    def test_brute_grid_normalises_speeds(self):
        grid = BruteGrid(dt=0.5, speeds=(2.0, 0.0, 1.0, 2.0))
        assert grid.speeds == (1.0, 2.0)
        assert grid.min_speed == 1.0
        assert grid.work_unit == pytest.approx(0.5)

    @pytest.mark.parametrize("dt,speeds", [(0.0, (1.0,)), (0.1, (0.0,)), (0.1, (-1.0, 1.0))])
    def test_brute_grid_validation(self, dt, speeds):
        with pytest.raises(ValueError):
            BruteGrid(dt=dt, speeds=speeds)

    def test_energy_breakdown_total(self):
        energy = EnergyBreakdown(working=12.0, idle=1.0, wakeup=2.0, dynamic_only=4.0, wake_count=2)
        assert energy.total == pytest.approx(15.0)

    def test_sim_config_validation(self):
        with pytest.raises(ValueError):
            SimConfig(max_step=0.0)
        with pytest.raises(ValueError):
            SimConfig(event_tolerance=0.0)

    def test_tolerance(self):
        tol = Tolerance(abs_tol=1e-9, rel_tol=1e-9)
        assert tol.close(1.0, 1.0 + 1e-10)
        assert tol.leq(1.0 + 1e-10, 1.0)
        assert not tol.leq(1.1, 1.0)
        assert tol.geq(1.0 - 1e-10, 1.0)
        assert tol.is_zero(5e-10)
        with pytest.raises(ValueError):
            Tolerance(abs_tol=-1.0)
