"""Unit tests for the critical partition, the potential and the amortized check."""

import pytest

from speed_scaling_analyzer.analyzers.potential import (
    CLAMPED,
    SIGNED,
    AmortizedChecker,
    amortized_check,
    critical_partition,
    excess_work,
    potential,
)
from speed_scaling_analyzer.analyzers.power_model import analysis_constants
from speed_scaling_analyzer.exceptions import UsageError
from speed_scaling_analyzer.models.pending import PendingWork
from speed_scaling_analyzer.models.policy import Policy, PolicyKind
from speed_scaling_analyzer.models.reports import CriticalPartition
from speed_scaling_analyzer.schedulers.offline import assign_gap_states, yds
from speed_scaling_analyzer.schedulers.simulator import simulate
from tests.utils.data_factory import InstanceFactory, PendingFactory


@pytest.mark.unit
class TestCriticalPartition:
    """Test the partition of the excess work into critical intervals."""

    def test_two_intervals(self, two_jobs):
        alg = PendingFactory.create(two_jobs, {"A": 4.0, "B": 2.0})
        partition = critical_partition(alg, PendingWork(), 0.0, s_star=1.0)

        assert partition.times == (0.0, 2.0, 4.0)
        assert partition.densities == (pytest.approx(2.0), pytest.approx(1.0))
        assert partition.g0 == pytest.approx(2.0)
        assert partition.size == 2
        assert partition.intervals() == [(0.0, 2.0), (2.0, 4.0)]

    def test_densities_strictly_decrease(self):
        instance = InstanceFactory.from_tuples([
            ("A", 0.0, 1.0, 3.0), ("B", 0.0, 2.0, 1.0), ("C", 0.0, 5.0, 1.5), ("D", 0.0, 6.0, 0.1),
        ])
        alg = PendingFactory.create(instance, {"A": 3.0, "B": 1.0, "C": 1.5, "D": 0.1})
        partition = critical_partition(alg, PendingWork(), 0.0, s_star=0.5)
        assert list(partition.densities) == sorted(partition.densities, reverse=True)
        assert len(set(partition.densities)) == len(partition.densities)

    def test_excess_work_clamped(self, two_jobs):
        alg = PendingFactory.create(two_jobs, {"A": 1.0})
        opt = PendingFactory.create(two_jobs, {"A": 3.0})
        assert excess_work(alg, opt, 0.0, 2.0) == 0.0
        assert excess_work(opt, alg, 0.0, 2.0) == pytest.approx(2.0)

    def test_opt_deadlines_are_candidates(self, two_jobs):
        alg = PendingFactory.create(two_jobs, {"A": 1.0})
        opt = PendingFactory.create(two_jobs, {"B": 1.0})
        partition = critical_partition(alg, opt, 0.0, s_star=1.0)
        assert partition.times[-1] == 4.0

    def test_nothing_pending(self):
        partition = critical_partition(PendingWork(), PendingWork(), 1.0, s_star=1.0)
        assert partition.times == (1.0,)
        assert partition.g0 == 0.0

    def test_inconsistent_partition_rejected(self):
        with pytest.raises(ValueError):
            CriticalPartition(times=(0.0, 1.0), densities=(1.0,), clamped=(), alg_work=(), opt_work=())


@pytest.mark.unit
class TestPotential:
    """Test the potential function."""

    def test_value(self, two_jobs):
        alg = PendingFactory.create(two_jobs, {"A": 4.0, "B": 2.0})
        partition = critical_partition(alg, PendingWork(), 0.0, s_star=1.0)
        assert potential(partition, beta=4.5, alpha=2.0) == pytest.approx(45.0)

    def test_low_density_clamped_to_critical_speed(self, single_job):
        alg = PendingFactory.create(single_job, {"J1": 2.0})
        partition = critical_partition(alg, PendingWork(), 0.0, s_star=1.0)
        assert partition.densities == (pytest.approx(0.5),)
        assert partition.clamped == (1.0,)
        assert potential(partition, beta=4.5, alpha=2.0) == pytest.approx(9.0)

    def test_signed_and_clamped_variants(self, two_jobs):
        alg = PendingFactory.create(two_jobs, {"A": 1.0})
        opt = PendingFactory.create(two_jobs, {"A": 3.0})
        partition = critical_partition(alg, opt, 0.0, s_star=1.0)

        assert potential(partition, 4.5, 2.0, SIGNED) == pytest.approx(-9.0)
        assert potential(partition, 4.5, 2.0, CLAMPED) == 0.0

    def test_unknown_variant(self, two_jobs):
        partition = critical_partition(PendingWork(), PendingWork(), 0.0, s_star=1.0)
        with pytest.raises(UsageError):
            potential(partition, 1.0, 2.0, "squared")


@pytest.mark.unit
class TestAmortizedCheck:
    """Test the integrated amortized invariant."""

    @pytest.fixture
    def sqoa_trace(self, single_job, params, sim_config):
        return simulate(single_job, Policy.create(PolicyKind.SQOA, params), params, sim_config)

    def test_single_job_passes(self, single_job, params, sqoa_trace):
        opt = assign_gap_states(yds(single_job), params)
        report = amortized_check(sqoa_trace, opt, params, analysis_constants(params), samples=50)

        assert report.passed, [v.as_dict() for v in report.violations]
        assert len(report.samples) == 50
        assert report.samples[0].phi == pytest.approx(0.0, abs=1e-6)
        assert report.samples[-1].e_opt == pytest.approx(12.0, abs=1e-6)
        assert report.slack == 0.0

    def test_slack_from_grid(self, single_job, params, sqoa_trace):
        opt = yds(single_job)
        report = AmortizedChecker(params, analysis_constants(params), grid_dt=0.05).check(sqoa_trace, opt, 10)
        s_max = 5.0 / 3.0
        assert report.slack == pytest.approx((s_max ** 3 + 2.0) * 0.05)

    def test_far_jobs_pass(self, far_jobs, params, sim_config):
        trace = simulate(far_jobs, Policy.create(PolicyKind.SQOA, params), params, sim_config)
        opt = assign_gap_states(yds(far_jobs), params)
        report = amortized_check(trace, opt, params, analysis_constants(params), samples=80)
        assert report.passed, [v.as_dict() for v in report.violations]

    def test_different_instances_rejected(self, params, sqoa_trace, two_jobs):
        with pytest.raises(UsageError):
            amortized_check(sqoa_trace, yds(two_jobs), params, analysis_constants(params))

    def test_report_dict(self, single_job, params, sqoa_trace):
        report = amortized_check(sqoa_trace, yds(single_job), params, analysis_constants(params), samples=5)
        data = report.to_dict()
        assert data["passed"] is True
        assert data["policy"] == "SqOA"
        assert len(data["samples"]) == 5
