"""Unit tests for the online speed rules."""

import pytest

from speed_scaling_analyzer.models.pending import PendingWork
from speed_scaling_analyzer.models.policy import Policy, PolicyKind, ProcessorState
from speed_scaling_analyzer.models.power import ProcessorMode
from speed_scaling_analyzer.schedulers.online import (
    avr_speed,
    max_density,
    policy_speed,
    prefix_densities,
    sqoa_decision,
    working_speed,
)
from tests.utils.data_factory import PendingFactory

Q = 5.0 / 3.0


@pytest.mark.unit
class TestDensity:
    """Test the highest-density computation."""

    def test_prefix_densities(self, two_jobs):
        pending = PendingFactory.create(two_jobs, {"A": 4.0, "B": 2.0})
        assert list(prefix_densities(pending, 0.0)) == [(2.0, 2.0), (4.0, 1.5)]

    def test_max_density(self, two_jobs):
        pending = PendingFactory.create(two_jobs, {"A": 4.0, "B": 2.0})
        assert max_density(pending, 0.0) == (pytest.approx(2.0), 2.0)

    def test_ties_go_to_latest_deadline(self, two_jobs):
        pending = PendingFactory.create(two_jobs, {"A": 2.0, "B": 2.0})
        rho, t1 = max_density(pending, 0.0)
        assert rho == pytest.approx(1.0)
        assert t1 == 4.0

    def test_nothing_pending(self):
        assert max_density(PendingWork(), 0.0) == (0.0, None)


@pytest.mark.unit
class TestWorkingSpeed:
    """Test the speed of the working state."""

    def test_above_critical_speed(self, params):
        assert working_speed(2.0, params, Q) == pytest.approx(10.0 / 3.0)

    def test_below_critical_speed(self, params):
        assert working_speed(0.5, params, Q) == pytest.approx(1.0)

    def test_no_work(self, params):
        assert working_speed(0.0, params, Q) == 0.0

    def test_just_below_critical_speed_matches_wake_rule(self, params):
        rho = 1.0 - 1e-12
        assert working_speed(rho, params, Q) == pytest.approx(Q * 1.0)
        assert working_speed(rho, params, Q) == working_speed(1.0, params, Q)
        woken = sqoa_decision(ProcessorState(ProcessorMode.SLEEP, 0.0), rho, params, 0.0, q=Q)
        working = sqoa_decision(ProcessorState(ProcessorMode.WORKING, 0.0), rho, params, 0.0, q=Q)
        assert woken == working == (ProcessorMode.WORKING, Q * 1.0)


@pytest.mark.unit
class TestSqoaDecision:
    """Test the working, idle and sleep rules."""

    def test_sleep_stays_asleep_below_critical_density(self, params):
        state = ProcessorState(ProcessorMode.SLEEP, 0.0)
        assert sqoa_decision(state, 0.5, params, 1.0) == (ProcessorMode.SLEEP, 0.0)

    def test_wakes_at_critical_density(self, params):
        state = ProcessorState(ProcessorMode.SLEEP, 0.0)
        mode, speed = sqoa_decision(state, 1.2, params, 1.0)
        assert mode is ProcessorMode.WORKING
        assert speed == pytest.approx(Q * 1.2)

    def test_soa_multiplier(self, params):
        state = ProcessorState(ProcessorMode.IDLE, 0.0)
        mode, speed = sqoa_decision(state, 1.0, params, 0.1, q=1.0)
        assert mode is ProcessorMode.WORKING
        assert speed == pytest.approx(1.0)

    def test_idle_sleeps_after_timeout(self, params):
        state = ProcessorState(ProcessorMode.IDLE, 1.0)
        assert sqoa_decision(state, 0.0, params, 1.4) == (ProcessorMode.IDLE, 0.0)
        assert sqoa_decision(state, 0.0, params, 1.5) == (ProcessorMode.SLEEP, 0.0)
        assert sqoa_decision(state, 0.3, params, 1.6) == (ProcessorMode.SLEEP, 0.0)

    def test_wake_beats_sleep(self, params):
        state = ProcessorState(ProcessorMode.IDLE, 0.0)
        mode, _ = sqoa_decision(state, 1.0, params, 10.0)
        assert mode is ProcessorMode.WORKING

    def test_working_rules(self, params):
        state = ProcessorState(ProcessorMode.WORKING, 0.0)
        assert sqoa_decision(state, 2.0, params, 1.0) == (ProcessorMode.WORKING, pytest.approx(10.0 / 3.0))
        assert sqoa_decision(state, 0.4, params, 1.0) == (ProcessorMode.WORKING, pytest.approx(1.0))
        assert sqoa_decision(state, 0.0, params, 1.0) == (ProcessorMode.IDLE, 0.0)

    def test_idle_with_low_density_keeps_idling(self, params):
        state = ProcessorState(ProcessorMode.IDLE, 0.0)
        assert sqoa_decision(state, 0.5, params, 0.2) == (ProcessorMode.IDLE, 0.0)


@pytest.mark.unit
class TestPolicySpeed:
    """Test the speeds of every policy."""

    @pytest.fixture
    def pending(self, two_jobs) -> PendingWork:
        return PendingFactory.create(two_jobs, {"A": 4.0, "B": 2.0})

    def test_avr_speed(self, two_jobs):
        assert avr_speed(two_jobs.jobs, 1.0) == pytest.approx(2.5)
        assert avr_speed(two_jobs.jobs, 3.0) == pytest.approx(0.5)
        assert avr_speed(two_jobs.jobs, 4.0) == 0.0

    def test_oa(self, pending, params):
        assert policy_speed(Policy.create(PolicyKind.OA, params), pending, 0.0, params) == pytest.approx(2.0)

    def test_qoa(self, pending, params):
        assert policy_speed(Policy.create(PolicyKind.QOA, params), pending, 0.0, params) == pytest.approx(10.0 / 3.0)

    def test_avr(self, pending, params):
        assert policy_speed(Policy.create(PolicyKind.AVR, params), pending, 0.0, params) == pytest.approx(2.5)

    def test_sqoa_uses_critical_speed_floor(self, single_job, params):
        pending = PendingFactory.create(single_job, {"J1": 1.0})
        assert policy_speed(Policy.create(PolicyKind.SQOA, params), pending, 0.0, params) == pytest.approx(1.0)
