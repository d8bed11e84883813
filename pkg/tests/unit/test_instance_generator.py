"""Unit tests for the instance generators."""

import pytest

from speed_scaling_analyzer.exceptions import UsageError
from speed_scaling_analyzer.generators.instance_generator import InstanceGenerator, InstanceKind, generate


@pytest.mark.unit
class TestInstanceGenerator:
    """Test the reproducible instance generators."""

    @pytest.mark.parametrize("kind", list(InstanceKind))
    def test_same_seed_same_instance(self, kind):
        first = generate(kind, seed=11, size=5)
        second = generate(kind.value, seed=11, size=5)
        assert first.jobs == second.jobs
        assert first.name == f"{kind.value}-s11-n5"

    def test_different_seeds_differ(self):
        assert generate("uniform_random", seed=1, size=4).jobs != generate("uniform_random", seed=2, size=4).jobs

    def test_single(self):
        instance = generate("single", seed=0, size=3)
        assert len(instance) == 1
        job = instance.jobs[0]
        assert (job.id, job.release, job.deadline, job.volume) == ("J1", 0.0, 4.0, 4.0)

    def test_single_parameters(self):
        job = generate("single", volume=2.0, deadline=8.0).jobs[0]
        assert job.density == pytest.approx(0.25)

    @pytest.mark.parametrize("size", [1, 3, 10])
    def test_uniform_random_size_and_validity(self, size):
        instance = generate("uniform_random", seed=5, size=size)
        assert len(instance) == size
        for job in instance:
            assert 0.0 <= job.release < job.deadline
            assert job.volume > 0

    def test_nested_windows(self):
        instance = generate("nested_adversarial", seed=4, size=4)
        jobs = sorted(instance, key=lambda job: job.window, reverse=True)
        for outer, inner in zip(jobs, jobs[1:]):
            assert outer.release <= inner.release
            assert inner.deadline <= outer.deadline

    def test_nested_bad_shrink(self):
        with pytest.raises(UsageError):
            generate("nested_adversarial", size=3, shrink=1.5)

    @pytest.mark.parametrize("g,L", [(2.0, 6.0), (1.0, 2.0), (4.0, 1.0)])
    def test_bursty_gaps_exceed_idle_timeout(self, g, L):
        instance = generate("bursty_with_gaps", seed=9, size=9, g=g, L=L)
        gaps = instance.uncovered_gaps()
        assert len(gaps) == 2
        assert min(end - start for start, end in gaps) > L / g

    def test_bursty_gap_factor(self):
        with pytest.raises(UsageError):
            generate("bursty_with_gaps", size=4, gap_factor=1.0)

    def test_unknown_kind(self):
        with pytest.raises(UsageError):
            InstanceGenerator().generate("staircase", seed=0, size=2)

    def test_size_must_be_positive(self):
        with pytest.raises(UsageError):
            generate("uniform_random", size=0)

    def test_unknown_parameter(self):
        with pytest.raises(UsageError):
            generate("uniform_random", size=2, colour="red")

    def test_values_rounded(self):
        for job in generate("uniform_random", seed=7, size=8):
            assert round(job.release, 6) == job.release
            assert round(job.volume, 6) == job.volume
