"""
Data Factory for Test Fixtures

This module provides factories for creating jobs and instances
that can be used across different test scenarios.
"""

from typing import Iterable, List, Tuple

from speed_scaling_analyzer.generators.instance_generator import generate
from speed_scaling_analyzer.models.job import Instance, Job
from speed_scaling_analyzer.models.pending import PendingWork


class JobFactory:
    """Factory for creating Job objects."""

    @staticmethod
    def create_job(job_id: str = "J1", release: float = 0.0, deadline: float = 4.0, volume: float = 4.0) -> Job:
        """Create a single job."""
        return Job(id=job_id, release=release, deadline=deadline, volume=volume)

    @staticmethod
    def create_jobs(specs: Iterable[Tuple[str, float, float, float]]) -> List[Job]:
        """Create jobs from (id, release, deadline, volume) tuples."""
        return [JobFactory.create_job(*spec) for spec in specs]


class InstanceFactory:
    """Factory for creating Instance objects."""

    @staticmethod
    def from_tuples(specs: Iterable[Tuple[str, float, float, float]], name: str = "instance") -> Instance:
        return Instance.from_jobs(JobFactory.create_jobs(specs), name=name)

    @staticmethod
    def single_job() -> Instance:
        return InstanceFactory.from_tuples([("J1", 0.0, 4.0, 4.0)], name="single")

    @staticmethod
    def two_nested_jobs() -> Instance:
        return InstanceFactory.from_tuples([("A", 0.0, 2.0, 4.0), ("B", 0.0, 4.0, 2.0)], name="nested")

    @staticmethod
    def far_jobs() -> Instance:
        return InstanceFactory.from_tuples([("J1", 0.0, 1.0, 1.0), ("J2", 3.0, 4.0, 1.0)], name="far")

    @staticmethod
    def random_instances(kind: str = "uniform_random", count: int = 3, size: int = 3,
                         first_seed: int = 0) -> List[Instance]:
        """Generated instances for seeds first_seed, first_seed + 1, ..."""
        return [generate(kind, seed=seed, size=size) for seed in range(first_seed, first_seed + count)]

    @staticmethod
    def tiny_instances(count: int = 50, size: int = 3, first_seed: int = 0) -> List[Instance]:
        """Up to size jobs on a horizon of 3, small enough for the brute-force optimum."""
        return [
            generate("uniform_random", seed=seed, size=1 + seed % size, horizon=3.0, max_window=2.0)
            for seed in range(first_seed, first_seed + count)
        ]


class PendingFactory:
    """Factory for pending-work snapshots."""

    @staticmethod
    def create(instance: Instance, remaining: dict) -> PendingWork:
        """Pending work of the given jobs with the given remaining volumes."""
        return PendingWork.from_remaining(instance.by_id(), remaining)
