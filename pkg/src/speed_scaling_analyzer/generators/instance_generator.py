"""Deterministic instance generators."""

import logging
import math
from enum import Enum
from typing import Any, Callable, Dict, List

import numpy as np

from ..exceptions import UsageError
from ..models.job import Instance, Job

DECIMALS = 6
MIN_WINDOW = 0.05


class InstanceKind(str, Enum):
    """Available instance generators."""

    SINGLE = "single"
    UNIFORM_RANDOM = "uniform_random"
    NESTED_ADVERSARIAL = "nested_adversarial"
    BURSTY_WITH_GAPS = "bursty_with_gaps"

    @classmethod
    def parse(cls, name: str) -> "InstanceKind":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise UsageError(f"Unknown instance kind: {name!r}. Must be one of {[k.value for k in cls]}")


def _round(value: float) -> float:
    return round(float(value), DECIMALS)


def _make_job(index: int, release: float, deadline: float, volume: float) -> Job:
    """Round times and volume, keeping r < d after rounding."""
    release = max(0.0, _round(release))
    deadline = _round(deadline)
    if deadline <= release:
        deadline = _round(release + MIN_WINDOW)
    return Job(id=f"J{index}", release=release, deadline=deadline, volume=max(_round(volume), 10.0 ** -DECIMALS))


class InstanceGenerator:
    """Builds reproducible instances.

    The same (kind, seed, size, params) always yields the same instance; all
    numbers are rounded to six decimals so file round trips are exact.
    """

    def __init__(self):
        """Initialize the generator registry."""
        self.logger = logging.getLogger(self.__class__.__name__)
        self._builders: Dict[InstanceKind, Callable[..., List[Job]]] = {
            InstanceKind.SINGLE: self._single,
            InstanceKind.UNIFORM_RANDOM: self._uniform_random,
            InstanceKind.NESTED_ADVERSARIAL: self._nested_adversarial,
            InstanceKind.BURSTY_WITH_GAPS: self._bursty_with_gaps,
        }

    def generate(self, kind, seed: int = 0, size: int = 1, **params: Any) -> Instance:
        """Generate an instance.

        Args:
            kind: InstanceKind or its name.
            seed: Seed of the random stream.
            size: Number of jobs (ignored by ``single``, which emits one job).
            **params: Generator-specific parameters (see the ``_<kind>`` builders).

        Raises:
            UsageError: For an unknown kind, size < 1 or unknown parameters.
        """
        if not isinstance(kind, InstanceKind):
            kind = InstanceKind.parse(str(kind))
        if size < 1:
            raise UsageError(f"size must be >= 1, got {size}")

        rng = np.random.default_rng(seed)
        try:
            jobs = self._builders[kind](rng, size, **params)
        except TypeError as e:
            raise UsageError(f"Invalid parameters for {kind.value}: {e}") from e

        instance = Instance.from_jobs(jobs, name=f"{kind.value}-s{seed}-n{size}")
        self.logger.debug(f"Generated {instance.name} with {len(instance)} jobs")
        return instance

    def _single(self, rng, size: int, volume: float = 4.0, release: float = 0.0,
                deadline: float = 4.0) -> List[Job]:
        return [_make_job(1, release, deadline, volume)]

    def _uniform_random(self, rng, size: int, horizon: float = 10.0, min_window: float = 0.5,
                        max_window: float = 5.0, min_volume: float = 0.5,
                        max_volume: float = 4.0) -> List[Job]:
        jobs = []
        for index in range(1, size + 1):
            release = rng.uniform(0.0, max(horizon - min_window, 0.0))
            window = rng.uniform(min_window, max_window)
            volume = rng.uniform(min_volume, max_volume)
            jobs.append(_make_job(index, release, release + window, volume))
        return jobs

    def _nested_adversarial(self, rng, size: int, horizon: float = 8.0, shrink: float = 0.5,
                            base_density: float = 0.75, growth: float = 0.5) -> List[Job]:
        """Windows nested around the centre, each shorter by ``shrink``.

        Densities grow with depth so the highest density crosses the critical
        speed part-way through and critical intervals split and merge.
        """
        if not 0 < shrink < 1:
            raise UsageError(f"shrink must be in (0, 1), got {shrink}")
        centre = horizon / 2.0
        jobs = []
        for index in range(1, size + 1):
            length = horizon * shrink ** (index - 1)
            density = base_density * (1.0 + growth * (index - 1)) * rng.uniform(0.8, 1.2)
            jobs.append(_make_job(index, centre - length / 2.0, centre + length / 2.0, density * length))
        return jobs

    def _bursty_with_gaps(self, rng, size: int, g: float = 2.0, L: float = 6.0,
                          burst_size: int = 3, burst_span: float = 2.0, gap_factor: float = 1.5,
                          min_gap: float = 1.0, min_volume: float = 0.5,
                          max_volume: float = 3.0) -> List[Job]:
        """Bursts of overlapping jobs separated by gaps longer than L/g.

        Every window in a burst contains the burst midpoint, so the only
        uncovered intervals are the gaps between bursts.
        """
        if gap_factor <= 1:
            raise UsageError(f"gap_factor must be > 1, got {gap_factor}")
        base_gap = max(gap_factor * L / g, min_gap)
        half = burst_span / 2.0
        jobs: List[Job] = []
        start = 0.0
        for burst in range(math.ceil(size / burst_size)):
            burst_end = start
            for _ in range(min(burst_size, size - len(jobs))):
                release = start + rng.uniform(0.0, max(half - MIN_WINDOW, 0.0))
                deadline = start + half + rng.uniform(MIN_WINDOW, half)
                job = _make_job(len(jobs) + 1, release, deadline, rng.uniform(min_volume, max_volume))
                jobs.append(job)
                burst_end = max(burst_end, job.deadline)
            start = _round(burst_end + base_gap + rng.uniform(0.0, 0.5))
        return jobs


def generate(kind, seed: int = 0, size: int = 1, **params: Any) -> Instance:
    """Generate an instance with the default generator."""
    return InstanceGenerator().generate(kind, seed=seed, size=size, **params)
