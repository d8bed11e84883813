"""Job and Instance data models."""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Tuple


@dataclass(frozen=True)
class Job:
    """A unit of work released online.

    Attributes:
        id: Unique label within an instance.
        release: Release time r_i >= 0.
        deadline: Deadline d_i > r_i.
        volume: Processing volume w_i > 0.
    """

    id: str
    release: float
    deadline: float
    volume: float

    def __post_init__(self):
        """Validate job data."""
        if not isinstance(self.id, str) or not self.id.strip():
            raise ValueError(f"Invalid job id: {self.id!r}")
        if self.release < 0:
            raise ValueError(f"Job {self.id}: release must be >= 0, got {self.release}")
        if not self.release < self.deadline:
            raise ValueError(
                f"Job {self.id}: release {self.release} must be before deadline {self.deadline}"
            )
        if not self.volume > 0:
            raise ValueError(f"Job {self.id}: volume must be > 0, got {self.volume}")

    @property
    def window(self) -> float:
        return self.deadline - self.release

    @property
    def density(self) -> float:
        """Return w_i / (d_i - r_i)."""
        return self.volume / self.window

    def sort_key(self) -> Tuple[float, float, str]:
        return (self.release, self.deadline, self.id)


def job_density(job: Job) -> float:
    """Return the density of a job."""
    return job.density


@dataclass(frozen=True)
class Instance:
    """An ordered, immutable collection of jobs.

    Jobs are kept sorted by release, then deadline, then id.

    Attributes:
        jobs: The jobs of the instance.
        name: Optional label used in reports and output file names.
    """

    jobs: Tuple[Job, ...] = ()
    name: str = field(default="instance", compare=False)

    def __post_init__(self):
        """Sort jobs and check id uniqueness."""
        ordered = tuple(sorted(self.jobs, key=Job.sort_key))
        object.__setattr__(self, "jobs", ordered)

        seen = set()
        for job in ordered:
            if job.id in seen:
                raise ValueError(f"Duplicate job id: {job.id}")
            seen.add(job.id)

    @classmethod
    def from_jobs(cls, jobs: Iterable[Job], name: str = "instance") -> "Instance":
        return cls(jobs=tuple(jobs), name=name)

    @property
    def horizon(self) -> float:
        """Return the latest deadline (0 for an empty instance)."""
        return max((job.deadline for job in self.jobs), default=0.0)

    @property
    def total_volume(self) -> float:
        return sum(job.volume for job in self.jobs)

    def __len__(self) -> int:
        return len(self.jobs)

    def __iter__(self):
        return iter(self.jobs)

    def by_id(self) -> Dict[str, Job]:
        return {job.id: job for job in self.jobs}

    def released_by(self, t: float) -> Tuple[Job, ...]:
        """Return jobs with release time <= t."""
        return tuple(job for job in self.jobs if job.release <= t)

    def uncovered_gaps(self) -> List[Tuple[float, float]]:
        """Return the maximal intervals after the first release covered by no job window."""
        gaps = []
        covered_until = None
        for job in self.jobs:
            if covered_until is not None and job.release > covered_until:
                gaps.append((covered_until, job.release))
            covered_until = job.deadline if covered_until is None else max(covered_until, job.deadline)
        return gaps
