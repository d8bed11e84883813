"""Unfinished work held by a scheduler at a point in time."""

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from .job import Job


@dataclass
class PendingJob:
    """Remaining volume of a released, unfinished job.

    Attributes:
        job: The job.
        remaining: Work still to do, in (0, volume].
    """

    job: Job
    remaining: float

    @property
    def id(self) -> str:
        return self.job.id

    @property
    def deadline(self) -> float:
        return self.job.deadline

    def edf_key(self) -> Tuple[float, str]:
        return (self.job.deadline, self.job.id)


class PendingWork:
    """Per-job remaining work of the released, unfinished jobs.

    Entries are dropped once their remaining volume reaches zero.
    """

    def __init__(self, entries: Optional[Dict[str, PendingJob]] = None):
        self._entries: Dict[str, PendingJob] = dict(entries or {})

    @classmethod
    def from_remaining(cls, jobs: Dict[str, Job], remaining: Dict[str, float],
                       work_tol: float = 0.0) -> "PendingWork":
        """Build pending work from a remaining-volume mapping.

        Args:
            jobs: Jobs by id.
            remaining: Remaining work by job id; non-positive entries are skipped.
            work_tol: Amounts at or below this threshold count as finished.
        """
        return cls({
            job_id: PendingJob(jobs[job_id], rem)
            for job_id, rem in remaining.items()
            if rem > work_tol
        })

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[PendingJob]:
        return iter(sorted(self._entries.values(), key=PendingJob.edf_key))

    def __contains__(self, job_id: str) -> bool:
        return job_id in self._entries

    @property
    def is_empty(self) -> bool:
        return not self._entries

    @property
    def total(self) -> float:
        return sum(entry.remaining for entry in self._entries.values())

    def copy(self) -> "PendingWork":
        return PendingWork({
            job_id: PendingJob(entry.job, entry.remaining)
            for job_id, entry in self._entries.items()
        })

    def add(self, job: Job) -> None:
        """Register a newly released job with its full volume."""
        if job.id in self._entries:
            raise ValueError(f"Job {job.id} is already pending")
        self._entries[job.id] = PendingJob(job, job.volume)

    def remaining(self, job_id: str) -> float:
        entry = self._entries.get(job_id)
        return entry.remaining if entry else 0.0

    def deliver(self, job_id: str, amount: float, work_tol: float = 0.0) -> bool:
        """Apply processed work to a job.

        Returns:
            True when the job finished (and was removed).
        """
        entry = self._entries[job_id]
        entry.remaining -= amount
        if entry.remaining <= work_tol:
            del self._entries[job_id]
            return True
        return False

    def edf_job(self) -> Optional[PendingJob]:
        """Return the pending job with the earliest deadline (ties by id)."""
        if not self._entries:
            return None
        return min(self._entries.values(), key=PendingJob.edf_key)

    def work_between(self, start: float, end: float) -> float:
        """Return total remaining work with deadline in (start, end]."""
        return sum(
            entry.remaining for entry in self._entries.values()
            if start < entry.deadline <= end
        )

    def deadlines(self) -> List[float]:
        return sorted({entry.deadline for entry in self._entries.values()})

    def prefix_work(self, t0: float) -> List[Tuple[float, float]]:
        """Return (deadline, cumulative work with deadline in (t0, deadline]) pairs.

        Only deadlines strictly after t0 are listed, in increasing order.
        """
        per_deadline: Dict[float, float] = {}
        for entry in self._entries.values():
            if entry.deadline > t0:
                per_deadline[entry.deadline] = per_deadline.get(entry.deadline, 0.0) + entry.remaining

        prefixes = []
        cumulative = 0.0
        for deadline in sorted(per_deadline):
            cumulative += per_deadline[deadline]
            prefixes.append((deadline, cumulative))
        return prefixes

    def overdue(self, t: float, time_tol: float = 0.0) -> List[PendingJob]:
        """Return entries whose deadline is at or before t - time_tol."""
        return [entry for entry in self._entries.values() if entry.deadline <= t - time_tol]

    def as_dict(self) -> Dict[str, float]:
        return {job_id: entry.remaining for job_id, entry in self._entries.items()}

    def without(self, job_ids) -> "PendingWork":
        """Return a copy without the given jobs."""
        excluded = set(job_ids)
        return PendingWork({
            job_id: PendingJob(entry.job, entry.remaining)
            for job_id, entry in self._entries.items()
            if job_id not in excluded
        })
