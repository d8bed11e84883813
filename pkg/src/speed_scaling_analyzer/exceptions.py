"""Error hierarchy for the speed scaling analyzer."""


class SpeedScalingError(Exception):
    """Base class for every error raised by this package."""


class DomainError(SpeedScalingError, ValueError):
    """Raised when a parameter or speed lies outside the model's domain."""


class UsageError(SpeedScalingError, ValueError):
    """Raised for unknown kinds/policies or mismatched inputs."""


class ConfigError(SpeedScalingError):
    """Raised when a run configuration cannot be built."""


class InstanceParseError(SpeedScalingError):
    """Raised when an instance file cannot be parsed.

    Attributes:
        record: Identifier of the offending record (id or row number), if known.
    """

    def __init__(self, message: str, record: object = None):
        super().__init__(message)
        self.record = record


class DeadlineMissError(SpeedScalingError):
    """Raised by the simulator when a job is unfinished at its deadline."""

    def __init__(self, job_id: str, deadline: float, remaining: float, time: float, policy: str):
        super().__init__(
            f"{policy}: job {job_id} missed deadline {deadline:g} "
            f"with {remaining:.6g} work left at t={time:.9g}"
        )
        self.job_id = job_id
        self.deadline = deadline
        self.remaining = remaining
        self.time = time
        self.policy = policy


class InfeasibleGridError(SpeedScalingError):
    """Raised when the brute-force grid admits no schedule meeting all deadlines."""


class StateLimitError(SpeedScalingError):
    """Raised when the brute-force state space outgrows its configured cap."""


# Exit statuses used by the command line.
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
