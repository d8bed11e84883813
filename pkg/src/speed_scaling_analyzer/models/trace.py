"""Records of online simulation runs."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from .job import Instance
from .power import PowerParams, ProcessorMode
from .schedule import EnergyBreakdown, Schedule, Segment


class EventKind(str, Enum):
    """Discrete events logged by the simulator."""

    ARRIVAL = "arrival"
    COMPLETION = "completion"
    WAKE = "wake"
    TO_IDLE = "to_idle"
    TO_SLEEP = "to_sleep"


@dataclass(frozen=True)
class SimConfig:
    """Integration settings of the simulator.

    Attributes:
        max_step: Largest time step h.
        event_tolerance: Accuracy epsilon of located events.
    """

    max_step: float = 1e-3
    event_tolerance: float = 1e-9

    def __post_init__(self):
        if not self.max_step > 0:
            raise ValueError(f"max_step must be > 0, got {self.max_step}")
        if not self.event_tolerance > 0:
            raise ValueError(f"event_tolerance must be > 0, got {self.event_tolerance}")


@dataclass(frozen=True)
class TraceSample:
    """State of the processor at the start of a simulation step."""

    t: float
    mode: ProcessorMode
    speed: float
    rho: float
    job: Optional[str]
    e_working: float
    e_idle: float
    e_wakeup: float

    def as_row(self) -> Dict[str, object]:
        return {
            "t": self.t,
            "mode": self.mode.value,
            "speed": self.speed,
            "rho": self.rho,
            "job_id": self.job or "",
            "E_working": self.e_working,
            "E_idle": self.e_idle,
            "E_wakeup": self.e_wakeup,
        }


@dataclass(frozen=True)
class TraceEvent:
    """A discrete event of a run."""

    t: float
    kind: EventKind
    detail: str = ""

    def as_row(self) -> Dict[str, object]:
        return {"t": self.t, "event_kind": self.kind.value, "detail": self.detail}


@dataclass(frozen=True)
class Trace:
    """Immutable record of an online run.

    Attributes:
        instance: The simulated instance.
        policy: Name of the policy.
        params: Power parameters of the run.
        samples: One sample per simulation step.
        events: Discrete events in time order.
        segments: Executed behaviour as schedule segments.
        energy: Final energy breakdown.
        end_time: Time at which the run stopped.
    """

    instance: Instance
    policy: str
    params: PowerParams
    samples: Tuple[TraceSample, ...]
    events: Tuple[TraceEvent, ...]
    segments: Tuple[Segment, ...]
    energy: EnergyBreakdown
    end_time: float
    step: float = field(default=1e-3, compare=False)

    @property
    def total_energy(self) -> float:
        return self.energy.total

    @property
    def wake_count(self) -> int:
        return sum(1 for event in self.events if event.kind is EventKind.WAKE)

    def events_of(self, kind: EventKind) -> List[TraceEvent]:
        return [event for event in self.events if event.kind is kind]

    def to_schedule(self) -> Schedule:
        """Return the run as an offline schedule over [0, end_time]."""
        return Schedule(segments=self.segments, horizon=self.end_time, instance=self.instance)

    def sample_rows(self) -> List[Dict[str, object]]:
        return [sample.as_row() for sample in self.samples]

    def event_rows(self) -> List[Dict[str, object]]:
        return [event.as_row() for event in self.events]
