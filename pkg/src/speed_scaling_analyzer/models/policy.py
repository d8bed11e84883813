"""Online policy descriptors."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from ..exceptions import UsageError
from .power import PowerParams, ProcessorMode


class PolicyKind(str, Enum):
    """Online speed scaling policies."""

    OA = "OA"
    AVR = "AVR"
    QOA = "qOA"
    SOA = "SOA"
    SQOA = "SqOA"

    @classmethod
    def parse(cls, name: str) -> "PolicyKind":
        """Look a policy up by name, case-insensitively.

        Raises:
            UsageError: If the name is not a known policy.
        """
        for kind in cls:
            if kind.value.lower() == name.strip().lower():
                return kind
        raise UsageError(f"Unknown policy: {name!r}. Must be one of {[k.value for k in cls]}")

    @property
    def manages_sleep(self) -> bool:
        """Return True for the policies with the idle/sleep rules."""
        return self in (PolicyKind.SOA, PolicyKind.SQOA)


@dataclass(frozen=True)
class Policy:
    """A policy with its speed multiplier.

    SOA is SqOA with q = 1 and OA is qOA with q = 1; AVR ignores q.

    Attributes:
        kind: Which policy.
        q: Multiplier applied to the highest density.
    """

    kind: PolicyKind
    q: float = 1.0

    def __post_init__(self):
        if self.q < 1:
            raise ValueError(f"q must be >= 1, got {self.q}")

    @classmethod
    def create(cls, kind: PolicyKind, params: PowerParams, q: Optional[float] = None) -> "Policy":
        """Build a policy, taking q from params for qOA/SqOA unless overridden."""
        if kind in (PolicyKind.OA, PolicyKind.SOA, PolicyKind.AVR):
            return cls(kind=kind, q=1.0)
        return cls(kind=kind, q=params.q if q is None else q)

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def manages_sleep(self) -> bool:
        return self.kind.manages_sleep


@dataclass(frozen=True)
class ProcessorState:
    """Mode of the processor and the last time it was working.

    Attributes:
        mode: Current processor mode.
        last_working_time: t', the last time in the working state (0 if never).
    """

    mode: ProcessorMode = ProcessorMode.SLEEP
    last_working_time: float = 0.0
