"""Power model data: parameters, processor modes and analysis constants."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from ..exceptions import DomainError


class ProcessorMode(str, Enum):
    """Processor state in the sleep-state model."""

    WORKING = "working"
    IDLE = "idle"
    SLEEP = "sleep"

    @property
    def is_active(self) -> bool:
        """Return True when the processor pays static power."""
        return self is not ProcessorMode.SLEEP


@dataclass(frozen=True)
class PowerParams:
    """Energy model P(s) = s^alpha + g with wake-up energy L.

    Attributes:
        alpha: Power exponent, strictly greater than 1.
        g: Static power paid while active (working or idle), strictly positive.
        L: Energy charged on every sleep to active transition.
        q: Speed multiplier of qOA/SqOA; defaults to 2 - 1/alpha.
    """

    alpha: float
    g: float
    L: float = 0.0
    q: Optional[float] = field(default=None)

    def __post_init__(self):
        """Validate parameters and fill in the default multiplier."""
        if not self.alpha > 1:
            raise DomainError(f"alpha must be > 1, got {self.alpha}")
        if not self.g > 0:
            raise DomainError(f"g must be > 0, got {self.g}")
        if self.L < 0:
            raise DomainError(f"L must be >= 0, got {self.L}")
        if self.q is None:
            object.__setattr__(self, "q", 2.0 - 1.0 / self.alpha)
        elif self.q < 1:
            raise DomainError(f"q must be >= 1, got {self.q}")

    @property
    def default_q(self) -> float:
        return 2.0 - 1.0 / self.alpha

    @property
    def critical_speed(self) -> float:
        """Closed form minimiser of P(s)/s."""
        return (self.g / (self.alpha - 1.0)) ** (1.0 / self.alpha)

    @property
    def min_energy_per_work(self) -> float:
        """P(s*)/s*, the least energy any speed spends per unit of work."""
        s_star = self.critical_speed
        return (s_star ** self.alpha + self.g) / s_star

    @property
    def idle_timeout(self) -> float:
        """Idle time after which sleeping pays for the wake-up (L/g)."""
        return self.L / self.g

    def with_q(self, q: float) -> "PowerParams":
        """Return a copy with a different speed multiplier."""
        return PowerParams(alpha=self.alpha, g=self.g, L=self.L, q=q)


@dataclass(frozen=True)
class AnalysisConstants:
    """Constants of the amortized analysis.

    Attributes:
        beta: Weight of the potential function.
        c: Working-energy competitive constant.
        c_total: Total-energy bound max{4, c + 2}.
    """

    beta: float
    c: float
    c_total: float

    @classmethod
    def from_params(cls, params: PowerParams, beta_scale: float = 1.0) -> "AnalysisConstants":
        """Derive beta = c = q^alpha * 2^(alpha-1) from the power parameters.

        Args:
            params: Power parameters (their q is used).
            beta_scale: Multiplier applied to beta only; 1.0 outside fault-injection tests.
        """
        c = params.q ** params.alpha * 2.0 ** (params.alpha - 1.0)
        return cls(beta=c * beta_scale, c=c, c_total=max(4.0, c + 2.0))
