"""Run configuration data model."""

import logging
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .policy import PolicyKind
from .power import PowerParams
from .trace import SimConfig

logger = logging.getLogger(__name__)

# Lower end of the proof-case audit grid.
AUDIT_ALPHA_MIN = 1.1

ALL_POLICIES = [kind.value for kind in PolicyKind]


class RunConfig(BaseModel):
    """Configuration shared by every harness command.

    Attributes:
        alpha: Power exponent.
        g: Static power.
        wake_energy: Wake-up energy L.
        q: Speed multiplier override for qOA/SqOA (default 2 - 1/alpha).
        policies: Policies to run.
        step: Largest simulation step h.
        event_tolerance: Accuracy of located events.
        bf_dt: Slot length of the brute-force optimum.
        bf_speeds: Brute-force speed set (None for the per-instance default).
        bf_max_states: State cap of the brute-force program.
        seeds: Seeds of generated instances.
        samples: Sample times of the analysis checks.
        energy_basis: Ratio basis, total or working.
        ratio_slack: Allowed excess over the proven ratio.
        workers: Parallel worker processes.
        output_dir: Where result files go.
        verbose: Debug logging.
    """

    model_config = ConfigDict(extra="forbid", validate_assignment=True, populate_by_name=True)

    alpha: float = Field(3.0, gt=1.0)
    g: float = Field(2.0, gt=0.0)
    wake_energy: float = Field(1.0, ge=0.0, alias="L")
    q: Optional[float] = Field(None, ge=1.0)
    policies: List[str] = Field(default_factory=lambda: list(ALL_POLICIES))
    step: float = Field(1e-3, gt=0.0)
    event_tolerance: float = Field(1e-9, gt=0.0)
    bf_dt: float = Field(0.05, gt=0.0)
    bf_speeds: Optional[List[float]] = None
    bf_max_states: int = Field(200_000, ge=1)
    seeds: List[int] = Field(default_factory=lambda: list(range(10)))
    samples: int = Field(200, ge=2)
    energy_basis: str = "total"
    ratio_slack: float = Field(1e-6, ge=0.0)
    workers: int = Field(1, ge=1)
    output_dir: Path = Path("results")
    verbose: bool = False

    @field_validator("policies", mode="before")
    @classmethod
    def _split_policies(cls, value):
        if isinstance(value, str):
            value = [part for part in value.split(",") if part.strip()]
        return value

    @field_validator("policies")
    @classmethod
    def _known_policies(cls, value: List[str]) -> List[str]:
        if not value:
            raise ValueError("at least one policy is required")
        return [PolicyKind.parse(name).value for name in value]

    @field_validator("bf_speeds", mode="before")
    @classmethod
    def _split_speeds(cls, value):
        if isinstance(value, str):
            value = [float(part) for part in value.split(",") if part.strip()]
        return value

    @field_validator("bf_speeds")
    @classmethod
    def _non_negative_speeds(cls, value: Optional[List[float]]) -> Optional[List[float]]:
        if value is not None:
            if any(s < 0 for s in value):
                raise ValueError("speeds must be >= 0")
            if not any(s > 0 for s in value):
                raise ValueError("at least one positive speed is required")
        return value

    @field_validator("seeds", mode="before")
    @classmethod
    def _split_seeds(cls, value):
        if isinstance(value, int):
            return [value]
        if isinstance(value, str):
            return [int(part) for part in value.split(",") if part.strip()]
        return value

    @field_validator("energy_basis")
    @classmethod
    def _known_basis(cls, value: str) -> str:
        value = value.strip().lower()
        if value not in ("total", "working"):
            raise ValueError("energy_basis must be 'total' or 'working'")
        return value

    @model_validator(mode="after")
    def _warn_outside_audit_grid(self) -> "RunConfig":
        if self.alpha < AUDIT_ALPHA_MIN:
            logger.warning(
                f"alpha={self.alpha} is below {AUDIT_ALPHA_MIN}, the lower end of the proof-case grid; "
                "bounds at this alpha are not covered by the audit"
            )
        return self

    def to_power_params(self) -> PowerParams:
        return PowerParams(alpha=self.alpha, g=self.g, L=self.wake_energy, q=self.q)

    def to_sim_config(self) -> SimConfig:
        return SimConfig(max_step=self.step, event_tolerance=self.event_tolerance)

    def policy_kinds(self) -> List[PolicyKind]:
        return [PolicyKind.parse(name) for name in self.policies]
