"""Competitive ratios and run summaries."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Sequence

from speed_scaling_analyzer.analyzers.power_model import competitive_bound
from speed_scaling_analyzer.exceptions import InfeasibleGridError, StateLimitError, UsageError
from speed_scaling_analyzer.models.job import Instance
from speed_scaling_analyzer.models.policy import PolicyKind
from speed_scaling_analyzer.models.power import PowerParams
from speed_scaling_analyzer.models.reports import RatioRow, RunSummary
from speed_scaling_analyzer.models.schedule import BruteGrid, EnergyBreakdown, Schedule
from speed_scaling_analyzer.models.trace import Trace
from speed_scaling_analyzer.schedulers.brute_force import brute_force_opt
from speed_scaling_analyzer.schedulers.offline import default_speed_grid, opt_lower_bound


class EnergyBasis(str, Enum):
    """Which energy a ratio compares."""

    TOTAL = "total"
    WORKING = "working"

    @classmethod
    def parse(cls, name: str) -> "EnergyBasis":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise UsageError(f"Unknown energy basis: {name!r}. Must be 'total' or 'working'")


def basis_energy(energy: EnergyBreakdown, basis: EnergyBasis) -> float:
    return energy.total if basis is EnergyBasis.TOTAL else energy.working


def ratio_bound(params: PowerParams, policy: str, basis: EnergyBasis) -> Optional[float]:
    """Return the proven ratio of a policy on the given basis, or None.

    Total energy: max{4, c + 2}. Working energy: c, which is
    (2 - 1/alpha)^alpha * 2^(alpha-1) for SqOA and alpha^alpha for SOA.
    """
    kind = PolicyKind.parse(policy)
    if not kind.manages_sleep:
        return None
    if basis is EnergyBasis.TOTAL:
        return competitive_bound(params, kind)
    alpha = params.alpha
    if kind is PolicyKind.SQOA:
        return (2.0 - 1.0 / alpha) ** alpha * 2.0 ** (alpha - 1.0)
    return alpha ** alpha


@dataclass(frozen=True)
class OfflineReference:
    """Denominators of the ratios of one instance.

    Attributes:
        schedule: Brute-force optimum (None after a fallback).
        energy: Its energy breakdown (None after a fallback).
        lower_bound: Lower bound on the optimum.
        note: Why the optimum is missing, if it is.
    """

    schedule: Optional[Schedule]
    energy: Optional[EnergyBreakdown]
    lower_bound: float
    note: str = ""


class RatioCalculator:
    """Compute online to offline energy ratios."""

    def __init__(
        self,
        params: PowerParams,
        grid_dt: float = 0.05,
        speeds: Optional[Sequence[float]] = None,
        max_states: int = 200_000,
        basis: EnergyBasis = EnergyBasis.TOTAL,
        slack: float = 0.0,
    ):
        """Initialize the calculator.

        Args:
            params: Power parameters.
            grid_dt: Slot length of the brute-force optimum.
            speeds: Brute-force speed set (None for the default grid of each instance).
            max_states: State cap of the brute-force program.
            basis: Total or working energy.
            slack: Allowed excess over the proven ratio before a row is flagged.
        """
        self.params = params
        self.grid_dt = grid_dt
        self.speeds = tuple(speeds) if speeds else None
        self.max_states = max_states
        self.basis = EnergyBasis(basis)
        self.slack = slack
        self.logger = logging.getLogger(self.__class__.__name__)

    def grid_for(self, instance: Instance) -> BruteGrid:
        speeds = self.speeds or default_speed_grid(instance, self.params, dt=self.grid_dt)
        return BruteGrid(dt=self.grid_dt, speeds=speeds, max_states=self.max_states)

    def reference(self, instance: Instance) -> OfflineReference:
        """Solve the brute-force optimum, falling back to the lower bound."""
        lower = opt_lower_bound(instance, self.params)
        if not instance.jobs:
            return OfflineReference(schedule=None, energy=EnergyBreakdown(), lower_bound=lower)
        try:
            schedule, energy = brute_force_opt(instance, self.params, self.grid_for(instance))
        except (InfeasibleGridError, StateLimitError) as e:
            self.logger.warning(f"{instance.name}: brute force unavailable ({e}); using the lower bound")
            return OfflineReference(schedule=None, energy=None, lower_bound=lower, note=f"lower bound only: {e}")
        return OfflineReference(schedule=schedule, energy=energy, lower_bound=lower)

    def calculate(self, instance: Instance, traces: Iterable[Trace],
                  reference: Optional[OfflineReference] = None) -> List[RatioRow]:
        """Return one row per trace.

        Args:
            instance: Instance the traces ran on.
            traces: Online runs.
            reference: Precomputed offline reference (solved here when None).
        """
        reference = reference or self.reference(instance)
        rows = []
        for trace in traces:
            rows.append(self._row(instance, trace, reference))
        return rows

    def _row(self, instance: Instance, trace: Trace, reference: OfflineReference) -> RatioRow:
        energy = basis_energy(trace.energy, self.basis)
        bound = ratio_bound(self.params, trace.policy, self.basis)

        if not instance.jobs:
            return RatioRow(
                instance=instance.name, policy=trace.policy, energy=energy, opt_energy=0.0,
                lower_bound=0.0, ratio_opt=1.0, ratio_lower_bound=1.0, bound=bound,
                note="empty instance: 0/0 taken as 1",
            )

        opt_energy = basis_energy(reference.energy, self.basis) if reference.energy is not None else None
        ratio_opt = energy / opt_energy if opt_energy else None
        ratio_lb = energy / reference.lower_bound if reference.lower_bound > 0 else 1.0
        flagged = bound is not None and ratio_opt is not None and ratio_opt > bound + self.slack
        if flagged:
            self.logger.warning(
                f"{instance.name}/{trace.policy}: ratio {ratio_opt:.6g} exceeds bound {bound:.6g}"
            )
        return RatioRow(
            instance=instance.name,
            policy=trace.policy,
            energy=energy,
            opt_energy=opt_energy,
            lower_bound=reference.lower_bound,
            ratio_opt=ratio_opt,
            ratio_lower_bound=ratio_lb,
            bound=bound,
            flagged=flagged,
            note=reference.note,
        )


def max_ratio(rows: Iterable[RatioRow]) -> Optional[RatioRow]:
    """Return the row with the largest ratio against OPT (lower bound when OPT is missing)."""
    def key(row: RatioRow) -> float:
        return row.ratio_opt if row.ratio_opt is not None else row.ratio_lower_bound
    return max(rows, key=key, default=None)


def summarize(trace: Trace, feasible: bool = True, detail: str = "") -> RunSummary:
    """Return the energy summary of a run."""
    energy = trace.energy
    return RunSummary(
        instance=trace.instance.name,
        policy=trace.policy,
        total=energy.total,
        working=energy.working,
        idle=energy.idle,
        wakeup=energy.wakeup,
        dynamic=energy.dynamic_only,
        wake_count=energy.wake_count,
        feasible=feasible and trace.to_schedule().is_feasible(),
        end_time=trace.end_time,
        detail=detail,
    )
