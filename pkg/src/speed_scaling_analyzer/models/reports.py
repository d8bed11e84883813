"""Analysis structures and verification report data models."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple


@dataclass(frozen=True)
class CriticalPartition:
    """Critical times of the excess unfinished work at a point in time.

    Attributes:
        times: t_0 < t_1 < ... < t_h.
        densities: g_i, excess work of (t_i, t_{i+1}] over its length.
        clamped: max{s*, g_i}.
        alg_work: Online pending work with deadline in (t_i, t_{i+1}].
        opt_work: Offline pending work with deadline in (t_i, t_{i+1}].
    """

    times: Tuple[float, ...]
    densities: Tuple[float, ...] = ()
    clamped: Tuple[float, ...] = ()
    alg_work: Tuple[float, ...] = ()
    opt_work: Tuple[float, ...] = ()

    def __post_init__(self):
        count = len(self.densities)
        if not self.times:
            raise ValueError("A partition needs at least its start time")
        if len(self.times) != count + 1 or not len(self.clamped) == len(self.alg_work) == len(self.opt_work) == count:
            raise ValueError("Partition fields have inconsistent lengths")

    @property
    def size(self) -> int:
        """Number of critical intervals h."""
        return len(self.densities)

    @property
    def g0(self) -> float:
        """Density of the first interval (0 for an empty partition)."""
        return self.densities[0] if self.densities else 0.0

    @property
    def excess(self) -> Tuple[float, ...]:
        """d(t_i, t_{i+1}) per interval."""
        return tuple(max(0.0, a - o) for a, o in zip(self.alg_work, self.opt_work))

    def intervals(self) -> List[Tuple[float, float]]:
        return list(zip(self.times, self.times[1:]))


@dataclass(frozen=True)
class PotentialSample:
    """Potential and energies at a sample time.

    Attributes:
        t: Sample time.
        phi: Potential with the signed difference w_a - w_o.
        phi_clamped: Potential with the clamped excess d.
        e_alg: Online working energy up to t.
        e_opt: Offline working energy up to t.
    """

    t: float
    phi: float
    phi_clamped: float
    e_alg: float
    e_opt: float

    def as_dict(self) -> Dict[str, float]:
        return {
            "t": self.t,
            "phi": self.phi,
            "phi_clamped": self.phi_clamped,
            "E_alg": self.e_alg,
            "E_opt": self.e_opt,
        }


@dataclass(frozen=True)
class Violation:
    """A failed check.

    Attributes:
        check: Name of the check.
        t: Time (or grid point label) of the failure.
        value: Observed left-hand side.
        bound: Right-hand side it had to stay under.
        detail: Context for the reader.
    """

    check: str
    t: float
    value: float
    bound: float
    detail: str = ""

    def as_dict(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "t": self.t,
            "value": self.value,
            "bound": self.bound,
            "detail": self.detail,
        }


@dataclass
class ViolationReport:
    """Outcome of the amortized invariant check on one run pair.

    Attributes:
        instance: Instance name.
        policy: Online policy.
        samples: Potential samples.
        violations: Failed checks.
        max_divergence: Largest |phi - phi_clamped| over the samples.
        slack: Discretization slack tau added to the bound.
    """

    instance: str
    policy: str
    samples: List[PotentialSample] = field(default_factory=list)
    violations: List[Violation] = field(default_factory=list)
    max_divergence: float = 0.0
    slack: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        return {
            "instance": self.instance,
            "policy": self.policy,
            "passed": self.passed,
            "slack": self.slack,
            "max_divergence": self.max_divergence,
            "violations": [v.as_dict() for v in self.violations],
            "samples": [s.as_dict() for s in self.samples],
        }


@dataclass
class LemmaReport:
    """Outcome of the structural lemma checks on one run pair.

    Attributes:
        instance: Instance name.
        policy: Online policy.
        checked: Number of evaluations per check name.
        violations: Failed evaluations.
    """

    instance: str
    policy: str
    checked: Dict[str, int] = field(default_factory=dict)
    violations: List[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def count(self, check: str) -> None:
        self.checked[check] = self.checked.get(check, 0) + 1

    def violations_of(self, check: str) -> List[Violation]:
        return [v for v in self.violations if v.check == check]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "instance": self.instance,
            "policy": self.policy,
            "passed": self.passed,
            "checked": dict(self.checked),
            "violations": [v.as_dict() for v in self.violations],
        }


@dataclass(frozen=True)
class CaseResult:
    """Worst grid point of one proof inequality written as lhs <= 0.

    Attributes:
        name: Inequality name.
        max_slack: Largest left-hand side found.
        alpha: Exponent at the worst point.
        x: x at the worst point.
        y: y at the worst point (None when the inequality has no y).
        points: Number of grid points evaluated.
        passed: max_slack within tolerance.
    """

    name: str
    max_slack: float
    alpha: float
    x: float
    y: Optional[float]
    points: int
    passed: bool

    def as_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "max_slack": self.max_slack,
            "alpha": self.alpha,
            "x": self.x,
            "y": self.y,
            "points": self.points,
            "passed": self.passed,
        }


@dataclass
class CaseReport:
    """Results of the proof inequality audit.

    Attributes:
        results: One result per inequality.
        tolerance: Allowed positive slack.
        beta_scale: Multiplier applied to beta (1.0 unless testing a corrupted constant).
    """

    results: List[CaseResult]
    tolerance: float
    beta_scale: float = 1.0

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failed(self) -> List[str]:
        return [result.name for result in self.results if not result.passed]

    def get(self, name: str) -> CaseResult:
        for result in self.results:
            if result.name == name:
                return result
        raise KeyError(name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "tolerance": self.tolerance,
            "beta_scale": self.beta_scale,
            "results": [r.as_dict() for r in self.results],
        }


@dataclass(frozen=True)
class RunSummary:
    """Energy summary of one online run.

    Attributes:
        instance: Instance name.
        policy: Policy name.
        total: Total energy.
        working: Energy while working.
        idle: Energy while idle.
        wakeup: Wake-up energy.
        dynamic: Integral of s^alpha.
        wake_count: Number of wake-ups.
        feasible: Whether every job met its deadline.
        end_time: Time the run stopped.
        detail: Diagnostic when infeasible.
    """

    instance: str
    policy: str
    total: float
    working: float
    idle: float
    wakeup: float
    dynamic: float
    wake_count: int
    feasible: bool
    end_time: float
    detail: str = ""

    def as_dict(self) -> Dict[str, Any]:
        return {
            "instance": self.instance,
            "policy": self.policy,
            "total": self.total,
            "working": self.working,
            "idle": self.idle,
            "wakeup": self.wakeup,
            "dynamic": self.dynamic,
            "wake_count": self.wake_count,
            "feasible": self.feasible,
            "end_time": self.end_time,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class RatioRow:
    """Competitive ratio of one policy on one instance.

    Attributes:
        instance: Instance name.
        policy: Policy name.
        energy: Online energy on the chosen basis.
        opt_energy: Brute-force optimum on the same basis (None when unavailable).
        lower_bound: Lower bound on OPT.
        ratio_opt: energy / opt_energy (None when unavailable).
        ratio_lower_bound: energy / lower_bound.
        bound: Proven ratio of the policy, if any.
        flagged: Ratio exceeded bound plus slack.
        note: Remarks such as fallbacks or the 0/0 convention.
    """

    instance: str
    policy: str
    energy: float
    opt_energy: Optional[float]
    lower_bound: float
    ratio_opt: Optional[float]
    ratio_lower_bound: float
    bound: Optional[float] = None
    flagged: bool = False
    note: str = ""

    def as_dict(self) -> Dict[str, Any]:
        return {
            "instance": self.instance,
            "policy": self.policy,
            "energy": self.energy,
            "opt_energy": self.opt_energy,
            "lower_bound": self.lower_bound,
            "ratio_opt": self.ratio_opt,
            "ratio_lower_bound": self.ratio_lower_bound,
            "bound": self.bound,
            "flagged": self.flagged,
            "note": self.note,
        }
