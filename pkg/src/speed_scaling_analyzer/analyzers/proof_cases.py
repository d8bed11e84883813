"""Grid audit of the scalar inequalities behind the competitive ratio.

Every inequality is written as ``lhs <= 0`` in normalised variables: x is a
speed ratio (usually s_o / g_0) and y a density ratio in [0, 1]. For each
alpha, q = 2 - 1/alpha and beta = c = q^alpha * 2^(alpha-1); beta can be
scaled separately to check that a corrupted constant is caught.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence

import numpy as np

from speed_scaling_analyzer.models.reports import CaseReport, CaseResult

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-9


def default_grid(start: float, stop: float, step: float) -> np.ndarray:
    """Return start, start + step, ..., stop with the endpoint included."""
    count = int(round((stop - start) / step)) + 1
    return np.round(start + step * np.arange(count), 10)


DEFAULT_ALPHA_GRID = default_grid(1.1, 5.0, 0.05)
DEFAULT_X_GRID = default_grid(0.0, 10.0, 0.01)
DEFAULT_Y_GRID = default_grid(0.0, 1.0, 0.01)


@dataclass(frozen=True)
class Constants:
    """Per-alpha constants broadcast against the x (and y) axes."""

    alpha: np.ndarray
    q: np.ndarray
    beta: np.ndarray
    c: np.ndarray


def _constants(alpha: np.ndarray, beta_scale: float) -> Constants:
    q = 2.0 - 1.0 / alpha
    c = q ** alpha * 2.0 ** (alpha - 1.0)
    return Constants(alpha=alpha, q=q, beta=c * beta_scale, c=c)


def case1_reduced(k: Constants, x: np.ndarray) -> np.ndarray:
    a = k.alpha
    return (1.0 + x) ** a - k.beta / k.q ** a * (a + x ** a)


def case1a_low(k: Constants, x: np.ndarray) -> np.ndarray:
    """Online speed q g_0 against OPT speed x g_0."""
    a, q, b = k.alpha, k.q, k.beta
    return (q ** a - b * a * q + b * (a - 1.0)) + b * a * x - k.c * x ** a


def case1b(k: Constants, x: np.ndarray) -> np.ndarray:
    """Online speed q (g_0 + s_o) against OPT speed x g_0."""
    a, q, b = k.alpha, k.q, k.beta
    return (q ** a * (1.0 + x) ** a - b * (q * a - (a - 1.0))
            - b * a * (q - 1.0) * x - k.c * x ** a)


def case3(k: Constants, x: np.ndarray) -> np.ndarray:
    return np.where(x >= 1.0, 1.0 - k.alpha * x ** (k.alpha - 1.0), -np.inf)


def case5a(k: Constants, x: np.ndarray) -> np.ndarray:
    return k.c * x - k.c * x ** k.alpha - (k.c - 1.0) * k.alpha


def case6_low(k: Constants, x: np.ndarray) -> np.ndarray:
    a = k.alpha
    return np.where(x >= 1.0, (k.q ** a - a * k.beta) * x ** a + a - 1.0, -np.inf)


def case6_high(k: Constants, x: np.ndarray) -> np.ndarray:
    a, q, b = k.alpha, k.q, k.beta
    value = (q ** a * (1.0 + x) ** a - b * a * q * (1.0 + x) * x ** (a - 1.0)
             + b * (a - 1.0) * x ** a + a - 1.0)
    return np.where(x >= 1.0, value, -np.inf)


def case7(k: Constants, x: np.ndarray) -> np.ndarray:
    a, q, b = k.alpha, k.q, k.beta
    return np.where(x <= 1.0, q ** a * (1.0 + x) ** a - b * q * (1.0 + x) + a - 1.0, -np.inf)


def case7_weight(k: Constants, x: np.ndarray) -> np.ndarray:
    """beta must be at least alpha."""
    return np.broadcast_to(k.alpha - k.beta, np.broadcast(k.alpha, x).shape)


def case8(k: Constants, x: np.ndarray) -> np.ndarray:
    return x - x ** k.alpha - (k.alpha - 1.0)


def ineq3(k: Constants, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    a, q, b, c = k.alpha, k.q, k.beta, k.c
    return (q ** a * y ** a * (1.0 + x) ** a - b * q * (1.0 + x) * y + b * x * y
            - c * x ** a * y ** a - (c - 1.0) * (a - 1.0))


CASES_2D: Dict[str, Callable[[Constants, np.ndarray], np.ndarray]] = {
    "case1_reduced": case1_reduced,
    "case1a_low": case1a_low,
    "case1b": case1b,
    "case3": case3,
    "case5a": case5a,
    "case6_low": case6_low,
    "case6_high": case6_high,
    "case7": case7,
    "case7_weight": case7_weight,
    "case8": case8,
}


class ProofCaseAuditor:
    """Evaluates the proof inequalities over (alpha, x) and (alpha, x, y) grids."""

    def __init__(self, tolerance: float = DEFAULT_TOLERANCE, beta_scale: float = 1.0):
        """Initialize the auditor.

        Args:
            tolerance: Largest accepted positive left-hand side.
            beta_scale: Multiplier on beta; 1.0 except when injecting a fault.
        """
        self.tolerance = tolerance
        self.beta_scale = beta_scale
        self.logger = logging.getLogger(self.__class__.__name__)

    def _result(self, name: str, values: np.ndarray, alpha: np.ndarray, x: np.ndarray,
                y: Optional[np.ndarray] = None) -> CaseResult:
        index = np.unravel_index(int(np.argmax(values)), values.shape)
        worst = float(values[index])
        return CaseResult(
            name=name,
            max_slack=worst,
            alpha=float(alpha[index[0]]),
            x=float(x[index[1]]),
            y=float(y[index[2]]) if y is not None else None,
            points=int(np.isfinite(values).sum()),
            passed=worst <= self.tolerance,
        )

    def run(self, alpha_grid: Sequence[float], x_grid: Sequence[float], y_grid: Sequence[float]) -> CaseReport:
        alpha = np.asarray(alpha_grid, dtype=float)
        x = np.asarray(x_grid, dtype=float)
        y = np.asarray(y_grid, dtype=float)

        k2 = _constants(alpha[:, None], self.beta_scale)
        results = []
        with np.errstate(over="ignore", invalid="ignore"):
            for name, case in CASES_2D.items():
                results.append(self._result(name, case(k2, x[None, :]), alpha, x))

            # One alpha at a time keeps the (x, y) slab small.
            worst = np.full((len(alpha), len(x), len(y)), -np.inf)
            for i, a in enumerate(alpha):
                k = _constants(np.array(a), self.beta_scale)
                worst[i] = ineq3(k, x[:, None], y[None, :])
            results.append(self._result("ineq3", worst, alpha, x, y))

        report = CaseReport(results=results, tolerance=self.tolerance, beta_scale=self.beta_scale)
        if report.passed:
            self.logger.info(f"Proof cases: all {len(results)} inequalities hold on the grid")
        else:
            self.logger.warning(f"Proof cases failing: {', '.join(report.failed)}")
        return report


def proof_case_suite(
    alpha_grid: Sequence[float] = DEFAULT_ALPHA_GRID,
    x_grid: Sequence[float] = DEFAULT_X_GRID,
    y_grid: Sequence[float] = DEFAULT_Y_GRID,
    beta_scale: float = 1.0,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CaseReport:
    """Audit every proof inequality over the given grids."""
    return ProofCaseAuditor(tolerance=tolerance, beta_scale=beta_scale).run(alpha_grid, x_grid, y_grid)
