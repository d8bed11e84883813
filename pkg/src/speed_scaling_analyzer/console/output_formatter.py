"""Console formatting of run results, instances and errors."""

import logging
import traceback
from typing import List, Optional, Sequence

from ..generators.report_generator import ReportGenerator
from ..models.job import Instance
from ..models.reports import CaseReport, LemmaReport, RatioRow, RunSummary, ViolationReport
from ..schedulers.simulator import ConvergenceResult


class OutputFormatter:
    """Formats harness results for console display.

    Tables are rendered by the report generator's templates; this class adds
    the short sections printed around them.
    """

    def __init__(self, verbose: bool = False, reports: Optional[ReportGenerator] = None):
        """Initialize the output formatter.

        Args:
            verbose: Whether to include extra detail.
            reports: Renderer of the tables.
        """
        self.verbose = verbose
        self.reports = reports or ReportGenerator()
        self.logger = logging.getLogger(self.__class__.__name__)

    def format_summaries(self, summaries: Sequence[RunSummary]) -> str:
        if not summaries:
            return "No runs."
        return self.reports.render_summaries(summaries)

    def format_ratios(self, rows: Sequence[RatioRow], basis: str = "total") -> str:
        if not rows:
            return "No ratios computed."
        return self.reports.render_ratios(rows, basis)

    def format_case_report(self, report: CaseReport) -> str:
        return self.reports.render_case_report(report)

    def format_verification(self, lemma_reports: List[LemmaReport], amortized_reports: List[ViolationReport]) -> str:
        max_listed = 50 if self.verbose else 5
        return self.reports.render_verification(lemma_reports, amortized_reports, max_listed=max_listed)

    def format_convergence(self, result: ConvergenceResult) -> str:
        lines = ["Convergence", "-" * 40]
        for step, energy in zip(result.steps, result.energies):
            lines.append(f"  h={step:<12.6g} total={energy:.9g}")
        if result.ratios:
            lines.append("  difference ratios: " + ", ".join(f"{r:.3g}" for r in result.ratios))
        return "\n".join(lines)

    def format_instance(self, instance: Instance, idle_timeout: Optional[float] = None) -> str:
        """Describe an instance: job count, horizon, densities and gaps.

        With an idle timeout L/g the minimum gap is compared against it.
        """
        lines = [f"Instance: {instance.name}", "-" * (10 + len(instance.name))]
        lines.append(f"Jobs: {len(instance)}")
        if not instance.jobs:
            return "\n".join(lines)

        densities = [job.density for job in instance]
        lines.append(f"Horizon: {instance.horizon:.6g}")
        lines.append(f"Total volume: {instance.total_volume:.6g}")
        lines.append(f"Density: min {min(densities):.6g}, max {max(densities):.6g}")

        gaps = instance.uncovered_gaps()
        if gaps:
            smallest = min(end - start for start, end in gaps)
            lines.append(f"Gaps: {len(gaps)}, minimum gap {smallest:.6g}")
            if idle_timeout is not None:
                verdict = "exceeds" if smallest > idle_timeout else "does not exceed"
                lines.append(f"Minimum gap {verdict} L/g = {idle_timeout:.6g}")
        else:
            lines.append("Gaps: none")

        if self.verbose:
            lines.append("")
            lines.append(f"{'ID':<10} {'r':>10} {'d':>10} {'w':>10} {'density':>10}")
            for job in instance:
                lines.append(
                    f"{job.id:<10} {job.release:>10.6g} {job.deadline:>10.6g} {job.volume:>10.6g} {job.density:>10.6g}"
                )
        return "\n".join(lines)

    def format_error(self, error: Exception, verbose: bool = False) -> str:
        """Format an error message for console output.

        Args:
            error: The exception to format.
            verbose: Whether to include the stack trace.
        """
        lines = [f"{type(error).__name__}: {error}"]
        if verbose:
            lines.append("")
            lines.append("Stack trace:")
            lines.extend(traceback.format_exception(type(error), error, error.__traceback__))
        return "\n".join(lines)
