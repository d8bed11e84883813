"""Unit tests for console formatting and progress output."""

import pytest

from speed_scaling_analyzer.console.output_formatter import OutputFormatter
from speed_scaling_analyzer.console.progress_tracker import ProgressTracker
from speed_scaling_analyzer.exceptions import InstanceParseError
from speed_scaling_analyzer.models.reports import RatioRow
from speed_scaling_analyzer.schedulers.simulator import ConvergenceResult


@pytest.mark.unit
class TestOutputFormatter:
    """Test the formatter sections."""

    def test_instance_with_gap(self, far_jobs, params):
        text = OutputFormatter().format_instance(far_jobs, idle_timeout=params.idle_timeout)

        assert "Instance: far" in text
        assert "Jobs: 2" in text
        assert "Horizon: 4" in text
        assert "Gaps: 1, minimum gap 2" in text
        assert "Minimum gap exceeds L/g = 0.5" in text

    def test_instance_gap_below_timeout(self, far_jobs):
        text = OutputFormatter().format_instance(far_jobs, idle_timeout=5.0)
        assert "does not exceed" in text

    def test_instance_without_gaps(self, two_jobs):
        text = OutputFormatter().format_instance(two_jobs)
        assert "Gaps: none" in text
        assert "Density: min 0.5, max 2" in text

    def test_verbose_instance_lists_jobs(self, single_job):
        text = OutputFormatter(verbose=True).format_instance(single_job)
        assert "density" in text
        assert text.splitlines()[-1].startswith("J1")

    def test_empty_instance(self, empty_instance):
        text = OutputFormatter().format_instance(empty_instance)
        assert text.splitlines()[-1] == "Jobs: 0"

    def test_empty_tables(self):
        formatter = OutputFormatter()
        assert formatter.format_summaries([]) == "No runs."
        assert formatter.format_ratios([]) == "No ratios computed."

    def test_ratios(self):
        row = RatioRow("single", "SqOA", 13.0, 13.0, 12.0, 1.0, 13.0 / 12.0)
        assert "Max ratio: 1 (SqOA on single)" in OutputFormatter().format_ratios([row])

    def test_convergence(self):
        result = ConvergenceResult(steps=(0.1, 0.05, 0.025), energies=(13.2, 13.1, 13.05),
                                   ratios=(2.0,))
        text = OutputFormatter().format_convergence(result)
        assert "h=0.1" in text
        assert "total=13.05" in text
        assert "difference ratios: 2" in text

    def test_error(self):
        error = InstanceParseError("volume must be positive", record="J3")
        assert OutputFormatter().format_error(error).startswith("InstanceParseError:")

    def test_verbose_error_has_trace(self):
        try:
            raise ValueError("boom")
        except ValueError as e:
            text = OutputFormatter().format_error(e, verbose=True)
        assert "Stack trace:" in text
        assert "boom" in text


@pytest.mark.unit
class TestProgressTracker:
    """Test the progress tracker."""

    def test_track_returns_tracker(self):
        tracker = ProgressTracker()
        with tracker.track(3, "Simulating") as progress:
            assert progress is tracker
            progress.update(status="SqOA")
            progress.update(2)
        assert tracker._bar is None

    def test_disabled_tracker_has_no_bar(self):
        tracker = ProgressTracker(enabled=False)
        assert tracker.start(5) is None
        tracker.update()
        assert tracker.finish() == 0.0

    def test_messages(self, capsys):
        tracker = ProgressTracker()
        tracker.show_message("done")
        tracker.show_message("careful", "warning")
        tracker.show_message("broken", "error")

        captured = capsys.readouterr()
        assert "done" in captured.out
        assert "warning: careful" in captured.out
        assert "error: broken" in captured.err

    def test_disabled_tracker_still_reports_errors(self, capsys):
        tracker = ProgressTracker(enabled=False)
        tracker.show_message("quiet")
        tracker.show_message("loud", "error")

        captured = capsys.readouterr()
        assert "quiet" not in captured.out
        assert "error: loud" in captured.err
