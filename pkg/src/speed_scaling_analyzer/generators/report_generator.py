"""CSV, JSON and plain-text reports of runs, ratios and verification results."""

import csv
import json
import logging
import re
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence

from jinja2 import DictLoader, Environment, StrictUndefined

from ..models.reports import CaseReport, LemmaReport, RatioRow, RunSummary, ViolationReport
from ..models.schedule import Schedule
from ..models.trace import Trace

TRACE_FIELDS = ["t", "mode", "speed", "rho", "job_id", "E_working", "E_idle", "E_wakeup"]
EVENT_FIELDS = ["t", "event_kind", "detail"]
SCHEDULE_FIELDS = ["start", "end", "state", "speed", "job_id"]
RATIO_FIELDS = [
    "instance", "policy", "energy", "opt_energy", "lower_bound",
    "ratio_opt", "ratio_lower_bound", "bound", "flagged", "note",
]

_TEMPLATES = {
    "summary.txt": """\
Run Summary
{{ "=" * 78 }}
{{ "%-24s %-6s %10s %10s %10s %10s %5s %-8s"|format("Instance", "Policy", "Total", "Working", "Idle", "Wakeup", "Wakes", "Feasible") }}
{{ "-" * 78 }}
{% for row in rows %}
{{ "%-24s %-6s %10s %10s %10s %10s %5d %-8s"|format(row.instance|truncate_name, row.policy, row.total|num, row.working|num, row.idle|num, row.wakeup|num, row.wake_count, "yes" if row.feasible else "NO") }}
{% if row.detail %}
    {{ row.detail }}
{% endif %}
{% endfor %}
""",
    "ratios.txt": """\
Competitive Ratios ({{ basis }} energy)
{{ "=" * 86 }}
{{ "%-24s %-6s %10s %10s %10s %9s %9s %8s"|format("Instance", "Policy", "Energy", "OPT", "Lower bd", "E/OPT", "E/LB", "Bound") }}
{{ "-" * 86 }}
{% for row in rows %}
{{ "%-24s %-6s %10s %10s %10s %9s %9s %8s"|format(row.instance|truncate_name, row.policy, row.energy|num, row.opt_energy|num, row.lower_bound|num, row.ratio_opt|num, row.ratio_lower_bound|num, row.bound|num) }}{{ "  FLAGGED" if row.flagged else "" }}{{ "  (" ~ row.note ~ ")" if row.note else "" }}
{% endfor %}
{{ "-" * 86 }}
{% if worst %}
Max ratio: {{ worst_ratio|num }} ({{ worst.policy }} on {{ worst.instance|truncate_name }})
{% else %}
Max ratio: n/a
{% endif %}
Flagged rows: {{ flagged }}
""",
    "cases.txt": """\
Proof Case Audit (tolerance {{ report.tolerance }}{{ ", beta x " ~ report.beta_scale if report.beta_scale != 1.0 else "" }})
{{ "=" * 72 }}
{{ "%-15s %14s %8s %8s %8s %10s %-4s"|format("Case", "Max lhs", "alpha", "x", "y", "Points", "") }}
{{ "-" * 72 }}
{% for r in report.results %}
{{ "%-15s %14.6e %8.3f %8.3f %8s %10d %-4s"|format(r.name, r.max_slack, r.alpha, r.x, "-" if r.y is none else "%.3f"|format(r.y), r.points, "ok" if r.passed else "FAIL") }}
{% endfor %}
{{ "-" * 72 }}
Result: {{ "PASS" if report.passed else "FAIL (" ~ report.failed|join(", ") ~ ")" }}
""",
    "verification.txt": """\
Verification of {{ count }} run pair(s)
{{ "=" * 60 }}
{% for report in lemma_reports %}
{{ report.instance }}/{{ report.policy }} lemmas: {{ "ok" if report.passed else report.violations|length ~ " violation(s)" }}
{% for v in report.violations[:max_listed] %}
    {{ v.check }} at t={{ v.t|num }}: {{ v.value|num }} vs {{ v.bound|num }} {{ v.detail }}
{% endfor %}
{% endfor %}
{% for report in amortized_reports %}
{{ report.instance }}/{{ report.policy }} amortized (slack {{ report.slack|num }}): {{ "ok" if report.passed else report.violations|length ~ " violation(s)" }}
{% for v in report.violations[:max_listed] %}
    {{ v.check }} at t={{ v.t|num }}: {{ v.value|num }} vs {{ v.bound|num }} {{ v.detail }}
{% endfor %}
{% endfor %}
""",
}


def _num(value: Optional[float]) -> str:
    if value is None:
        return "-"
    return f"{value:.6g}"


def _truncate_name(value: str, width: int = 24) -> str:
    return value if len(value) <= width else value[:width - 1] + "~"


def run_identity(*parts: str) -> str:
    """Return a file-name-safe identity for a run."""
    return "_".join(re.sub(r"[^A-Za-z0-9.-]+", "-", part) for part in parts if part)


class ReportGenerator:
    """Writes result files into an output directory and renders text tables."""

    def __init__(self, output_dir: Optional[Path] = None):
        """Initialize the generator.

        Args:
            output_dir: Directory for result files (created on first write).
        """
        self.output_dir = Path(output_dir) if output_dir is not None else Path("results")
        self.logger = logging.getLogger(self.__class__.__name__)
        self.env = Environment(
            loader=DictLoader(_TEMPLATES),
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
            undefined=StrictUndefined,
        )
        self.env.filters["num"] = _num
        self.env.filters["truncate_name"] = _truncate_name

    def _path(self, name: str) -> Path:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        return self.output_dir / name

    def write_csv(self, name: str, rows: Iterable[Mapping[str, Any]], fieldnames: Sequence[str]) -> Path:
        path = self._path(name)
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.DictWriter(handle, fieldnames=list(fieldnames))
            writer.writeheader()
            for row in rows:
                writer.writerow({key: "" if row.get(key) is None else row.get(key) for key in fieldnames})
        self.logger.debug(f"Wrote {path}")
        return path

    def write_json(self, name: str, payload: Any) -> Path:
        path = self._path(name)
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(payload, handle, indent=2, sort_keys=True)
            handle.write("\n")
        self.logger.debug(f"Wrote {path}")
        return path

    def write_trace(self, trace: Trace) -> Dict[str, Path]:
        """Write the sample, event and segment CSVs of a run."""
        identity = run_identity(trace.instance.name, trace.policy)
        return {
            "trace": self.write_csv(f"{identity}_trace.csv", trace.sample_rows(), TRACE_FIELDS),
            "events": self.write_csv(f"{identity}_events.csv", trace.event_rows(), EVENT_FIELDS),
            "schedule": self.write_schedule(trace.to_schedule(), f"{identity}_schedule.csv"),
        }

    def write_schedule(self, schedule: Schedule, name: str) -> Path:
        return self.write_csv(name, schedule.to_rows(), SCHEDULE_FIELDS)

    def write_summary(self, summary: RunSummary) -> Path:
        identity = run_identity(summary.instance, summary.policy)
        return self.write_json(f"{identity}_summary.json", summary.as_dict())

    def write_ratios(self, rows: Sequence[RatioRow], name: str = "ratios.csv") -> Path:
        return self.write_csv(name, (row.as_dict() for row in rows), RATIO_FIELDS)

    def render_summaries(self, summaries: Sequence[RunSummary]) -> str:
        return self.env.get_template("summary.txt").render(rows=summaries)

    def render_ratios(self, rows: Sequence[RatioRow], basis: str = "total") -> str:
        worst: Optional[RatioRow] = None
        worst_ratio = None
        for row in rows:
            value = row.ratio_opt if row.ratio_opt is not None else row.ratio_lower_bound
            if worst_ratio is None or value > worst_ratio:
                worst, worst_ratio = row, value
        return self.env.get_template("ratios.txt").render(
            rows=rows,
            basis=basis,
            worst=worst,
            worst_ratio=worst_ratio,
            flagged=sum(1 for row in rows if row.flagged),
        )

    def render_case_report(self, report: CaseReport) -> str:
        return self.env.get_template("cases.txt").render(report=report)

    def render_verification(self, lemma_reports: List[LemmaReport], amortized_reports: List[ViolationReport],
                            max_listed: int = 5) -> str:
        return self.env.get_template("verification.txt").render(
            lemma_reports=lemma_reports,
            amortized_reports=amortized_reports,
            count=max(len(lemma_reports), len(amortized_reports)),
            max_listed=max_listed,
        )
