"""Data models for the speed scaling analyzer."""

from .config import RunConfig
from .job import Instance, Job
from .pending import PendingJob, PendingWork
from .policy import Policy, PolicyKind, ProcessorState
from .power import AnalysisConstants, PowerParams, ProcessorMode
from .reports import (
    CaseReport,
    CaseResult,
    CriticalPartition,
    LemmaReport,
    PotentialSample,
    RatioRow,
    RunSummary,
    Violation,
    ViolationReport,
)
from .schedule import BruteGrid, EnergyBreakdown, Schedule, Segment
from .trace import EventKind, SimConfig, Trace, TraceEvent, TraceSample

__all__ = [
    "AnalysisConstants",
    "BruteGrid",
    "CaseReport",
    "CaseResult",
    "CriticalPartition",
    "EnergyBreakdown",
    "EventKind",
    "Instance",
    "Job",
    "LemmaReport",
    "PendingJob",
    "PendingWork",
    "Policy",
    "PolicyKind",
    "PotentialSample",
    "PowerParams",
    "ProcessorMode",
    "ProcessorState",
    "RatioRow",
    "RunConfig",
    "RunSummary",
    "Schedule",
    "Segment",
    "SimConfig",
    "Trace",
    "TraceEvent",
    "TraceSample",
    "Violation",
    "ViolationReport",
]
