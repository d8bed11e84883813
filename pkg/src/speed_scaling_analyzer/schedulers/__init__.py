"""Offline reference schedules and the online simulation engine."""

from .brute_force import BruteForceSolver, brute_force_opt
from .offline import (
    EnergyMode,
    assign_gap_states,
    default_speed_grid,
    opt_lower_bound,
    schedule_energy,
    snap_instance,
    yds,
)
from .online import max_density, sqoa_decision
from .simulator import Simulator, convergence_study, simulate

__all__ = [
    "BruteForceSolver",
    "EnergyMode",
    "Simulator",
    "assign_gap_states",
    "brute_force_opt",
    "convergence_study",
    "default_speed_grid",
    "max_density",
    "opt_lower_bound",
    "schedule_energy",
    "simulate",
    "snap_instance",
    "sqoa_decision",
    "yds",
]
