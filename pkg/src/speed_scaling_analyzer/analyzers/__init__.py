"""Analyzers module exports."""

from .lemma_checker import LemmaChecker, lemma_checks
from .potential import AmortizedChecker, amortized_check, critical_partition, excess_work, potential
from .power_model import (
    analysis_constants,
    competitive_bound,
    critical_speed,
    energy_per_work,
    numeric_critical_speed,
    power,
)
from .proof_cases import ProofCaseAuditor, proof_case_suite
from .ratio_calculator import EnergyBasis, RatioCalculator, max_ratio, summarize

__all__ = [
    'AmortizedChecker', 'EnergyBasis', 'LemmaChecker', 'ProofCaseAuditor', 'RatioCalculator',
    'amortized_check', 'analysis_constants', 'competitive_bound', 'critical_partition', 'critical_speed',
    'energy_per_work', 'excess_work', 'lemma_checks', 'max_ratio', 'numeric_critical_speed', 'potential',
    'power', 'proof_case_suite', 'summarize',
]
