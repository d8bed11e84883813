"""Speed scaling with a sleep state.

Simulates online speed scaling policies (OA, AVR, qOA, SOA, SqOA) on
processors with static power and a sleep state, computes offline references
(YDS and a brute-force grid optimum) and verifies the competitive analysis
of SqOA numerically.

Classes:
    PowerParams: Power model parameters
    Instance: A set of jobs
    Trace: Record of an online run
"""

__version__ = "0.1.0"
__description__ = "Simulate and verify speed scaling policies with a sleep state"

from .models import Instance, Job, Policy, PolicyKind, PowerParams, Trace

__all__ = [
    "Instance",
    "Job",
    "Policy",
    "PolicyKind",
    "PowerParams",
    "Trace",
    "__version__",
    "__description__",
]
