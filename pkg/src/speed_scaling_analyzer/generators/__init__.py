"""Instance generators and report writers."""

from .instance_generator import InstanceGenerator, InstanceKind, generate
from .report_generator import ReportGenerator

__all__ = ['InstanceGenerator', 'InstanceKind', 'ReportGenerator', 'generate']
