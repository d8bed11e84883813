"""Console interface components for the speed scaling analyzer.

This module provides the command-line group, output formatting and
progress tracking.
"""

from .cli import cli
from .output_formatter import OutputFormatter
from .progress_tracker import ProgressTracker

__all__ = [
    'OutputFormatter',
    'ProgressTracker',
    'cli',
]
