"""Small shared helpers."""

from .tolerance import DEFAULT_TOLERANCE, Tolerance

__all__ = ["DEFAULT_TOLERANCE", "Tolerance"]
