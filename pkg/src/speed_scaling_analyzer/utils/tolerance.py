"""Floating point comparison tolerance."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerance:
    """Absolute-plus-relative tolerance for float comparisons.

    Attributes:
        abs_tol: Absolute part of the tolerance.
        rel_tol: Relative part, scaled by the larger magnitude of the operands.
    """

    abs_tol: float = 1e-9
    rel_tol: float = 1e-9

    def __post_init__(self):
        if self.abs_tol < 0 or self.rel_tol < 0:
            raise ValueError(f"Tolerances must be non-negative: {self}")

    def margin(self, a: float, b: float = 0.0) -> float:
        """Return the allowed deviation when comparing a and b."""
        return self.abs_tol + self.rel_tol * max(abs(a), abs(b))

    def close(self, a: float, b: float) -> bool:
        return abs(a - b) <= self.margin(a, b)

    def leq(self, a: float, b: float) -> bool:
        """a <= b up to tolerance."""
        return a <= b + self.margin(a, b)

    def geq(self, a: float, b: float) -> bool:
        """a >= b up to tolerance."""
        return a + self.margin(a, b) >= b

    def is_zero(self, a: float) -> bool:
        return abs(a) <= self.abs_tol


DEFAULT_TOLERANCE = Tolerance()
