"""Exception hierarchy for the lab."""

from __future__ import annotations


class LabError(Exception):
    """Base class for all errors raised by brownian_hull."""


class ConfigurationError(LabError, ValueError):
    """A configuration or input object violates its invariants."""


class DomainError(LabError, ValueError):
    """An analytic function was called outside its domain."""


class GeometryError(LabError, RuntimeError):
    """A path does not fit the grid it is rasterized on."""


class QuadratureError(LabError, RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message: str, partial_estimate: float, abs_error: float) -> None:
        super().__init__(f"{message} (partial={partial_estimate!r}, abs_error={abs_error:.3e})")
        self.partial_estimate = partial_estimate
        self.abs_error = abs_error
