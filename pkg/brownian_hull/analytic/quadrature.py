"""Adaptive quadrature with explicit truncation of infinite ranges."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, NamedTuple

from scipy import integrate

from brownian_hull.errors import ConfigurationError, QuadratureError

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

logger = logging.getLogger(__name__)

# exp(-x) underflows a double below this exponent
UNDERFLOW_EXPONENT = 745.0

# QUADPACK reports failures only through its message text
_LIMIT_MESSAGE = "maximum number of subdivisions"
_ROUNDOFF_MESSAGE = "roundoff error"


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and truncation rules shared by every analytic integral.

    Infinite upper limits are cut at the first T (doubling from a + 1) where
    the integrand's tail bound drops below tail_fraction * abs_tol. Integrands
    of the form exp(-r^2 cosh t) are cut instead where r^2 cosh T exceeds
    UNDERFLOW_EXPONENT, beyond which the integrand is zero in double precision.

    A roundoff-limited QUADPACK result is kept, with a warning, while its error
    estimate stays within roundoff_slack times the tolerance.
    """

    abs_tol: float = 1e-13
    rel_tol: float = 1e-11
    max_subdivisions: int = 500
    tail_fraction: float = 0.1
    max_truncation: float = 1e4
    roundoff_slack: float = 1e4

    def __post_init__(self) -> None:
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ConfigurationError("abs_tol and rel_tol must be positive")
        if self.max_subdivisions < 1:
            raise ConfigurationError("max_subdivisions must be positive")
        if not 0 < self.tail_fraction <= 1:
            raise ConfigurationError("tail_fraction must lie in (0, 1]")
        if self.roundoff_slack < 1:
            raise ConfigurationError("roundoff_slack must be >= 1")

    def tolerance(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


class Quadrature(NamedTuple):
    value: float
    abs_error: float
    upper_limit: float


def truncation_point(
    tail_bound: Callable[[float], float],
    a: float,
    cfg: QuadratureConfig,
) -> float:
    target = cfg.tail_fraction * cfg.abs_tol
    span = 1.0
    while tail_bound(a + span) >= target:
        span *= 2.0
        if a + span > cfg.max_truncation:
            raise QuadratureError(
                f"tail bound still above {target:.1e} at T={a + span:g}", math.nan, math.inf
            )
    return a + span


def underflow_cutoff(r_squared: float) -> float:
    """T with r^2 cosh T = UNDERFLOW_EXPONENT (0 when e^{-r^2} already underflows)."""
    ratio = UNDERFLOW_EXPONENT / r_squared
    return math.acosh(ratio) if ratio > 1.0 else 0.0


def integrate_with_error(
    f: Callable[[float], float],
    a: float,
    b: float,
    cfg: QuadratureConfig,
    *,
    tail_bound: Callable[[float], float] | None = None,
    endpoint_powers: tuple[float, float] | None = None,
    points: Sequence[float] | None = None,
) -> Quadrature:
    """Integrate f over [a, b]; b may be +inf.

    With `tail_bound`, an infinite range is truncated at truncation_point and
    the bound is added to the error estimate; without it QUADPACK's own
    infinite-range transform is used. `endpoint_powers=(alpha, beta)`
    integrates f(u) (u-a)^alpha (b-u)^beta with the algebraic-weight rule.
    """
    tail = 0.0
    upper = b
    if math.isinf(b) and tail_bound is not None:
        upper = truncation_point(tail_bound, a, cfg)
        tail = tail_bound(upper)

    kwargs: dict[str, object] = {
        "epsabs": cfg.abs_tol,
        "epsrel": cfg.rel_tol,
        "limit": cfg.max_subdivisions,
        "full_output": 1,
    }
    if endpoint_powers is not None:
        kwargs["weight"] = "alg"
        kwargs["wvar"] = endpoint_powers
    elif points is not None and not math.isinf(upper):
        kwargs["points"] = list(points)

    result = integrate.quad(f, a, upper, **kwargs)
    value, abs_error = float(result[0]), float(result[1]) + tail
    if len(result) > 3:
        message = str(result[3])
        limit_hit = _LIMIT_MESSAGE in message
        roundoff = _ROUNDOFF_MESSAGE in message
        tolerance = cfg.tolerance(value)
        relaxed = cfg.roundoff_slack * tolerance
        if limit_hit or abs_error > (relaxed if roundoff else tolerance):
            raise QuadratureError(f"quadrature on [{a}, {upper}] failed: {message}", value, abs_error)
        if abs_error > tolerance:
            logger.warning(
                "quadrature on [%g, %g] roundoff-limited: error %.2e exceeds tolerance %.2e",
                a,
                upper,
                abs_error,
                tolerance,
            )
        else:
            logger.debug("quadrature on [%g, %g] roundoff-limited: %s", a, upper, message)
    return Quadrature(value, abs_error, upper)


def integrate_adaptive(
    f: Callable[[float], float],
    a: float,
    b: float,
    cfg: QuadratureConfig | None = None,
    **kwargs: object,
) -> float:
    """Value of integrate_with_error; see there for the keyword options."""
    return integrate_with_error(f, a, b, cfg or QuadratureConfig(), **kwargs).value  # type: ignore[arg-type]
