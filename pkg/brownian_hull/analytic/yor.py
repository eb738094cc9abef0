"""Yor's law for the winding index of a Brownian loop around a fixed point."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from brownian_hull.analytic.quadrature import (
    QuadratureConfig,
    integrate_adaptive,
    underflow_cutoff,
)
from brownian_hull.errors import DomainError


@dataclass(frozen=True)
class IndexLawParams:
    r: float
    n: int

    def __post_init__(self) -> None:
        if not (self.r > 0 and math.isfinite(self.r)):
            raise DomainError(f"r must be a positive finite distance, got {self.r}")


class PsiValue(NamedTuple):
    value: float
    underflow: bool


def yor_psi(r: float, x: float, cfg: QuadratureConfig | None = None) -> PsiValue:
    """Psi_r(x) = (x/pi) int_0^inf exp(-r^2 cosh t) / (t^2 + x^2) dt.

    The integral is cut at r^2 cosh T = 745, past which the integrand is
    below the smallest double. When e^{-r^2} itself underflows the value is
    0 with `underflow` set.
    """
    if not r > 0:
        raise DomainError(f"r must be positive, got {r}")
    if x == 0 or not math.isfinite(x):
        raise DomainError(f"x must be finite and nonzero, got {x}")
    cfg = cfg or QuadratureConfig()
    r2 = r * r
    upper = underflow_cutoff(r2)
    if upper == 0.0:
        return PsiValue(0.0, True)

    ax = abs(x)

    def integrand(t: float) -> float:
        return math.exp(-r2 * math.cosh(t)) / (t * t + ax * ax)

    value = ax / math.pi * integrate_adaptive(integrand, 0.0, upper, cfg)
    return PsiValue(math.copysign(value, x), False)


def index_probability(p: IndexLawParams, cfg: QuadratureConfig | None = None) -> float:
    """P(n_z = n) for a unit-duration loop started at 0 and |z| = r."""
    damping = math.exp(-p.r * p.r)
    if p.n == 0:
        psi = yor_psi(p.r, math.pi, cfg).value
        value = 1.0 - 2.0 * damping * psi
    else:
        lower = yor_psi(p.r, (2 * p.n - 1) * math.pi, cfg).value
        upper = yor_psi(p.r, (2 * p.n + 1) * math.pi, cfg).value
        value = damping * (lower - upper)
    return min(1.0, max(0.0, value))


def index_law_tail(r: float, n_max: int, cfg: QuadratureConfig | None = None) -> float:
    """P(|n_z| > n_max); the law telescopes so this is 2 e^{-r^2} Psi_r((2 n_max + 1) pi)."""
    if n_max < 0:
        raise DomainError(f"n_max must be nonnegative, got {n_max}")
    return 2.0 * math.exp(-r * r) * yor_psi(r, (2 * n_max + 1) * math.pi, cfg).value


def index_distribution(
    r: float, n_max: int, cfg: QuadratureConfig | None = None
) -> dict[int, float]:
    """P(n_z = n) for every |n| <= n_max."""
    return {n: index_probability(IndexLawParams(r, n), cfg) for n in range(-n_max, n_max + 1)}
