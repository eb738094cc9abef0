"""Schramm's formula for the side of an SLE(kappa) curve a point falls on."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy import special

from brownian_hull.analytic.quadrature import QuadratureConfig, integrate_adaptive
from brownian_hull.errors import DomainError, QuadratureError

if TYPE_CHECKING:
    from brownian_hull.core import PlanarPoint

RESTRICTION_KAPPA = 8.0 / 3.0
CLOSED_FORM_AGREEMENT = 1e-10


@dataclass(frozen=True)
class KappaAngle:
    """SLE parameter kappa in (0, 4] and a polar angle theta in [0, pi]."""

    kappa: float
    theta: float

    def __post_init__(self) -> None:
        if not (0.0 < self.kappa <= 4.0):
            raise DomainError(f"kappa must lie in (0, 4], got {self.kappa}")
        if not (0.0 <= self.theta <= math.pi):
            raise DomainError(f"theta must lie in [0, pi], got {self.theta}")

    @property
    def exponent(self) -> float:
        """Power of sin u in the defining integral, 2(4 - kappa)/kappa >= 0."""
        return 2.0 * (4.0 - self.kappa) / self.kappa

    @classmethod
    def of_point(cls, kappa: float, z: PlanarPoint) -> KappaAngle:
        if z.y <= 0:
            raise DomainError(f"{z} is not in the open upper half-plane")
        return cls(kappa, z.argument)


def _is_restriction_kappa(kappa: float) -> bool:
    return math.isclose(kappa, RESTRICTION_KAPPA, rel_tol=0.0, abs_tol=1e-15)


def schramm_right_prob_quad(p: KappaAngle, cfg: QuadratureConfig | None = None) -> float:
    """Ratio of sin-power integrals, evaluated by adaptive quadrature."""
    cfg = cfg or QuadratureConfig()
    a = p.exponent

    def weight(u: float) -> float:
        return math.sin(u) ** a

    total = integrate_adaptive(weight, 0.0, math.pi, cfg)
    if p.theta == math.pi:
        return 0.0
    # integrate the shorter arc so the smaller of f, 1 - f keeps full relative accuracy
    if p.theta >= math.pi / 2:
        return integrate_adaptive(weight, p.theta, math.pi, cfg) / total
    return 1.0 - integrate_adaptive(weight, 0.0, p.theta, cfg) / total


def schramm_right_prob_closed(p: KappaAngle) -> float:
    """Closed form through the regularized incomplete beta function.

    With a the sin exponent, the normalized integral from 0 to theta equals
    1/2 I_{sin^2 theta}((a+1)/2, 1/2) for theta <= pi/2, mirrored above.
    """
    shape = (p.exponent + 1.0) / 2.0
    half = 0.5 * float(special.betainc(shape, 0.5, math.sin(p.theta) ** 2))
    if p.theta <= math.pi / 2:
        return 1.0 - half
    return half


def schramm_right_prob(p: KappaAngle, cfg: QuadratureConfig | None = None) -> float:
    """Probability that a point at angle theta lies to the right of the curve.

    For kappa = 8/3 the exact value 1/2 + cos(theta)/2 is returned after
    checking it against the quadrature form.
    """
    value = schramm_right_prob_quad(p, cfg)
    if _is_restriction_kappa(p.kappa):
        closed = 0.5 + 0.5 * math.cos(p.theta)
        if abs(closed - value) > CLOSED_FORM_AGREEMENT:
            raise QuadratureError(
                f"kappa=8/3 closed form {closed!r} disagrees with quadrature {value!r}",
                value,
                abs(closed - value),
            )
        return closed
    return min(1.0, max(0.0, value))


def schramm_right_probs(kappa: float, thetas: np.ndarray) -> np.ndarray:
    """Vectorized schramm_right_prob_closed for angles in [0, pi]."""
    if not (0.0 < kappa <= 4.0):
        raise DomainError(f"kappa must lie in (0, 4], got {kappa}")
    thetas = np.asarray(thetas, dtype=np.float64)
    shape = (2.0 * (4.0 - kappa) / kappa + 1.0) / 2.0
    half = 0.5 * special.betainc(shape, 0.5, np.sin(thetas) ** 2)
    return np.where(thetas <= math.pi / 2, 1.0 - half, half)
