"""Expected areas of the loop hull and of its winding-index regions."""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from scipy import integrate, special

from brownian_hull.analytic.quadrature import QuadratureConfig, integrate_with_error
from brownian_hull.errors import DomainError, QuadratureError

HULL_AREA = math.pi / 5
INDEX_ZERO_AREA = math.pi / 30
SLE_DISK_INTEGRAL = math.pi / 10

# sum over k > K of the residue summand is about 1/(pi^2 K^2)
SERIES_TAIL_CONSTANT = 1.0 / math.pi**2


def index_area_target(n: int) -> float:
    """E(W_n) = 1/(2 pi n^2) for n != 0 and pi/30 for n = 0."""
    if n == 0:
        return INDEX_ZERO_AREA
    return 1.0 / (2.0 * math.pi * n * n)


def _sech_half_squared(t: float) -> float:
    # 1/(1 + cosh t) written to stay finite for large t
    e = math.exp(-abs(t))
    return 2.0 * e / (1.0 + e) ** 2


def _lorentz_difference(t: float, lo: float, hi: float) -> float:
    pi2 = math.pi * math.pi
    return lo / (t * t + lo * lo * pi2) - hi / (t * t + hi * hi * pi2)


def _difference_tail(lo: float, hi: float):
    scale = (1.0 / abs(lo) + 1.0 / abs(hi)) / math.pi**2

    def bound(T: float) -> float:
        return 2.0 * scale * math.exp(-T)

    return bound


def _half_line_integral(lo: float, hi: float, cfg: QuadratureConfig) -> float:
    def integrand(t: float) -> float:
        return _sech_half_squared(t) * _lorentz_difference(t, lo, hi)

    # the Lorentzian with the smaller width peaks within |lo| pi of the origin
    return integrate_with_error(
        integrand, 0.0, math.inf, cfg, tail_bound=_difference_tail(lo, hi)
    ).value


def expected_area_index(n: int, cfg: QuadratureConfig | None = None) -> float:
    """E(W_n) by the one-dimensional quadrature pi int_0^inf dt/(1+cosh t) (...).

    The integrand is even in n, so negative indices give the same value.
    """
    if n == 0:
        raise DomainError("the index-0 area has no one-dimensional integral; use index_area_target(0)")
    cfg = cfg or QuadratureConfig()
    return math.pi * _half_line_integral(2 * n - 1, 2 * n + 1, cfg)


class FIdentity(NamedTuple):
    integral_value: float
    series_value: float | None
    closed_form: float
    tail_estimate: float | None


def _residue_summands(x: float, terms: int) -> np.ndarray:
    odd = 2.0 * np.arange(1, terms + 1, dtype=np.float64) - 1.0
    w1, w2 = x - 1.0, x + 1.0
    return odd * w1 / (w1 * w1 - odd * odd) ** 2 - odd * w2 / (w2 * w2 - odd * odd) ** 2


def f_series(x: float, terms: int) -> float:
    """-(8/pi^2) times the residue sum truncated after `terms` summands."""
    if x <= 1:
        raise DomainError(f"x must exceed 1, got {x}")
    if float(x).is_integer():
        raise DomainError(
            f"the residue series is only valid for non-integer x (got x={x}); "
            "F is real analytic on x > 1 so use the integral route at integers"
        )
    if terms < 1:
        raise DomainError(f"terms must be positive, got {terms}")
    return -8.0 / math.pi**2 * math.fsum(_residue_summands(x, terms).tolist())


def f_series_trigamma(x: float) -> float:
    """The residue series summed in closed form with trigamma functions."""
    if x <= 1:
        raise DomainError(f"x must exceed 1, got {x}")
    if float(x).is_integer():
        raise DomainError(f"trigamma route needs non-integer x, got {x}")
    half = x / 2.0
    psi1 = special.polygamma(1, [half, 1.0 - half, half + 1.0, -half])
    return float((psi1[0] - psi1[1] - psi1[2] + psi1[3]) / (2.0 * math.pi**2))


def f_identity_check(
    x: float, terms: int | None = None, cfg: QuadratureConfig | None = None
) -> FIdentity:
    """Evaluate F(x) by quadrature over the real line and, optionally, by its residue series.

    F(x) = 4/(pi^2 x^2) for x > 1. Pass `terms=None` to skip the series,
    which integer x requires.
    """
    if x <= 1:
        raise DomainError(f"x must exceed 1, got {x}")
    cfg = cfg or QuadratureConfig()
    integral_value = 2.0 * _half_line_integral(x - 1.0, x + 1.0, cfg)
    series_value = tail = None
    if terms is not None:
        series_value = f_series(x, terms)
        tail = SERIES_TAIL_CONSTANT / (terms * terms)
    return FIdentity(integral_value, series_value, 4.0 / (math.pi**2 * x * x), tail)


def disk_integrand(r: float, theta: float) -> float:
    """-(4/5) Im(z + 1/z) Im(z) at z = r e^{i theta}, including the polar Jacobian r."""
    z = complex(r * math.cos(theta), r * math.sin(theta))
    return -0.8 * (z + 1.0 / z).imag * z.imag * r


def sle_conditioned_area_integral(
    cfg: QuadratureConfig | None = None,
    *,
    theta_max: float = math.pi,
    tensor: bool = False,
) -> float:
    """Integral of -(4/5) Im(z + 1/z) Im(z) over the upper half-disk sector 0 < arg z < theta_max.

    The default route integrates sin^2 theta exactly and uses quadrature in
    r only; `tensor=True` runs the full two-dimensional quadrature instead.
    """
    if not 0 < theta_max <= math.pi:
        raise DomainError(f"theta_max must lie in (0, pi], got {theta_max}")
    cfg = cfg or QuadratureConfig()
    if tensor:
        value, abs_error = integrate.dblquad(
            disk_integrand, 0.0, theta_max, 0.0, 1.0, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol
        )
        if abs_error > 1e3 * cfg.tolerance(value):
            raise QuadratureError("tensor disk quadrature did not converge", value, abs_error)
        return float(value)

    angular = theta_max / 2.0 - math.sin(2.0 * theta_max) / 4.0

    def radial(r: float) -> float:
        # disk_integrand / sin^2 theta evaluated on the imaginary axis
        return disk_integrand(r, math.pi / 2)

    return angular * integrate_with_error(radial, 0.0, 1.0, cfg).value


def expected_hull_area(cfg: QuadratureConfig | None = None) -> float:
    """E(A) as twice the SLE(8/3) area integral conditioned on unit radius."""
    return 2.0 * sle_conditioned_area_integral(cfg)
