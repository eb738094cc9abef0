"""Closed forms and quadratures for every exact constant the lab verifies."""

from brownian_hull.analytic.areas import (
    HULL_AREA,
    INDEX_ZERO_AREA,
    SERIES_TAIL_CONSTANT,
    SLE_DISK_INTEGRAL,
    FIdentity,
    disk_integrand,
    expected_area_index,
    expected_hull_area,
    f_identity_check,
    f_series,
    f_series_trigamma,
    index_area_target,
    sle_conditioned_area_integral,
)
from brownian_hull.analytic.checks import CheckRow, decomposition_check, verify_analytic
from brownian_hull.analytic.quadrature import (
    Quadrature,
    QuadratureConfig,
    integrate_adaptive,
    integrate_with_error,
)
from brownian_hull.analytic.schramm import (
    KappaAngle,
    schramm_right_prob,
    schramm_right_prob_closed,
    schramm_right_prob_quad,
    schramm_right_probs,
)
from brownian_hull.analytic.yor import (
    IndexLawParams,
    PsiValue,
    index_distribution,
    index_law_tail,
    index_probability,
    yor_psi,
)

__all__ = [
    "HULL_AREA",
    "INDEX_ZERO_AREA",
    "SERIES_TAIL_CONSTANT",
    "SLE_DISK_INTEGRAL",
    "CheckRow",
    "FIdentity",
    "IndexLawParams",
    "KappaAngle",
    "PsiValue",
    "Quadrature",
    "QuadratureConfig",
    "decomposition_check",
    "disk_integrand",
    "expected_area_index",
    "expected_hull_area",
    "f_identity_check",
    "f_series",
    "f_series_trigamma",
    "index_area_target",
    "index_distribution",
    "index_law_tail",
    "index_probability",
    "integrate_adaptive",
    "integrate_with_error",
    "schramm_right_prob",
    "schramm_right_prob_closed",
    "schramm_right_prob_quad",
    "schramm_right_probs",
    "sle_conditioned_area_integral",
    "verify_analytic",
    "yor_psi",
]
