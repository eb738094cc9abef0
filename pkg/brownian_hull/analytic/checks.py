"""The table of analytic checks reported by `brownian-hull verify-analytic`."""

from __future__ import annotations

import logging
import math
from typing import Any

from pydantic import BaseModel, Field

from brownian_hull.analytic.areas import (
    HULL_AREA,
    INDEX_ZERO_AREA,
    SLE_DISK_INTEGRAL,
    expected_area_index,
    expected_hull_area,
    f_identity_check,
    f_series_trigamma,
    sle_conditioned_area_integral,
)
from brownian_hull.analytic.quadrature import QuadratureConfig
from brownian_hull.analytic.schramm import (
    KappaAngle,
    schramm_right_prob,
    schramm_right_prob_closed,
)
from brownian_hull.analytic.yor import IndexLawParams, index_law_tail, index_probability

logger = logging.getLogger(__name__)

INDEX_LAW_RADII = (0.3, 0.7, 1.0, 2.0)
INDEX_LAW_CUTOFF = 50
SCHRAMM_KAPPAS = (8.0 / 3.0, 2.0, 3.0, 4.0)
SCHRAMM_ANGLES = 33


class CheckRow(BaseModel):
    check_name: str
    computed: float
    target: float
    abs_error: float
    tolerance: float
    passed: bool = Field(serialization_alias="pass")

    @classmethod
    def compare(cls, name: str, computed: float, target: float, tolerance: float) -> CheckRow:
        error = abs(computed - target)
        return cls(
            check_name=name,
            computed=computed,
            target=target,
            abs_error=error,
            tolerance=tolerance,
            passed=bool(error <= tolerance),
        )

    def as_json(self) -> dict[str, Any]:
        return self.model_dump(by_alias=True)


def decomposition_check() -> CheckRow:
    """sum over n != 0 of 1/(2 pi n^2), plus pi/30, against pi/5."""
    nonzero = (1.0 / math.pi) * (math.pi**2 / 6.0)
    return CheckRow.compare("decomposition", nonzero + INDEX_ZERO_AREA, HULL_AREA, 1e-12)


def _index_law_rows(cfg: QuadratureConfig) -> list[CheckRow]:
    rows = []
    for r in INDEX_LAW_RADII:
        probs = [
            index_probability(IndexLawParams(r, n), cfg)
            for n in range(-INDEX_LAW_CUTOFF, INDEX_LAW_CUTOFF + 1)
        ]
        total = math.fsum(probs) + index_law_tail(r, INDEX_LAW_CUTOFF, cfg)
        rows.append(CheckRow.compare(f"index_law_sum[r={r}]", total, 1.0, 1e-8))
    return rows


def _schramm_rows(cfg: QuadratureConfig) -> list[CheckRow]:
    rows = []
    for kappa in SCHRAMM_KAPPAS:
        worst = 0.0
        for k in range(SCHRAMM_ANGLES):
            p = KappaAngle(kappa, math.pi * k / (SCHRAMM_ANGLES - 1))
            worst = max(worst, abs(schramm_right_prob(p, cfg) - schramm_right_prob_closed(p)))
        rows.append(CheckRow.compare(f"schramm_routes_agree[kappa={kappa:.4g}]", worst, 0.0, 1e-10))
        half = schramm_right_prob(KappaAngle(kappa, math.pi / 2), cfg)
        rows.append(CheckRow.compare(f"schramm_half[kappa={kappa:.4g}]", half, 0.5, 1e-10))
    return rows


def _f_identity_rows(cfg: QuadratureConfig) -> list[CheckRow]:
    rows = []
    for x in (2.0, 4.0):
        check = f_identity_check(x, None, cfg)
        rows.append(CheckRow.compare(f"f_integral[x={x}]", check.integral_value, check.closed_form, 1e-8))
    check = f_identity_check(2.5, 10**6, cfg)
    rows.append(CheckRow.compare("f_integral[x=2.5]", check.integral_value, check.closed_form, 1e-8))
    assert check.series_value is not None
    rows.append(CheckRow.compare("f_series[x=2.5]", check.series_value, check.closed_form, 1e-5))
    rows.append(CheckRow.compare("f_trigamma[x=2.5]", f_series_trigamma(2.5), check.closed_form, 1e-12))
    return rows


def verify_analytic(cfg: QuadratureConfig | None = None) -> list[CheckRow]:
    """Every analytic identity the lab relies on, each with its own tolerance."""
    cfg = cfg or QuadratureConfig()
    rows = [
        CheckRow.compare("sle_disk_integral", sle_conditioned_area_integral(cfg), SLE_DISK_INTEGRAL, 1e-9),
        CheckRow.compare(
            "sle_disk_integral_tensor",
            sle_conditioned_area_integral(cfg, tensor=True),
            SLE_DISK_INTEGRAL,
            1e-9,
        ),
        CheckRow.compare(
            "sle_disk_half",
            sle_conditioned_area_integral(cfg, theta_max=math.pi / 2),
            SLE_DISK_INTEGRAL / 2,
            1e-9,
        ),
        CheckRow.compare("expected_hull_area", expected_hull_area(cfg), HULL_AREA, 1e-9),
    ]
    for n in range(1, 11):
        scaled = expected_area_index(n, cfg) * 2.0 * math.pi * n * n
        rows.append(CheckRow.compare(f"expected_area_index[n={n}]", scaled, 1.0, 1e-8))
    rows.append(decomposition_check())
    rows.extend(_index_law_rows(cfg))
    rows.extend(_f_identity_rows(cfg))
    rows.extend(_schramm_rows(cfg))

    failed = [row.check_name for row in rows if not row.passed]
    if failed:
        logger.warning("analytic checks failed: %s", ", ".join(failed))
    return rows
