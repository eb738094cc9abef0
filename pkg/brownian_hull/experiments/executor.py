from __future__ import annotations

import math
import re
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from brownian_hull.config import AcceptanceThresholds
    from brownian_hull.reports import ConvergenceReport, EstimateReport

type Anomaly = tuple[str, str]  # (marker, message)

INDEX_QUANTITY = re.compile(r"^index_area\[(-?\d+)\]$")


def execute_sample[T](
    fn: Callable[..., T], *args: object
) -> tuple[T | None, Exception | None]:
    try:
        return (fn(*args), None)
    except Exception as e:
        return (None, e)


def _relative_margin(quantity: str, thresholds: AcceptanceThresholds) -> float:
    if quantity in ("hull_area", "resolved_hull_area"):
        return thresholds.hull_area_margin
    match = INDEX_QUANTITY.match(quantity)
    if match is None:
        return 0.0
    n = abs(int(match.group(1)))
    if n == 0:
        return thresholds.index_zero_margin
    if n == 1:
        return thresholds.index_one_margin
    return thresholds.index_higher_margin


def _symmetry_anomalies(
    reports: Sequence[EstimateReport], thresholds: AcceptanceThresholds
) -> list[Anomaly]:
    by_index = {}
    for report in reports:
        match = INDEX_QUANTITY.match(report.quantity)
        if match is not None:
            by_index[int(match.group(1))] = report
    anomalies: list[Anomaly] = []
    for n, pos in sorted(by_index.items()):
        neg = by_index.get(-n)
        if n <= 0 or neg is None:
            continue
        noise = math.hypot(pos.stderr, neg.stderr)
        gap = abs(pos.mean - neg.mean)
        if gap > thresholds.sigmas * noise:
            anomalies.append(
                ("asymmetric_index", f"|W_{n} - W_-{n}|={gap:.5f} > {thresholds.sigmas}*{noise:.5f}")
            )
    return anomalies


def check_acceptance(
    reports: Sequence[EstimateReport],
    thresholds: AcceptanceThresholds,
) -> list[Anomaly]:
    anomalies: list[Anomaly] = []

    for report in reports:
        if report.quantity == "partition_residual":
            if report.mean != 0.0 or report.stderr != 0.0:
                anomalies.append(
                    ("partition", f"partition residual mean={report.mean} over {report.samples} samples")
                )
            continue

        attempted = report.samples + report.failures
        if attempted and report.failures > thresholds.max_failure_fraction * attempted:
            anomalies.append(
                (
                    "sample_failures",
                    f"{report.quantity}: {report.failures}/{attempted} samples failed "
                    f"> {thresholds.max_failure_fraction:.2%}",
                )
            )

        total = report.samples + report.excluded
        if total and report.excluded > thresholds.max_undecided_fraction * total:
            anomalies.append(
                (
                    "undecided",
                    f"{report.quantity}: {report.excluded}/{total} undecided "
                    f"> {thresholds.max_undecided_fraction:.2%}",
                )
            )

        if report.target is None:
            continue
        margin = _relative_margin(report.quantity, thresholds) * abs(report.target)
        if not report.within(thresholds.sigmas, margin):
            allowed = max(thresholds.sigmas * report.stderr, margin)
            anomalies.append(
                (
                    "off_target",
                    f"{report.quantity}={report.mean:.6f} target={report.target:.6f} "
                    f"|diff|={report.deviation:.6f} > {allowed:.6f}",
                )
            )

    anomalies.extend(_symmetry_anomalies(reports, thresholds))
    return anomalies


def check_convergence(report: ConvergenceReport) -> list[Anomaly]:
    """Only the raster hull area is expected to grow with refinement."""
    if report.monotone or report.quantity != "hull_area":
        return []
    return [("non_monotone", f"{report.quantity}: {report.summary}")]


def determine_status(anomalies: list[Anomaly], error: Exception | None) -> str:
    if error is not None:
        return "error"
    if anomalies:
        markers = ",".join(sorted({marker for marker, _ in anomalies}))
        return f"ATTENTION({markers})"
    return "success"
