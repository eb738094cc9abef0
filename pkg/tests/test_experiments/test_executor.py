from brownian_hull.config import AcceptanceThresholds
from brownian_hull.experiments import (
    check_acceptance,
    check_convergence,
    determine_status,
    execute_sample,
)
from brownian_hull.reports import ConvergenceReport, EstimateReport


def _report(quantity: str, mean: float, target: float | None, **kwargs: object) -> EstimateReport:
    return EstimateReport(
        quantity=quantity, mean=mean, stderr=kwargs.pop("stderr", 0.001), samples=1000, target=target, **kwargs
    )


def _good_reports() -> list[EstimateReport]:
    return [
        _report("index_area[-1]", 0.155, 0.1591549),
        _report("index_area[0]", 0.100, 0.1047198),
        _report("index_area[1]", 0.156, 0.1591549),
        _report("hull_area", 0.600, 0.6283185),
        _report("blocked_area", 0.050, None),
        _report("partition_residual", 0.0, 0.0, stderr=0.0),
    ]


def test_execute_sample_returns_value() -> None:
    value, error = execute_sample(lambda a, b: a + b, 2, 3)
    assert value == 5
    assert error is None


def test_execute_sample_catches_exceptions() -> None:
    value, error = execute_sample(lambda: 1 / 0)
    assert value is None
    assert isinstance(error, ZeroDivisionError)


def test_acceptance_empty_for_good_reports() -> None:
    assert check_acceptance(_good_reports(), AcceptanceThresholds()) == []


def test_acceptance_off_target_hull_area() -> None:
    reports = [_report("hull_area", 0.5, 0.6283185)]
    anomalies = check_acceptance(reports, AcceptanceThresholds())
    assert [marker for marker, _ in anomalies] == ["off_target"]


def test_acceptance_uses_standard_errors_when_they_dominate() -> None:
    reports = [_report("hull_area", 0.5, 0.6283185, stderr=0.05)]
    assert check_acceptance(reports, AcceptanceThresholds()) == []


def test_acceptance_partition_residual() -> None:
    reports = [_report("partition_residual", 0.001, 0.0)]
    anomalies = check_acceptance(reports, AcceptanceThresholds())
    assert anomalies[0][0] == "partition"


def test_acceptance_sample_failures() -> None:
    reports = [_report("blocked_area", 0.05, None, failures=5)]
    anomalies = check_acceptance(reports, AcceptanceThresholds())
    assert [marker for marker, _ in anomalies] == ["sample_failures"]


def test_acceptance_undecided_lanes() -> None:
    reports = [_report("right_probability[kappa=2.667,theta=1.0]", 0.77, 0.77, excluded=50)]
    anomalies = check_acceptance(reports, AcceptanceThresholds())
    assert [marker for marker, _ in anomalies] == ["undecided"]


def test_acceptance_asymmetric_index() -> None:
    reports = [
        _report("index_area[-1]", 0.140, 0.1591549),
        _report("index_area[1]", 0.170, 0.1591549),
    ]
    anomalies = check_acceptance(reports, AcceptanceThresholds())
    assert "asymmetric_index" in {marker for marker, _ in anomalies}


def test_convergence_anomaly_only_when_not_monotone() -> None:
    good = ConvergenceReport(quantity="hull_area", target=0.628, rows=[], monotone=True, summary="ok")
    bad = good.model_copy(update={"monotone": False, "summary": "drops"})
    assert check_convergence(good) == []
    assert check_convergence(bad)[0][0] == "non_monotone"


def test_convergence_of_index_areas_is_not_required_to_grow() -> None:
    report = ConvergenceReport(quantity="index_area[1]", target=0.159, rows=[], monotone=False, summary="drops")
    assert check_convergence(report) == []


def test_acceptance_resolved_hull_uses_hull_margin() -> None:
    report = _report("resolved_hull_area", 0.600, 0.6283185)
    assert check_acceptance([report], AcceptanceThresholds()) == []
    assert check_acceptance([report], AcceptanceThresholds(hull_area_margin=0.01))[0][0] == "off_target"


def test_determine_status() -> None:
    assert determine_status([], None) == "success"
    assert determine_status([("off_target", "x"), ("partition", "y"), ("off_target", "z")], None) == (
        "ATTENTION(off_target,partition)"
    )
    assert determine_status([("off_target", "x")], RuntimeError("boom")) == "error"
