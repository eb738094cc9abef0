"""Monte Carlo experiments, acceptance checks and report storage."""

from brownian_hull.experiments.executor import (
    Anomaly,
    check_acceptance,
    check_convergence,
    determine_status,
    execute_sample,
)
from brownian_hull.experiments.harness import (
    DecompositionCheck,
    IndexPointwiseReport,
    VervaatReport,
    convergence_study,
    decomposition_residual,
    index_tail_bound,
    map_samples,
    run_area_experiment,
    run_index_pointwise,
    run_vervaat_check,
    run_winding_experiment,
    sample_path,
)
from brownian_hull.experiments.store import ReportStore

__all__ = [
    "Anomaly",
    "DecompositionCheck",
    "IndexPointwiseReport",
    "ReportStore",
    "VervaatReport",
    "check_acceptance",
    "check_convergence",
    "convergence_study",
    "decomposition_residual",
    "determine_status",
    "execute_sample",
    "index_tail_bound",
    "map_samples",
    "run_area_experiment",
    "run_index_pointwise",
    "run_vervaat_check",
    "run_winding_experiment",
    "sample_path",
]
