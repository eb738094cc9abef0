"""Monte Carlo experiments tying the samplers and the geometry to the exact constants.

Sample k of an experiment always uses the seed derive_seed(master_seed, k).
Samples are processed in fixed-size chunks and gathered in sample order, so
every report is a pure function of the config and independent of the
worker count.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import replace
from typing import TYPE_CHECKING, NamedTuple

import numpy as np
from joblib import Parallel, delayed
from pydantic import BaseModel
from scipy import special, stats

from brownian_hull.analytic.areas import HULL_AREA, index_area_target
from brownian_hull.analytic.yor import IndexLawParams, index_law_tail, index_probability
from brownian_hull.core import LoopKind, PlanarPoint, derive_seed, generator
from brownian_hull.errors import ConfigurationError, DomainError
from brownian_hull.experiments.executor import INDEX_QUANTITY, execute_sample
from brownian_hull.geometry import (
    band_region_areas,
    distance_to_path,
    grid_for_path,
    hull_area,
)
from brownian_hull.reports import (
    ConvergenceReport,
    ConvergenceRow,
    EstimateReport,
    SampleSummary,
    config_hash,
    generate_run_id,
    provenance,
)
from brownian_hull.sampling import (
    BridgeSpec,
    ExcursionProfile,
    LoopPath,
    midpoint_height,
    refined_winding,
    sample_loop,
    vervaat_transform,
)

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence
    from pathlib import Path

    from brownian_hull.config import ExperimentConfig
    from brownian_hull.core.types import Seed
    from brownian_hull.geometry import BandEstimate

logger = logging.getLogger(__name__)

SAMPLES_PER_CHUNK = 16
ON_PATH_TOLERANCE = 1e-12
MAX_RESAMPLES = 8
POINTWISE_INDEX_MAX = 3
MIN_EXPECTED_COUNT = 5.0
# counter of the bridge-refinement stream, clear of the redraw counters
REFINEMENT_COUNTER = 1 << 32


def sample_seed(cfg: ExperimentConfig, k: int, attempt: int = 0) -> Seed:
    seed = derive_seed(cfg.master_seed, k)
    if attempt:
        seed = derive_seed(seed, attempt)
    return seed


def sample_path(cfg: ExperimentConfig, k: int, attempt: int = 0) -> LoopPath:
    """Loop number k of the experiment; `attempt` > 0 draws a replacement."""
    return sample_loop(BridgeSpec(cfg.steps, sample_seed(cfg, k, attempt), cfg.kind))


def refinement_rng(seed: int) -> np.random.Generator:
    """Generator for the bridge refinement of the loop drawn from `seed`."""
    return generator(derive_seed(seed, REFINEMENT_COUNTER))


class SampleOutcome[T](NamedTuple):
    k: int
    value: T | None
    error: str | None


def _run_chunk[T](
    fn: Callable[[ExperimentConfig, int], T], cfg: ExperimentConfig, start: int, count: int
) -> list[SampleOutcome[T]]:
    outcomes = []
    for k in range(start, start + count):
        value, error = execute_sample(fn, cfg, k)
        outcomes.append(SampleOutcome(k, value, None if error is None else f"{type(error).__name__}: {error}"))
    return outcomes


def map_samples[T](
    fn: Callable[[ExperimentConfig, int], T], cfg: ExperimentConfig
) -> list[SampleOutcome[T]]:
    """Apply fn to every sample index, in parallel over fixed chunks."""
    chunks = [
        (start, min(SAMPLES_PER_CHUNK, cfg.samples - start))
        for start in range(0, cfg.samples, SAMPLES_PER_CHUNK)
    ]
    if cfg.threads == 1 or len(chunks) == 1:
        parts = [_run_chunk(fn, cfg, s, c) for s, c in chunks]
    else:
        parts = Parallel(n_jobs=cfg.threads)(delayed(_run_chunk)(fn, cfg, s, c) for s, c in chunks)
    outcomes = [o for part in parts for o in part]
    for o in outcomes:
        if o.error is not None:
            logger.warning("sample %d failed: %s", o.k, o.error)
    return outcomes


def _succeeded[T](outcomes: list[SampleOutcome[T]]) -> tuple[list[int], list[T], int]:
    ks = [o.k for o in outcomes if o.error is None]
    values = [o.value for o in outcomes if o.error is None]
    return ks, values, len(outcomes) - len(ks)  # type: ignore[return-value]


def _write_csv(out: Path, header: Sequence[str], rows: Sequence[Sequence[object]]) -> None:
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        writer.writerows(rows)


def _report(
    quantity: str,
    values: Sequence[float] | np.ndarray,
    cfg: ExperimentConfig,
    *,
    target: float | None,
    failures: int = 0,
) -> EstimateReport:
    return EstimateReport.build(
        quantity,
        SampleSummary.of(np.asarray(values, dtype=np.float64)),
        target=target,
        config=cfg.to_dict(),
        master_seed=cfg.master_seed,
        failures=failures,
    )


# -- hull area -----------------------------------------------------------------


def _area_sample(cfg: ExperimentConfig, k: int) -> tuple[float, float]:
    path = sample_path(cfg, k)
    areas = hull_area(path, grid_for_path(path, cfg.cells_per_unit, cfg.margin_cells))
    return areas.hull_area, areas.blocked_area


def run_area_experiment(
    cfg: ExperimentConfig, *, per_sample_csv: Path | None = None
) -> EstimateReport:
    """Mean discretized hull area against E(A) = pi/5."""
    ks, values, failures = _succeeded(map_samples(_area_sample, cfg))
    if per_sample_csv is not None:
        _write_csv(
            per_sample_csv,
            ("sample", "seed", "hull_area", "blocked_area"),
            [(k, derive_seed(cfg.master_seed, k), a, b) for k, (a, b) in zip(ks, values, strict=True)],
        )
    return _report(
        "hull_area", [a for a, _ in values], cfg, target=HULL_AREA, failures=failures
    )


# -- winding regions -----------------------------------------------------------


def _winding_sample(cfg: ExperimentConfig, k: int) -> BandEstimate:
    seed = sample_seed(cfg, k)
    path = sample_loop(BridgeSpec(cfg.steps, seed, cfg.kind))
    grid = grid_for_path(path, cfg.cells_per_unit, cfg.margin_cells)
    return band_region_areas(path, grid, refinement_rng(seed), points=cfg.band_points)


def index_tail_bound(index_max: int) -> float:
    """sum over |n| > index_max of E(W_n) = psi'(index_max + 1)/pi."""
    return float(special.polygamma(1, index_max + 1)) / math.pi


def run_winding_experiment(
    cfg: ExperimentConfig, *, per_sample_csv: Path | None = None
) -> list[EstimateReport]:
    """Per-index areas with the path band resolved, plus the raster hull and its partition residual.

    `hull_area`, `blocked_area` and `partition_residual` come from the raster
    alone. The index areas, `resolved_hull_area` and the high-index tail use
    the band-resolved windings of band_region_areas.
    """
    ks, estimates, failures = _succeeded(map_samples(_winding_sample, cfg))
    indices = list(range(-cfg.index_max, cfg.index_max + 1))
    rasters = [e.raster for e in estimates if e.raster is not None]

    per_index = {n: [e.index_area(n) for e in estimates] for n in indices}
    resolved = [e.hull_area for e in estimates]
    tail = [e.tail_area(cfg.index_max) for e in estimates]
    band = [e.band_area for e in estimates]
    hull = [r.hull_area for r in rasters]
    blocked = [r.blocked_area for r in rasters]
    residual = [float(r.partition_residual()) for r in rasters]

    if per_sample_csv is not None:
        header = [
            "sample",
            "hull_area",
            "resolved_hull_area",
            "blocked_area",
            "band_area",
            *(f"W[{n}]" for n in indices),
            "tail",
        ]
        rows = [
            [k, hull[i], resolved[i], blocked[i], band[i], *(per_index[n][i] for n in indices), tail[i]]
            for i, k in enumerate(ks)
        ]
        _write_csv(per_sample_csv, header, rows)

    reports = [
        _report(f"index_area[{n}]", per_index[n], cfg, target=index_area_target(n), failures=failures)
        for n in indices
    ]
    reports.append(_report("resolved_hull_area", resolved, cfg, target=HULL_AREA, failures=failures))
    reports.append(
        _report(
            f"index_tail[>{cfg.index_max}]",
            tail,
            cfg,
            target=index_tail_bound(cfg.index_max),
            failures=failures,
        )
    )
    reports.append(_report("hull_area", hull, cfg, target=HULL_AREA, failures=failures))
    reports.append(_report("blocked_area", blocked, cfg, target=None, failures=failures))
    reports.append(_report("band_area", band, cfg, target=None, failures=failures))
    reports.append(_report("partition_residual", residual, cfg, target=0.0, failures=failures))
    return reports


class DecompositionCheck(BaseModel):
    """E(A) minus the index areas with |n| <= index_max, against the analytic tail."""

    residual: float
    stderr: float
    tail_bound: float
    bounded: bool


def decomposition_residual(
    area_report: EstimateReport,
    winding_reports: Sequence[EstimateReport],
    *,
    sigmas: float = 3.0,
) -> DecompositionCheck:
    """Hull area minus the index areas with |n| <= index_max.

    Bounded when the residual is at most psi'(index_max + 1)/pi plus `sigmas`
    combined standard errors. Pass the resolved hull area: its band is already
    shared out among the index areas.
    """
    by_index = {}
    for report in winding_reports:
        match = INDEX_QUANTITY.match(report.quantity)
        if match is not None:
            by_index[int(match.group(1))] = report
    index_reports = list(by_index.values())

    residual = area_report.mean - math.fsum(r.mean for r in index_reports)
    stderr = math.sqrt(area_report.stderr**2 + math.fsum(r.stderr**2 for r in index_reports))
    bound = index_tail_bound(max(abs(n) for n in by_index))
    return DecompositionCheck(
        residual=residual,
        stderr=stderr,
        tail_bound=bound,
        bounded=bool(residual <= bound + sigmas * stderr),
    )


# -- pointwise index law -------------------------------------------------------


class PointwiseSample(NamedTuple):
    index: int
    resampled: int


def _pointwise_sample(cfg: ExperimentConfig, k: int, z: PlanarPoint) -> PointwiseSample:
    """Winding around z with the bridge refined near z; redraws when z lies on the path."""
    for attempt in range(MAX_RESAMPLES + 1):
        seed = sample_seed(cfg, k, attempt)
        path = sample_loop(BridgeSpec(cfg.steps, seed, cfg.kind))
        if distance_to_path(path, z) > ON_PATH_TOLERANCE:
            return PointwiseSample(refined_winding(path, z, refinement_rng(seed)), attempt)
    raise DomainError(f"{z} stayed on the sampled path after {MAX_RESAMPLES} redraws")


class _PointwiseTask:
    """Picklable binding of z for map_samples."""

    def __init__(self, z: PlanarPoint) -> None:
        self.z = z

    def __call__(self, cfg: ExperimentConfig, k: int) -> PointwiseSample:
        return _pointwise_sample(cfg, k, self.z)


class IndexCell(BaseModel):
    n: int
    count: int
    empirical: float
    analytic: float
    sigma: float
    within: bool


class IndexPointwiseReport(BaseModel):
    z: tuple[float, float]
    r: float
    samples: int
    failures: int
    resampled: int
    cells: list[IndexCell]
    beyond: int
    beyond_analytic: float
    chi_square: float
    dof: int
    p_value: float
    symmetric: bool
    config_hash: str
    provenance: str
    run_id: str

    @property
    def passed(self) -> bool:
        return all(cell.within for cell in self.cells)


def _chi_square(observed: np.ndarray, expected: np.ndarray) -> tuple[float, int, float]:
    """Pearson test after pooling bins with fewer than MIN_EXPECTED_COUNT expected counts."""
    big = expected >= MIN_EXPECTED_COUNT
    obs = list(observed[big])
    exp = list(expected[big])
    pooled_obs, pooled_exp = observed[~big].sum(), expected[~big].sum()
    if pooled_exp >= MIN_EXPECTED_COUNT:
        obs.append(pooled_obs)
        exp.append(pooled_exp)
    elif exp:
        largest = int(np.argmax(exp))
        obs[largest] += pooled_obs
        exp[largest] += pooled_exp
    if len(obs) < 2:
        return 0.0, 0, 1.0
    exp_arr = np.asarray(exp, dtype=np.float64)
    exp_arr *= np.sum(obs) / exp_arr.sum()
    result = stats.chisquare(np.asarray(obs, dtype=np.float64), exp_arr)
    return float(result.statistic), len(obs) - 1, float(result.pvalue)


def run_index_pointwise(
    cfg: ExperimentConfig, z: PlanarPoint, *, sigmas: float = 3.0
) -> IndexPointwiseReport:
    """Empirical law of the winding index around z against Yor's law."""
    r = z.modulus
    if r == 0:
        raise DomainError("z must differ from the loop's starting point")
    ks, outcomes, failures = _succeeded(map_samples(_PointwiseTask(z), cfg))
    m = len(outcomes)
    windings = np.array([o.index for o in outcomes], dtype=np.int64)
    resampled = sum(1 for o in outcomes if o.resampled)
    if resampled:
        logger.warning("%d sample(s) redrawn because %s lay on the path", resampled, z)

    cells = []
    for n in range(-POINTWISE_INDEX_MAX, POINTWISE_INDEX_MAX + 1):
        count = int(np.count_nonzero(windings == n))
        p = index_probability(IndexLawParams(r, n))
        sigma = math.sqrt(p * (1.0 - p) / m) if m else math.nan
        empirical = count / m if m else math.nan
        cells.append(
            IndexCell(
                n=n,
                count=count,
                empirical=empirical,
                analytic=p,
                sigma=sigma,
                within=bool(abs(empirical - p) <= sigmas * sigma),
            )
        )
    beyond = int(np.count_nonzero(np.abs(windings) > POINTWISE_INDEX_MAX))
    beyond_p = index_law_tail(r, POINTWISE_INDEX_MAX)

    observed = np.array([c.count for c in cells] + [beyond], dtype=np.float64)
    expected = m * np.array([c.analytic for c in cells] + [beyond_p], dtype=np.float64)
    chi2, dof, p_value = _chi_square(observed, expected)

    symmetric = True
    for cell in cells:
        if cell.n <= 0:
            continue
        mirror = cells[POINTWISE_INDEX_MAX - cell.n]
        noise = math.sqrt(cell.empirical + mirror.empirical) / math.sqrt(m) if m else math.nan
        if abs(cell.empirical - mirror.empirical) > sigmas * noise:
            symmetric = False

    config = {**cfg.to_dict(), "z": [z.x, z.y]}
    return IndexPointwiseReport(
        z=(z.x, z.y),
        r=r,
        samples=m,
        failures=failures,
        resampled=resampled,
        cells=cells,
        beyond=beyond,
        beyond_analytic=beyond_p,
        chi_square=chi2,
        dof=dof,
        p_value=p_value,
        symmetric=symmetric,
        config_hash=config_hash(config),
        provenance=provenance(cfg.master_seed),
        run_id=generate_run_id(cfg.master_seed),
    )


# -- Vervaat shift ---------------------------------------------------------------


class VervaatSample(NamedTuple):
    original: float
    shifted: float
    min_y: float
    midpoint: float


def _vervaat_sample(cfg: ExperimentConfig, k: int) -> VervaatSample:
    path = sample_path(cfg, k)
    shifted = vervaat_transform(path)
    before = hull_area(path, grid_for_path(path, cfg.cells_per_unit, cfg.margin_cells))
    after = hull_area(shifted, grid_for_path(shifted, cfg.cells_per_unit, cfg.margin_cells))
    return VervaatSample(
        before.hull_area,
        after.hull_area,
        float(shifted.ys.min()),
        midpoint_height(shifted),
    )


class VervaatReport(BaseModel):
    samples: int
    failures: int
    equal_areas: int
    max_area_gap: float
    nonnegative: int
    min_y_zero: int
    excursion_midpoint_mean: float
    excursion_midpoint_stderr: float
    excursion_midpoint_target: float
    config_hash: str
    provenance: str
    run_id: str

    @property
    def passed(self) -> bool:
        return self.equal_areas == self.samples == self.nonnegative == self.min_y_zero


def run_vervaat_check(cfg: ExperimentConfig) -> VervaatReport:
    """Hull area is unchanged by the lowest-point shift, which leaves the loop in y >= 0."""
    if cfg.kind is not LoopKind.GAUSSIAN_BRIDGE:
        raise ConfigurationError("the Vervaat check runs on Gaussian bridges")
    _, results, failures = _succeeded(map_samples(_vervaat_sample, cfg))
    gaps = [abs(s.original - s.shifted) for s in results]
    profile = ExcursionProfile.of_heights([s.midpoint for s in results])
    return VervaatReport(
        samples=len(results),
        failures=failures,
        equal_areas=sum(1 for g in gaps if g == 0.0),
        max_area_gap=max(gaps, default=0.0),
        nonnegative=sum(1 for s in results if s.min_y >= 0.0),
        min_y_zero=sum(1 for s in results if s.min_y == 0.0),
        excursion_midpoint_mean=profile.mean,
        excursion_midpoint_stderr=profile.stderr,
        excursion_midpoint_target=profile.target,
        config_hash=config_hash(cfg.to_dict()),
        provenance=provenance(cfg.master_seed),
        run_id=generate_run_id(cfg.master_seed),
    )


# -- convergence -----------------------------------------------------------------


def _quantity_target(quantity: str) -> float:
    if quantity in ("hull_area", "resolved_hull_area"):
        return HULL_AREA
    match = INDEX_QUANTITY.match(quantity)
    if match is None:
        raise ConfigurationError(
            f"convergence tracks hull_area, resolved_hull_area or index_area[n], got {quantity!r}"
        )
    return index_area_target(int(match.group(1)))


class _ConvergenceTask:
    """Picklable (quantity, blocked area) extractor for one rung."""

    def __init__(self, quantity: str) -> None:
        self.quantity = quantity

    def __call__(self, cfg: ExperimentConfig, k: int) -> tuple[float, float]:
        if self.quantity == "hull_area":
            return _area_sample(cfg, k)
        estimate = _winding_sample(cfg, k)
        blocked = estimate.raster.blocked_area if estimate.raster is not None else math.nan
        if self.quantity == "resolved_hull_area":
            return estimate.hull_area, blocked
        match = INDEX_QUANTITY.match(self.quantity)
        assert match is not None
        return estimate.index_area(int(match.group(1))), blocked


def convergence_study(
    base: ExperimentConfig,
    ladder: Sequence[tuple[int, float]],
    *,
    quantity: str = "hull_area",
    sigmas: float = 2.0,
) -> ConvergenceReport:
    """Estimates of one quantity over a ladder of (steps, cells_per_unit) refinements.

    Rows are sorted coarse to fine and carry the relative bias against the
    exact constant, which is what the acceptance margins are set from. The
    ladder counts as monotone when no row falls below its predecessor by more
    than `sigmas` combined standard errors; no convergence rate is fitted.
    """
    if len(ladder) < 3:
        raise ConfigurationError(f"a convergence ladder needs at least 3 rungs, got {len(ladder)}")
    target = _quantity_target(quantity)
    task = _ConvergenceTask(quantity)
    rows = []
    for steps, cells_per_unit in sorted(ladder):
        cfg = replace(base, steps=steps, cells_per_unit=cells_per_unit)
        _, values, failures = _succeeded(map_samples(task, cfg))
        if failures:
            logger.warning("%d sample(s) failed at N=%d h=1/%g", failures, steps, cells_per_unit)
        estimate = SampleSummary.of([v for v, _ in values])
        blocked = SampleSummary.of([b for _, b in values])
        rows.append(
            ConvergenceRow(
                steps=steps,
                cell_size=cfg.cell_size,
                samples=estimate.samples,
                mean=estimate.mean,
                stderr=estimate.stderr,
                blocked_area=blocked.mean,
                relative_bias=(estimate.mean - target) / target,
            )
        )

    drops = []
    for prev, cur in zip(rows, rows[1:], strict=False):
        noise = math.hypot(prev.stderr, cur.stderr)
        if cur.mean < prev.mean - sigmas * noise:
            drops.append(f"N={prev.steps},h={prev.cell_size:g} -> N={cur.steps},h={cur.cell_size:g}")
    finest = rows[-1]
    summary = (
        f"finest estimate {finest.mean:.5f} +/- {finest.stderr:.5f}, "
        f"{finest.relative_bias:+.2%} from {target:.5f}; "
        + ("means non-decreasing" if not drops else "drops at " + "; ".join(drops))
    )
    config = {"base": base.to_dict(), "ladder": [list(r) for r in sorted(ladder)], "quantity": quantity}
    return ConvergenceReport(
        quantity=quantity,
        target=target,
        rows=rows,
        monotone=not drops,
        summary=summary,
        config_hash=config_hash(config),
        provenance=provenance(base.master_seed),
        run_id=generate_run_id(base.master_seed),
    )
