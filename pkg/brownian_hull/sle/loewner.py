"""Chordal Loewner evolution of a marked point.

Under chordal SLE(kappa) the image X_t = g_t(z) - sqrt(kappa) B_t of a point z
in the upper half-plane solves dX_t = 2/X_t dt - sqrt(kappa) dB_t. Its
argument theta_t is absorbed at 0 when the curve passes to the left of z
(z ends up on the curve's right) and at pi otherwise, so following theta_t
classifies the side without ever building the trace.

Every lane draws its Brownian increments from counter_normals keyed by its
own seed with the step number as counter. evolve_point_side is the one-lane
case of evolve_point_sides, so lane k of a batch with master seed m is
bit-identical to a single run seeded with derive_seed(m, k).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from itertools import pairwise
from typing import TYPE_CHECKING, NamedTuple

import numpy as np
from joblib import Parallel, delayed

from brownian_hull.analytic.schramm import (
    KappaAngle,
    schramm_right_prob,
    schramm_right_probs,
)
from brownian_hull.core import PlanarPoint, Side, counter_normals, derive_seeds
from brownian_hull.errors import ConfigurationError, DomainError
from brownian_hull.reports import EstimateReport, SampleSummary

if TYPE_CHECKING:
    from collections.abc import Sequence

logger = logging.getLogger(__name__)

DEFAULT_DT_BASE = 1e-3
DEFAULT_THETA_EXIT = 0.01
HORIZON_FACTOR = 1e4
MODULUS_FLOOR = 1e-9
UNDECIDED_WARNING_FRACTION = 0.01
LANES_PER_CHUNK = 2048

_SIDE_CODES = (Side.RIGHT, Side.LEFT, Side.UNDECIDED)
_RIGHT, _LEFT, _UNDECIDED = 0, 1, 2


@dataclass(frozen=True)
class LoewnerRun:
    """Parameters of one marked-point evolution.

    The step is dt_base * |X_t|^2, which moves theta_t by a fixed amount in
    distribution at every scale. `max_step` caps it in absolute time; setting
    it to dt_base gives the min(1, |X_t|^2) rule. `t_max` defaults to
    1e4 * |z0|^2.
    """

    kappa: float
    z0: PlanarPoint
    seed: int = 0
    dt_base: float = DEFAULT_DT_BASE
    t_max: float | None = None
    theta_exit: float = DEFAULT_THETA_EXIT
    max_step: float | None = None

    def __post_init__(self) -> None:
        if not (0.0 < self.kappa <= 4.0):
            raise DomainError(f"kappa must lie in (0, 4], got {self.kappa}")
        if not (self.z0.y > 0 and math.isfinite(self.z0.x) and math.isfinite(self.z0.y)):
            raise DomainError(f"z0 must lie in the open upper half-plane, got {self.z0}")
        if not self.dt_base > 0:
            raise ConfigurationError(f"dt_base must be positive, got {self.dt_base}")
        if not (0.0 < self.theta_exit < math.pi / 4):
            raise ConfigurationError(f"theta_exit must lie in (0, pi/4), got {self.theta_exit}")
        if self.t_max is not None and not self.t_max > 0:
            raise ConfigurationError(f"t_max must be positive, got {self.t_max}")
        if self.max_step is not None and not self.max_step > 0:
            raise ConfigurationError(f"max_step must be positive, got {self.max_step}")

    @property
    def horizon(self) -> float:
        if self.t_max is not None:
            return self.t_max
        return HORIZON_FACTOR * (self.z0.x**2 + self.z0.y**2)

    @property
    def theta0(self) -> float:
        return self.z0.argument

    def with_seed(self, seed: int) -> LoewnerRun:
        return replace(self, seed=seed)

    def to_dict(self) -> dict[str, float | int | None]:
        return {
            "kappa": self.kappa,
            "z0": [self.z0.x, self.z0.y],
            "seed": self.seed,
            "dt_base": self.dt_base,
            "t_max": self.horizon,
            "theta_exit": self.theta_exit,
            "max_step": self.max_step,
        }


@dataclass(frozen=True)
class SideResult:
    side: Side
    t_stop: float
    theta_final: float
    steps: int


class SideBatch(NamedTuple):
    """Per-lane outcomes; `codes` index into (RIGHT, LEFT, UNDECIDED)."""

    codes: np.ndarray
    t_stop: np.ndarray
    theta_final: np.ndarray
    steps: np.ndarray
    recorded: np.ndarray | None

    def result(self, k: int) -> SideResult:
        return SideResult(
            _SIDE_CODES[int(self.codes[k])],
            float(self.t_stop[k]),
            float(self.theta_final[k]),
            int(self.steps[k]),
        )

    def count(self, side: Side) -> int:
        return int(np.count_nonzero(self.codes == _SIDE_CODES.index(side)))

    @staticmethod
    def concat(batches: Sequence[SideBatch]) -> SideBatch:
        recorded = None
        if batches and batches[0].recorded is not None:
            recorded = np.concatenate([b.recorded for b in batches], axis=1)  # type: ignore[misc]
        return SideBatch(
            np.concatenate([b.codes for b in batches]),
            np.concatenate([b.t_stop for b in batches]),
            np.concatenate([b.theta_final for b in batches]),
            np.concatenate([b.steps for b in batches]),
            recorded,
        )


def _integrate(
    run: LoewnerRun,
    keys: np.ndarray,
    record_times: Sequence[float] = (),
) -> SideBatch:
    """Euler scheme over all lanes at once, compacting lanes as they stop."""
    n = keys.size
    lo, hi = run.theta_exit, math.pi - run.theta_exit
    horizon = run.horizon
    sqrt_kappa = math.sqrt(run.kappa)
    times = np.asarray(record_times, dtype=np.float64)

    codes = np.full(n, _UNDECIDED, dtype=np.int8)
    t_stop = np.zeros(n)
    theta_final = np.full(n, run.theta0)
    steps = np.zeros(n, dtype=np.int64)
    recorded = np.full((times.size, n), np.nan) if times.size else None

    lane = np.arange(n)
    x = np.full(n, run.z0.x)
    y = np.full(n, run.z0.y)
    t = np.zeros(n)
    counter = np.zeros(n, dtype=np.uint64)
    lane_keys = keys.astype(np.uint64)

    while lane.size:
        r2 = x * x + y * y
        delta = run.dt_base * r2
        if run.max_step is not None:
            delta = np.minimum(delta, run.max_step)
        noise = counter_normals(lane_keys, counter)
        drift = 2.0 * delta / r2
        x = x + drift * x - sqrt_kappa * np.sqrt(delta) * noise
        y = y - drift * y
        t_prev, t = t, t + delta
        counter += np.uint64(1)
        theta = np.arctan2(y, x)

        if recorded is not None:
            crossed = (t_prev[None, :] < times[:, None]) & (t[None, :] >= times[:, None])
            rows, cols = np.nonzero(crossed)
            recorded[rows, lane[cols]] = theta[cols]

        right = theta <= lo
        left = theta >= hi
        swallowed = (y <= 0) | (x * x + y * y < MODULUS_FLOOR**2)
        timeout = t >= horizon
        stop = right | left | swallowed | timeout
        if not stop.any():
            continue

        done = lane[stop]
        codes[done] = np.where(right[stop], _RIGHT, np.where(left[stop], _LEFT, _UNDECIDED))
        t_stop[done] = t[stop]
        theta_final[done] = theta[stop]
        steps[done] = counter[stop].astype(np.int64)
        keep = ~stop
        lane, x, y, t, counter, lane_keys = (
            lane[keep], x[keep], y[keep], t[keep], counter[keep], lane_keys[keep]
        )

    if recorded is not None:
        # lanes that stopped before a record time keep their final angle
        missing = np.isnan(recorded)
        recorded[missing] = np.broadcast_to(theta_final, recorded.shape)[missing]
    return SideBatch(codes, t_stop, theta_final, steps, recorded)


def evolve_point_side(run: LoewnerRun) -> SideResult:
    """Follow one marked point until its argument leaves [theta_exit, pi - theta_exit]."""
    return _integrate(run, np.array([run.seed], dtype=np.uint64)).result(0)


def _evolve_chunk(
    run: LoewnerRun, start: int, count: int, record_times: Sequence[float]
) -> SideBatch:
    keys = np.array(derive_seeds(run.seed, count, start), dtype=np.uint64)
    return _integrate(run, keys, record_times)


def evolve_point_sides(
    run: LoewnerRun,
    samples: int,
    *,
    record_times: Sequence[float] = (),
    n_jobs: int = 1,
) -> SideBatch:
    """Evolve `samples` lanes; lane k uses seed derive_seed(run.seed, k).

    Lanes are split into fixed chunks independent of `n_jobs`, so the result
    does not depend on the worker count.
    """
    if samples < 1:
        raise ConfigurationError(f"samples must be positive, got {samples}")
    chunks = [
        (start, min(LANES_PER_CHUNK, samples - start))
        for start in range(0, samples, LANES_PER_CHUNK)
    ]
    if n_jobs == 1 or len(chunks) == 1:
        batches = [_evolve_chunk(run, s, c, record_times) for s, c in chunks]
    else:
        batches = Parallel(n_jobs=n_jobs)(
            delayed(_evolve_chunk)(run, s, c, record_times) for s, c in chunks
        )
    return SideBatch.concat(batches)


def estimate_side_probability(
    run: LoewnerRun,
    samples: int,
    *,
    n_jobs: int = 1,
) -> EstimateReport:
    """Fraction of decided lanes that end with z on the curve's right.

    Undecided lanes are excluded from the mean and reported; a warning is
    attached when they exceed 1% of the lanes.
    """
    if samples < 100:
        raise ConfigurationError(f"side estimates need at least 100 samples, got {samples}")
    batch = evolve_point_sides(run, samples, n_jobs=n_jobs)
    right = batch.count(Side.RIGHT)
    undecided = batch.count(Side.UNDECIDED)
    decided = samples - undecided

    warnings = []
    if undecided > UNDECIDED_WARNING_FRACTION * samples:
        message = (
            f"{undecided}/{samples} lanes undecided at t_max={run.horizon:g}; "
            "raise t_max or theta_exit"
        )
        logger.warning(message)
        warnings.append(message)

    target = schramm_right_prob(KappaAngle(run.kappa, run.theta0))
    config = {**run.to_dict(), "samples": samples}
    return EstimateReport.build(
        f"right_probability[kappa={run.kappa:.4g},theta={run.theta0:.6f}]",
        SampleSummary.of_proportion(right, decided),
        target=target,
        config=config,
        master_seed=run.seed,
        excluded=undecided,
        warnings=warnings,
    )


class MartingaleRow(NamedTuple):
    t: float
    mean: float
    stderr: float


def martingale_profile(
    run: LoewnerRun,
    times: Sequence[float],
    samples: int,
    *,
    n_jobs: int = 1,
) -> list[MartingaleRow]:
    """Empirical mean of f(theta_t) at each time, f being Schramm's right probability.

    f(theta_t) is a martingale, so every row should match f(theta_0). Lanes
    that already stopped contribute their frozen exit angle.
    """
    if not times or any(tau <= 0 for tau in times):
        raise ConfigurationError("record times must be positive")
    ordered = sorted(times)
    batch = evolve_point_sides(run, samples, record_times=ordered, n_jobs=n_jobs)
    assert batch.recorded is not None
    rows = [MartingaleRow(0.0, float(schramm_right_probs(run.kappa, np.array(run.theta0))), 0.0)]
    for tau, thetas in zip(ordered, batch.recorded, strict=True):
        summary = SampleSummary.of(schramm_right_probs(run.kappa, thetas))
        rows.append(MartingaleRow(tau, summary.mean, summary.stderr))
    return rows


class AngleSweep(NamedTuple):
    reports: list[EstimateReport]
    monotone: bool
    violations: list[tuple[float, float]]
    band_sensitivity: dict[float, float]


def sweep_angles(
    kappa: float,
    thetas: Sequence[float],
    samples: int,
    *,
    master_seed: int = 0,
    dt_base: float = DEFAULT_DT_BASE,
    theta_exit: float = DEFAULT_THETA_EXIT,
    alt_theta_exit: float | None = None,
    t_max: float | None = None,
    max_step: float | None = None,
    n_jobs: int = 1,
) -> AngleSweep:
    """Side estimates over increasing angles, checking they do not increase.

    A pair counts as a violation only when the later estimate exceeds the
    earlier one by more than three combined standard errors. With
    `alt_theta_exit`, each angle is rerun with that band and the shift of the
    estimate is reported as the band sensitivity.
    """
    ordered = sorted(thetas)
    reports: list[EstimateReport] = []
    sensitivity: dict[float, float] = {}
    for theta in ordered:
        run = LoewnerRun(
            kappa,
            PlanarPoint.polar(1.0, theta),
            seed=master_seed,
            dt_base=dt_base,
            theta_exit=theta_exit,
            t_max=t_max,
            max_step=max_step,
        )
        report = estimate_side_probability(run, samples, n_jobs=n_jobs)
        reports.append(report)
        if alt_theta_exit is not None:
            alt = estimate_side_probability(
                replace(run, theta_exit=alt_theta_exit), samples, n_jobs=n_jobs
            )
            sensitivity[theta] = alt.mean - report.mean

    violations = []
    for (t1, r1), (t2, r2) in pairwise(zip(ordered, reports, strict=True)):
        noise = math.hypot(r1.stderr, r2.stderr)
        if r2.mean - r1.mean > 3.0 * noise:
            violations.append((t1, t2))
    return AngleSweep(reports, not violations, violations, sensitivity)
