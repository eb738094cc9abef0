"""Command-line front door: `brownian-hull <command> [options]`."""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
import time
from dataclasses import asdict, replace
from datetime import UTC, datetime
from fractions import Fraction
from pathlib import Path
from typing import TYPE_CHECKING, Any

from brownian_hull.analytic import verify_analytic
from brownian_hull.config import LabConfig, default_threads
from brownian_hull.core import LoopKind, PlanarPoint
from brownian_hull.errors import ConfigurationError, DomainError, LabError
from brownian_hull.experiments import (
    ReportStore,
    check_acceptance,
    check_convergence,
    convergence_study,
    decomposition_residual,
    determine_status,
    run_index_pointwise,
    run_vervaat_check,
    run_winding_experiment,
    sample_path,
)
from brownian_hull.geometry import (
    analyze_path,
    export_mask_pbm,
    export_winding_csv,
    grid_for_path,
)
from brownian_hull.reports import config_hash, generate_run_id
from brownian_hull.render import RenderSpec, render_hull, render_winding
from brownian_hull.sampling import BridgeSpec, format_path, read_path, sample_loop
from brownian_hull.sle import LoewnerRun, martingale_profile, sweep_angles

if TYPE_CHECKING:
    from collections.abc import Sequence

    from brownian_hull.config import ExperimentConfig
    from brownian_hull.experiments import Anomaly
    from brownian_hull.sampling import LoopPath

logger = logging.getLogger("brownian_hull")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

DEFAULT_SLE_THETAS = ("1/6", "1/4", "1/2", "3/4")
MARTINGALE_TIMES = (0.1, 1.0, 10.0)


class CommandResult:
    """What a command hands back to cli_main for printing and storage."""

    def __init__(
        self,
        payload: Any,
        *,
        anomalies: list[Anomaly] | None = None,
        lines: Sequence[str] = (),
        store: bool = False,
        config: dict[str, Any] | None = None,
    ) -> None:
        self.payload = payload
        self.anomalies = anomalies or []
        self.lines = list(lines)
        self.store = store
        self.config = config or {}


# -- option parsing ----------------------------------------------------------------


def _fraction(text: str) -> float:
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number or fraction: {text!r}") from None


def _theta(text: str) -> float:
    """Angle given as a fraction of pi, e.g. `1/6`."""
    return _fraction(text) * math.pi


def _rung(text: str) -> tuple[int, float]:
    try:
        steps, cells = text.split(":")
        return int(steps), float(cells)
    except ValueError:
        raise argparse.ArgumentTypeError(f"ladder rungs look like STEPS:CELLS_PER_UNIT, got {text!r}") from None


def _kind(text: str) -> LoopKind:
    try:
        return LoopKind.parse(text)
    except ConfigurationError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="Path to a lab.toml configuration file")
    common.add_argument("--seed", type=int, help="Master seed")
    common.add_argument("--steps", type=int, help="Path steps N")
    common.add_argument("--samples", type=int, help="Monte Carlo sample count M")
    common.add_argument("--cells-per-unit", type=float, help="Grid resolution 1/h")
    common.add_argument("--kind", type=_kind, help="gaussian | lattice")
    common.add_argument("--threads", type=int, help="Worker count (default: $BROWNIAN_HULL_THREADS or 1)")
    common.add_argument("--out", type=Path, help="Output file")
    common.add_argument("--output-dir", type=Path, help="Directory for reports.db")
    common.add_argument("--json", action="store_true", help="Print JSON instead of text")
    common.add_argument("--verbose", action="store_true", help="Log at INFO level")
    return common


def _input_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", type=Path, help="Path file written by `sample` (default: sample one)")


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="brownian-hull",
        description="Hulls and winding regions of the planar Brownian loop",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("sample", parents=[common], help="Sample one loop and print it")
    p.add_argument("--unscaled", action="store_true", help="Keep lattice loops on the integer lattice")

    p = sub.add_parser("hull", parents=[common], help="Hull and region areas of one loop")
    _input_option(p)
    p.add_argument("--pbm", type=Path, help="Also write the hull mask as PBM")

    p = sub.add_parser("winding-map", parents=[common], help="Winding field of one loop as CSV")
    _input_option(p)

    sub.add_parser("verify-analytic", parents=[common], help="Check every analytic identity")

    p = sub.add_parser("verify-mc", parents=[common], help="Monte Carlo hull and winding areas")
    p.add_argument("--per-sample-csv", type=Path, help="Write per-sample areas to this CSV")
    p.add_argument("--pointwise-r", type=float, help="Also check Yor's law at z = (r, 0)")

    p = sub.add_parser("sle-check", parents=[common], help="Loewner check of Schramm's formula")
    p.add_argument("--kappa", type=_fraction, help="SLE parameter in (0, 4], e.g. 8/3")
    p.add_argument("--thetas", type=_theta, nargs="+", help="Angles as fractions of pi (default: 1/6 1/4 1/2 3/4)")
    p.add_argument("--martingale", action="store_true", help="Also report E f(theta_t) at t = 0.1, 1, 10")
    p.add_argument("--alt-theta-exit", type=float, help="Rerun with this exit band to report band sensitivity")

    sub.add_parser("vervaat-check", parents=[common], help="Hull area under the lowest-point shift")

    p = sub.add_parser("convergence", parents=[common], help="One estimate over a refinement ladder")
    p.add_argument("--ladder", type=_rung, nargs="+", required=True, metavar="STEPS:CELLS")
    p.add_argument(
        "--quantity",
        default="hull_area",
        help="hull_area, resolved_hull_area or index_area[n] (default: hull_area)",
    )

    p = sub.add_parser("render", parents=[common], help="Draw a loop with its hull or winding map")
    _input_option(p)
    p.add_argument("--figure", choices=("hull", "winding"), default="hull")
    p.add_argument("--width", type=int, default=800, help="Figure width in px")
    return parser


def _lab_config(args: argparse.Namespace) -> LabConfig:
    lab = LabConfig.from_toml(args.config) if args.config else LabConfig()
    overrides: dict[str, Any] = {}
    for name, attr in (
        ("seed", "master_seed"),
        ("steps", "steps"),
        ("samples", "samples"),
        ("cells_per_unit", "cells_per_unit"),
        ("kind", "kind"),
        ("threads", "threads"),
    ):
        value = getattr(args, name)
        if value is not None:
            overrides[attr] = value
    if args.threads is None and not args.config:
        overrides["threads"] = default_threads()
    if overrides:
        lab = replace(lab, experiment=replace(lab.experiment, **overrides))
    if args.output_dir is not None:
        lab = replace(lab, output=replace(lab.output, dir=args.output_dir))
    return lab


def _single_path(args: argparse.Namespace, cfg: ExperimentConfig) -> LoopPath:
    source = getattr(args, "input", None)
    if source is not None:
        return read_path(source)
    return sample_path(cfg, 0)


# -- commands ----------------------------------------------------------------------


def cmd_sample(args: argparse.Namespace, lab: LabConfig) -> CommandResult:
    cfg = lab.experiment
    path = sample_loop(BridgeSpec(cfg.steps, cfg.master_seed, cfg.kind), rescale=not args.unscaled)
    text = format_path(path)
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
        return CommandResult({"out": str(args.out), "steps": path.steps}, lines=[f"wrote {args.out}"])
    return CommandResult({"path": text}, lines=[text.rstrip("\n")])


def cmd_hull(args: argparse.Namespace, lab: LabConfig) -> CommandResult:
    cfg = lab.experiment
    path = _single_path(args, cfg)
    grid = grid_for_path(path, cfg.cells_per_unit, cfg.margin_cells)
    analysis = analyze_path(path, grid)
    if args.pbm is not None:
        export_mask_pbm(analysis.hull, args.pbm)
    areas = analysis.areas
    payload = {"grid": grid.to_dict(), **areas.to_dict(), "partition_residual": areas.partition_residual()}
    lines = [
        f"hull_area     {areas.hull_area!r}",
        f"blocked_area  {areas.blocked_area!r}",
        f"zero_inside   {areas.zero_inside!r}",
        *(f"W[{n:+d}]         {a!r}" for n, a in areas.per_index.items()),
    ]
    return CommandResult(payload, lines=lines)


def cmd_winding_map(args: argparse.Namespace, lab: LabConfig) -> CommandResult:
    cfg = lab.experiment
    path = _single_path(args, cfg)
    grid = grid_for_path(path, cfg.cells_per_unit, cfg.margin_cells)
    analysis = analyze_path(path, grid)
    out = args.out or Path("winding.csv")
    sidecar = export_winding_csv(analysis.winding, grid, out)
    indices = analysis.winding.indices()
    return CommandResult(
        {"out": str(out), "grid": str(sidecar), "indices": indices},
        lines=[f"wrote {out} and {sidecar}; indices {indices}"],
    )


def cmd_verify_analytic(args: argparse.Namespace, lab: LabConfig) -> CommandResult:
    rows = verify_analytic(lab.quadrature)
    anomalies: list[Anomaly] = [
        ("analytic", f"{r.check_name}: |{r.computed!r} - {r.target!r}| > {r.tolerance:g}")
        for r in rows
        if not r.passed
    ]
    lines = [
        f"{'PASS' if r.passed else 'FAIL'}  {r.check_name:<40} {r.computed:.12g}"
        f"  (target {r.target:.12g}, err {r.abs_error:.2e})"
        for r in rows
    ]
    return CommandResult([r.as_json() for r in rows], anomalies=anomalies, lines=lines)


def cmd_verify_mc(args: argparse.Namespace, lab: LabConfig) -> CommandResult:
    cfg = lab.experiment
    reports = run_winding_experiment(cfg, per_sample_csv=args.per_sample_csv)
    by_name = {r.quantity: r for r in reports}
    decomposition = decomposition_residual(
        by_name["resolved_hull_area"], reports, sigmas=lab.thresholds.sigmas
    )
    anomalies = check_acceptance(reports, lab.thresholds)
    if not decomposition.bounded:
        anomalies.append(
            (
                "decomposition",
                f"residual {decomposition.residual:.5f} exceeds tail bound {decomposition.tail_bound:.5f}",
            )
        )
    payload: dict[str, Any] = {
        "reports": [r.model_dump() for r in reports],
        "decomposition": decomposition.model_dump(),
    }
    lines = [_estimate_line(r) for r in reports]
    if args.pointwise_r is not None:
        pointwise = run_index_pointwise(cfg, PlanarPoint.checked(args.pointwise_r, 0.0), sigmas=lab.thresholds.sigmas)
        payload["pointwise"] = pointwise.model_dump()
        for cell in pointwise.cells:
            lines.append(f"P(n={cell.n:+d}) {cell.empirical:.5f} vs {cell.analytic:.5f} +/- {cell.sigma:.5f}")
            if not cell.within:
                anomalies.append(("index_law", f"P(n={cell.n}) off by more than {lab.thresholds.sigmas} sigma"))
    return CommandResult(payload, anomalies=anomalies, lines=lines, store=True, config=cfg.to_dict())


def cmd_sle_check(args: argparse.Namespace, lab: LabConfig) -> CommandResult:
    sle = lab.sle
    kappa = args.kappa if args.kappa is not None else sle.kappa
    samples = args.samples if args.samples is not None else sle.samples
    thetas = args.thetas or [_theta(t) for t in DEFAULT_SLE_THETAS]
    seed = lab.experiment.master_seed
    threads = lab.experiment.threads
    sweep = sweep_angles(
        kappa,
        thetas,
        samples,
        master_seed=seed,
        dt_base=sle.dt_base,
        theta_exit=sle.theta_exit,
        alt_theta_exit=args.alt_theta_exit,
        t_max=sle.t_max,
        max_step=sle.max_step,
        n_jobs=threads,
    )
    anomalies = check_acceptance(sweep.reports, lab.thresholds)
    if not sweep.monotone:
        anomalies.append(("non_monotone", f"right probability increases between {sweep.violations}"))
    payload: dict[str, Any] = {
        "reports": [r.model_dump() for r in sweep.reports],
        "monotone": sweep.monotone,
        "band_sensitivity": {f"{t:.6f}": v for t, v in sweep.band_sensitivity.items()},
    }
    lines = [_estimate_line(r) for r in sweep.reports]
    if args.martingale:
        run = LoewnerRun(
            kappa,
            PlanarPoint(0.0, 1.0),
            seed=seed,
            dt_base=sle.dt_base,
            theta_exit=sle.theta_exit,
            t_max=sle.t_max,
            max_step=sle.max_step,
        )
        rows = martingale_profile(run, MARTINGALE_TIMES, samples, n_jobs=threads)
        payload["martingale"] = [row._asdict() for row in rows]
        start = rows[0].mean
        for row in rows[1:]:
            lines.append(f"E f(theta_{row.t:g}) = {row.mean:.5f} +/- {row.stderr:.5f} (f(theta_0) = {start:.5f})")
            if abs(row.mean - start) > lab.thresholds.sigmas * row.stderr:
                anomalies.append(("martingale", f"t={row.t}: {row.mean:.5f} vs {start:.5f}"))
    config = {**asdict(sle), "kappa": kappa, "thetas": thetas, "samples": samples, "seed": seed}
    return CommandResult(payload, anomalies=anomalies, lines=lines, store=True, config=config)


def cmd_vervaat_check(args: argparse.Namespace, lab: LabConfig) -> CommandResult:
    cfg = lab.experiment
    report = run_vervaat_check(cfg)
    anomalies: list[Anomaly] = []
    if not report.passed:
        anomalies.append(
            (
                "vervaat",
                f"{report.equal_areas}/{report.samples} equal areas, "
                f"{report.min_y_zero}/{report.samples} with min y = 0",
            )
        )
    lines = [
        f"equal hull areas      {report.equal_areas}/{report.samples}",
        f"min y == 0            {report.min_y_zero}/{report.samples}",
        f"midpoint height mean  {report.excursion_midpoint_mean:.5f} +/- {report.excursion_midpoint_stderr:.5f}"
        f" (excursion {report.excursion_midpoint_target:.5f})",
    ]
    return CommandResult(report.model_dump(), anomalies=anomalies, lines=lines, store=True, config=cfg.to_dict())


def cmd_convergence(args: argparse.Namespace, lab: LabConfig) -> CommandResult:
    report = convergence_study(lab.experiment, args.ladder, quantity=args.quantity)
    lines = [
        f"N={row.steps:<8d} h={row.cell_size:<10.6g} {row.mean:.5f} +/- {row.stderr:.5f}"
        f"  bias {row.relative_bias:+.2%}  blocked {row.blocked_area:.5f}"
        for row in report.rows
    ]
    lines.append(report.summary)
    config = {
        "base": lab.experiment.to_dict(),
        "ladder": [list(r) for r in args.ladder],
        "quantity": args.quantity,
    }
    return CommandResult(
        report.model_dump(), anomalies=check_convergence(report), lines=lines, store=True, config=config
    )


def cmd_render(args: argparse.Namespace, lab: LabConfig) -> CommandResult:
    cfg = lab.experiment
    path = _single_path(args, cfg)
    grid = grid_for_path(path, cfg.cells_per_unit, cfg.margin_cells)
    analysis = analyze_path(path, grid)
    spec = RenderSpec(out=args.out or Path(f"{args.figure}.svg"), width_px=args.width)
    if args.figure == "hull":
        written = render_hull(path, grid, spec, hull=analysis.hull, blocked=analysis.blocked)
    else:
        written = render_winding(analysis.winding, grid, spec, hull=analysis.hull, path=path)
    return CommandResult({"out": str(written)}, lines=[f"wrote {written}"])


COMMANDS = {
    "sample": cmd_sample,
    "hull": cmd_hull,
    "winding-map": cmd_winding_map,
    "verify-analytic": cmd_verify_analytic,
    "verify-mc": cmd_verify_mc,
    "sle-check": cmd_sle_check,
    "vervaat-check": cmd_vervaat_check,
    "convergence": cmd_convergence,
    "render": cmd_render,
}


def _estimate_line(report: Any) -> str:
    target = "" if report.target is None else f" (target {report.target:.6f})"
    return f"{report.quantity:<32} {report.mean:.6f} +/- {report.stderr:.6f}{target}"


def _save(
    lab: LabConfig,
    run_id: str,
    command: str,
    result: CommandResult,
    status: str,
    started: datetime,
    wall: float,
) -> None:
    seed = lab.experiment.master_seed
    store = ReportStore(lab.output.database_path)
    reports = result.payload.get("reports", [result.payload]) if isinstance(result.payload, dict) else result.payload
    store.insert_run(
        {
            "run_id": run_id,
            "command": command,
            "seed": seed,
            "status": status,
            "wall_clock_seconds": round(wall, 2),
            "timestamp_start": started.isoformat(),
            "timestamp_end": datetime.now(UTC).isoformat(),
            "config_hash": config_hash(result.config),
            "anomalies": [msg for _, msg in result.anomalies],
            "reports": reports,
            "config": result.config,
        }
    )
    logger.info("stored %s %s in %s", run_id, command, store.db_path)


def cli_main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        lab = _lab_config(args)
    except (ConfigurationError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    started = datetime.now(UTC)
    wall_start = time.monotonic()
    error: Exception | None = None
    try:
        result = COMMANDS[args.command](args, lab)
    except (ConfigurationError, DomainError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except LabError as e:
        error = e
        result = CommandResult({"error": str(e)})
    wall = time.monotonic() - wall_start

    status = determine_status(result.anomalies, error)
    run_id = generate_run_id(lab.experiment.master_seed)
    if result.store and error is None:
        _save(lab, run_id, args.command, result, status, started, wall)

    if args.json:
        print(json.dumps(result.payload, indent=2, default=str))
    else:
        for line in result.lines:
            print(line)
        if result.store or result.anomalies or error is not None:
            status_display = "OK" if status == "success" else status
            print(f"[{run_id}] {args.command} seed={lab.experiment.master_seed} ... {status_display} ({wall:.1f}s)")
            for _, message in result.anomalies:
                print(f"  {message}")
    if error is not None:
        print(f"error: {error}", file=sys.stderr)

    return EXIT_OK if status == "success" else EXIT_FAILED


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
