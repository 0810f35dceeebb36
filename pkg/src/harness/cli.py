"""Command-line entry point: simulate, track, bench and gospa."""

import argparse
import json
import logging
import sys
from pathlib import Path

from src.harness.experiment import (
    GospaParams,
    communication_budget,
    run_experiment,
    simulate_run,
    track_bundle,
)
from src.harness.render import render_scene
from src.harness.reports import emit_reports, score_estimate_file, write_estimates, write_lock
from src.harness.scenario import Scenario, load_scenario
from src.shared.config import settings
from src.shared.errors import DenfuseError
from src.sim.bundle import read_bundle, write_bundle
from src.vi_core.gradient import GradientVariant

logger = logging.getLogger(__name__)


def _method_list(value: str) -> list[str]:
    return [name.strip() for name in value.split(",") if name.strip()]


def _add_scenario_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scenario", type=Path, help="Scenario JSON file")
    parser.add_argument("--seed", type=int, help="Master seed (overrides DENFUSE_SEED)")
    parser.add_argument("--out", type=Path, help="Output directory (overrides DENFUSE_OUT)")


def _add_tracker_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--methods", type=_method_list, help="Comma-separated method labels or types"
    )
    parser.add_argument("--iterations", type=int, help="DNGD iterations per step")
    parser.add_argument("--alpha", type=float, help="Natural-gradient step size")
    parser.add_argument(
        "--variant", choices=[v.value for v in GradientVariant], help="Gradient form"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="denfuse", description="Decentralised variational tracking workbench"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser("simulate", help="Write a scenario bundle for run 0")
    _add_scenario_args(simulate)
    simulate.set_defaults(func=cmd_simulate)

    track = commands.add_parser("track", help="Run methods on an existing bundle")
    _add_scenario_args(track)
    _add_tracker_args(track)
    track.add_argument("--bundle", type=Path, required=True, help="Bundle directory")
    track.set_defaults(func=cmd_track)

    bench = commands.add_parser("bench", help="End-to-end Monte Carlo experiment")
    _add_scenario_args(bench)
    _add_tracker_args(bench)
    bench.add_argument("--workers", type=int, help="Worker processes")
    bench.set_defaults(func=cmd_bench)

    score = commands.add_parser("gospa", help="Score an estimates file against truth")
    score.add_argument("--truth", type=Path, required=True, help="truth.jsonl")
    score.add_argument("--estimates", type=Path, required=True, help="Estimates JSONL")
    score.add_argument("--p", type=float, default=settings.GOSPA_P)
    score.add_argument("--alpha", type=float, default=settings.GOSPA_ALPHA)
    score.add_argument("--c", type=float, default=settings.GOSPA_C)
    score.set_defaults(func=cmd_gospa)

    return parser


def resolve_scenario(args: argparse.Namespace) -> Scenario:
    """Load the scenario and apply CLI flags over DENFUSE_ variables."""
    scenario = load_scenario(args.scenario or settings.default_scenario)
    seed = args.seed if args.seed is not None else settings.seed_override
    return scenario.with_overrides(
        seed=seed,
        iterations=getattr(args, "iterations", None),
        alpha=getattr(args, "alpha", None),
        variant=getattr(args, "variant", None),
    )


def _output_dir(args: argparse.Namespace) -> Path:
    return args.out or settings.output_path


def cmd_simulate(args: argparse.Namespace) -> int:
    scenario = resolve_scenario(args)
    out = _output_dir(args)
    bundle = simulate_run(scenario, 0, communication_budget(scenario, scenario.methods))
    write_bundle(bundle, out)
    write_lock(scenario, out)
    render_scene(
        bundle,
        scenario.build_region(),
        out / "scene.png",
        time_step=min(scenario.convergence_step, scenario.num_steps),
    )
    logger.info(f"✓ Bundle for {scenario.name} written to {out}")
    return 0


def cmd_track(args: argparse.Namespace) -> int:
    scenario = resolve_scenario(args)
    out = _output_dir(args)
    bundle = read_bundle(args.bundle)
    report, outcomes = track_bundle(scenario, bundle, args.methods, out)
    for outcome in outcomes:
        if outcome.failure is None:
            write_estimates(outcome, out)
    emit_reports(report, out)
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    scenario = resolve_scenario(args)
    out = _output_dir(args)
    report = run_experiment(scenario, args.methods, out, args.workers)
    emit_reports(report, out)
    for method in report.methods:
        if method.summary is None:
            logger.warning(f"{method.label}: every run failed")
            continue
        s = method.summary
        logger.info(
            f"{method.label:>12}  MGOSPA {s.mgospa.mean:8.1f} ± {s.mgospa.std:5.1f}  "
            f"CI {s.ci:7.1f}  failures {method.failures}"
        )
    return 0


def cmd_gospa(args: argparse.Namespace) -> int:
    params = GospaParams(args.p, args.alpha, args.c)
    result = score_estimate_file(args.truth, args.estimates, params)
    print(json.dumps(result, indent=2, sort_keys=True))
    return 0


def main(argv: list[str] | None = None) -> int:
    """Parse arguments and dispatch; DenfuseError exits 1, bad arguments exit 2."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=settings.LOG_LEVEL,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    try:
        return args.func(args)
    except DenfuseError as e:
        logger.error(f"❌ {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
