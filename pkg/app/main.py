"""This module defines the command-line entry point of holonomy-lab."""

import sys
import json
import logging
import argparse
from typing import Optional, Sequence

import numpy as np
from dotenv import load_dotenv
from pydantic import ValidationError

import utils
from utils import RunSettings
from config import HolonomyRequest, SweepConfig, load_config
from errors import ConfigError, HolonomyLabError, ResolutionError
from gates import (
    OneQubitGateSpec,
    TwoQubitGateSpec,
    compose_two,
    one_qubit_gate,
    synthesize_one_qubit,
    two_qubit_gate,
)
from holonomy import DEFAULT_LOOP_STEPS, LoopSpec, composite_gate, composite_holonomy
from lambda_models import sech_pulse, square_pulse
from open_system import fidelity_sweep


LOGFILE_NAME = "sweep_output.log"

status_logger = logging.getLogger("status_logger")


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _finite(*values: float) -> None:
    if not all(np.isfinite(v) for v in values):
        raise ConfigError(f"angles must be finite, got {values}")


def cmd_gate(args) -> int:
    """Prints an analytic gate; every failure exits with 2."""
    try:
        if args.gate == "one-qubit":
            _finite(args.theta, args.phi)
            spec = OneQubitGateSpec(theta=args.theta, phi=args.phi)
            _emit({"gate": utils.matrix_to_json(one_qubit_gate(spec))})
        elif args.gate == "compose":
            _finite(*args.n, *args.m)
            n = OneQubitGateSpec(theta=args.n[0], phi=args.n[1])
            m = OneQubitGateSpec(theta=args.m[0], phi=args.m[1])
            _emit({"gate": utils.matrix_to_json(compose_two(n, m))})
        elif args.gate == "two-qubit":
            _finite(args.theta, args.phi)
            spec = TwoQubitGateSpec(theta=args.theta, phi=args.phi)
            _emit({"gate": utils.matrix_to_json(two_qubit_gate(spec))})
        else:
            target = utils.matrix_from_json(args.target)
            n, m = synthesize_one_qubit(target)
            _emit({
                "loops": [{"theta": s.theta, "phi": s.phi} for s in (n, m)],
                "gate": utils.matrix_to_json(compose_two(n, m)),
            })
    except (HolonomyLabError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    return 0


def _pulse_for(shape: str):
    if shape == "square":
        return square_pulse()
    return sech_pulse(beta=1.0, renormalize=shape == "sech")


def _holonomy_request(args) -> HolonomyRequest:
    if args.config:
        experiment = load_config(args.config).experiment
        if not isinstance(experiment, HolonomyRequest):
            raise ConfigError(f"config {args.config} does not describe a holonomy request")
        return experiment

    loops = [{"theta": args.theta, "phi": args.phi}]
    loops += [{"theta": th, "phi": ph} for th, ph in args.compose or ()]
    return HolonomyRequest(
        kind="holonomy",
        loops=loops,
        pulse=args.pulse,
        subspace="two-qubit" if args.two_qubit else "one-qubit",
        grid=args.grid,
        method=args.method,
    )


def _holonomy_and_gate(loops, grid: int, method: str):
    try:
        z, _ = composite_holonomy(loops, grid, method)
        return z, composite_gate(loops, grid, method), method
    except ResolutionError as err:
        if method == "overlap":
            raise
        status_logger.warning("%s; using the overlap method instead", err)
    z, _ = composite_holonomy(loops, grid, "overlap")
    return z, composite_gate(loops, grid, "overlap"), "overlap"


def cmd_holonomy(args) -> int:
    """Prints the holonomy of one loop, or of several composed loops, and its gate."""
    try:
        request = _holonomy_request(args)
        pulse = _pulse_for(request.pulse)
        loops = [LoopSpec(theta=lp.theta, phi=lp.phi, pulse=pulse, subspace=request.subspace)
                 for lp in request.loops]
        z, gate, method = _holonomy_and_gate(loops, request.grid, request.method)
    except ValidationError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except HolonomyLabError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.exit_code

    _emit({"holonomy": utils.matrix_to_json(z), "gate": utils.matrix_to_json(gate), "method": method})
    return 0


def cmd_sweep(args) -> int:
    """Runs a decay sweep and writes its rows; flagged rows exit with 4."""
    try:
        experiment_config = load_config(args.config)
        cfg = experiment_config.experiment
        if not isinstance(cfg, SweepConfig):
            raise ConfigError(f"config {args.config} does not describe a sweep")
        settings = RunSettings(
            workers=utils.resolve_workers(args.workers),
            output=args.output or experiment_config.output,
            format=args.format or experiment_config.format,
            verbose=args.verbose,
        )
    except HolonomyLabError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.exit_code

    status_logger.info("Sweep %s over %d grid points with %d workers",
                       cfg.kind, len(cfg.grid), settings.workers)
    reports = fidelity_sweep(cfg, settings.workers)

    text = utils.reports_to_csv(reports) if settings.format == "csv" else utils.reports_to_json(reports)
    if settings.output:
        with open(settings.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        status_logger.info("Wrote %d rows to %s", len(reports), settings.output)
    else:
        sys.stdout.write(text)

    # Save the log file as `sweep_output_<kind>.log`
    utils.copy_log_file(LOGFILE_NAME, cfg.kind)

    flagged = [r.parameter for r in reports if r.flagged]
    if flagged:
        status_logger.warning("Flagged grid points: %s", ", ".join(f"{p:g}" for p in flagged))
        return 4
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="holonomy-lab",
                                     description="Non-adiabatic holonomic gates in Lambda systems")
    parser.add_argument("-v", "--verbose", default=False, action="store_true",
                        help="Enable debug logging on the console")
    commands = parser.add_subparsers(dest="command", required=True)

    gate = commands.add_parser("gate", help="Print an analytic holonomic gate")
    gate_kinds = gate.add_subparsers(dest="gate", required=True)
    for name in ("one-qubit", "two-qubit"):
        sub = gate_kinds.add_parser(name, help=f"{name} gate from its loop angles")
        sub.add_argument("--theta", type=float, required=True, help="Polar angle, radians")
        sub.add_argument("--phi", type=float, default=0.0, help="Azimuthal angle, radians")
    compose = gate_kinds.add_parser("compose", help="Gate of loop n followed by loop m")
    compose.add_argument("--n", type=float, nargs=2, required=True, metavar=("THETA", "PHI"))
    compose.add_argument("--m", type=float, nargs=2, required=True, metavar=("THETA", "PHI"))
    synth = gate_kinds.add_parser("synthesize", help="Two loops realizing a 2 x 2 unitary")
    synth.add_argument("--target", type=str, required=True,
                       help="JSON 2 x 2 matrix of [re, im] pairs")
    gate.set_defaults(handler=cmd_gate)

    hol = commands.add_parser("holonomy", help="Holonomy of a loop or a composition of loops")
    hol.add_argument("--theta", type=float, default=0.0, help="Polar angle of the loop axis")
    hol.add_argument("--phi", type=float, default=0.0, help="Azimuthal angle of the loop axis")
    hol.add_argument("--pulse", choices=["square", "sech", "sech-truncated"], default="square",
                     help="Pulse shape; sech is renormalized to area pi")
    hol.add_argument("--grid", type=int, default=DEFAULT_LOOP_STEPS, help="Time steps per loop")
    hol.add_argument("--compose", type=float, nargs=2, action="append", metavar=("THETA", "PHI"),
                     help="Loop traversed after the previous ones; may be repeated")
    hol.add_argument("--two-qubit", default=False, action="store_true",
                     help="Transport span{|00>, |11>} of two ions")
    hol.add_argument("--method", choices=["overlap", "magnus"], default="overlap",
                     help="Path-ordered product scheme")
    hol.add_argument("--config", type=str, default=None, help="JSON holonomy request")
    hol.set_defaults(handler=cmd_holonomy)

    sweep = commands.add_parser("sweep", help="Fidelity sweep of a decay experiment")
    sweep.add_argument("config", type=str, help="JSON sweep configuration")
    sweep.add_argument("-o", "--output", type=str, default=None, help="Output file (default: config)")
    sweep.add_argument("--format", choices=["csv", "json"], default=None, help="Output format")
    sweep.add_argument("-w", "--workers", type=int, default=None,
                       help="Concurrent workers (default: HOLONOMY_LAB_THREADS, 0 = auto)")
    sweep.set_defaults(handler=cmd_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    utils.setup_loggers(LOGFILE_NAME, args.verbose)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
