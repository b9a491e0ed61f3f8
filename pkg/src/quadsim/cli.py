"""Command-line entry point: ``quadsim run | preset | validate``."""

from __future__ import annotations

import argparse
import json
import sys

from quadsim.errors import ScenarioError
from quadsim.integrator import METHODS
from quadsim.scenario import PRESETS, dump_scenario, load_scenario, preset_scenario, run, with_overrides

EXIT_OK = 0
EXIT_SCENARIO = 2
EXIT_SINGULARITY = 3
EXIT_IO = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quadsim", description="Quadrotor 6-DOF batch simulator.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate a scenario and write a trajectory CSV")
    p_run.add_argument("--scenario", required=True)
    p_run.add_argument("--out", required=True)
    p_run.add_argument("--dt", type=float)
    p_run.add_argument("--duration", type=float)
    p_run.add_argument("--method", choices=METHODS)

    p_preset = sub.add_parser("preset", help="write a built-in scenario as JSON")
    p_preset.add_argument("--name", required=True, choices=PRESETS)
    p_preset.add_argument("--out", required=True)

    p_val = sub.add_parser("validate", help="parse and check a scenario file")
    p_val.add_argument("--scenario", required=True)
    return parser


def _cmd_run(args) -> int:
    scenario = with_overrides(load_scenario(args.scenario), args.dt, args.duration, args.method)
    summary = run(scenario, args.out)
    print(json.dumps(summary.to_dict()))
    if summary.termination == "singularity":
        print(f"quadsim: stopped early: {summary.message}", file=sys.stderr)
        return EXIT_SINGULARITY
    return EXIT_OK


def _cmd_preset(args) -> int:
    dump_scenario(preset_scenario(args.name), args.out)
    return EXIT_OK


def _cmd_validate(args) -> int:
    load_scenario(args.scenario)
    print(f"{args.scenario}: ok")
    return EXIT_OK


_COMMANDS = {"run": _cmd_run, "preset": _cmd_preset, "validate": _cmd_validate}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ScenarioError as exc:
        print(f"quadsim: invalid scenario: {exc}", file=sys.stderr)
        return EXIT_SCENARIO
    except OSError as exc:
        print(f"quadsim: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
