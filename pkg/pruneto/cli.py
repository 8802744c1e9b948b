# coding: utf-8

# Copyright 2024 The pruneto developers, all rights reserved.
#
# This file is part of pruneto.
#
# pruneto is free software: you can redistribute it and/or modify it under
# the terms of the GNU General Public License as published by the Free
# Software Foundation, either version 3.0 of the License, or any later version.
#
# pruneto is distributed in the hope that it will be useful, but WITHOUT
# ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE. See the GNU General Public License for more
# details.
#
# You should have received a copy of the GNU General Public License along
# with pruneto. If not, see <https://www.gnu.org/licenses/>.


"""Command line entry point

    pruneto run <scenario.ini> [--out DIR] [--seed N] [--snapshot-every N] [--netcdf]
    pruneto validate <scenario.ini>
    pruneto gen <scenario-name> <dir> [--option key=value ...]
    pruneto replay <manifest.json> [--out DIR]
"""

import argparse
import ast
import sys
from typing import List, Optional

from pruneto.exceptions import ConfigError
from pruneto.scenario import (
    EXIT_CONFIG_ERROR,
    EXIT_SUCCESS,
    GENERATORS,
    generate,
    replay_manifest,
    run_scenario,
    validate_scenario,
)


def _option(text: str):
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected key=value, got '{text}'")
    try:
        return key.replace("-", "_"), ast.literal_eval(value)
    except (ValueError, SyntaxError):
        return key.replace("-", "_"), value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pruneto",
        description="Design space pruning and Pareto tracing topology optimization on 2D grids",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="prune then trace the Pareto front of a scenario")
    run.add_argument("config", help="scenario file")
    run.add_argument("--out", default=None, help="artifact directory (default: the [output] directory)")
    run.add_argument("--seed", type=int, default=None, help="seed recorded in the manifest")
    run.add_argument("--snapshot-every", type=int, default=None, help="write field snapshots every N steps")
    run.add_argument("--netcdf", action="store_true", default=None, help="also export the front to front.nc")

    validate = commands.add_parser("validate", help="check a scenario file without solving it")
    validate.add_argument("config", help="scenario file")

    gen = commands.add_parser("gen", help="write a built-in scenario")
    gen.add_argument("name", choices=sorted(GENERATORS))
    gen.add_argument("directory")
    gen.add_argument(
        "-o", "--option", type=_option, action="append", default=[], help="generator keyword, as key=value"
    )

    replay = commands.add_parser("replay", help="run again the scenario recorded in a manifest")
    replay.add_argument("manifest")
    replay.add_argument("--out", default=None, help="artifact directory (default: next to the manifest)")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "run":
        result = run_scenario(args.config, args.out, args.snapshot_every, args.seed, args.netcdf)
        return result.status

    if args.command == "validate":
        messages = validate_scenario(args.config)
        for message in messages:
            print(f"{args.config}: {message}", file=sys.stderr)
        return EXIT_CONFIG_ERROR if messages else EXIT_SUCCESS

    if args.command == "gen":
        try:
            path = generate(args.name, args.directory, **dict(args.option))
        except (TypeError, ValueError) as error:
            print(f"gen {args.name}: {error}", file=sys.stderr)
            return EXIT_CONFIG_ERROR
        print(path)
        return EXIT_SUCCESS

    try:
        return replay_manifest(args.manifest, args.out).status
    except ConfigError as error:
        print(error, file=sys.stderr)
        return EXIT_CONFIG_ERROR


if __name__ == "__main__":
    sys.exit(main())
