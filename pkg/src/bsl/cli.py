"""Command-line entry point.

    bsl eigen|exponents|mode|coupled|admit|simulate|threshold|scaling
        --config <file> [--out <dir>] [--jobs <n>] [--seed <u64>]

The config file is JSON holding the command's parameters.  Results are
printed as a short summary and, when --out is given, written as result.csv,
result.json and run_meta.json (the meta file carries the non-deterministic
timestamp; the csv is bit-identical across reruns).

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 instability observed where stability was asserted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import BracketError, ConfigError, DomainError, IntegrationFailure
from .harness import COMMANDS, ExperimentConfig, SweepResult, export, run_experiment

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_INSTABILITY = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bsl",
        description="Stability experiments for Boussinesq flow near Couette shear")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", required=True, help="JSON parameter file")
        cmd.add_argument("--out", default=None, help="output directory")
        cmd.add_argument("--jobs", type=int, default=1, help="parallel sweep workers")
        cmd.add_argument("--seed", type=int, default=0, help="base random seed")
    return parser


def _stability_violations(result: SweepResult) -> list[str]:
    """Rows where an asserted stability property failed."""
    messages = []
    for row in result.rows:
        if "error" in row:
            continue
        if result.command == "mode" and row.get("passed") is False:
            messages.append(f"mode point {row['index']}: ratio above envelope")
        if result.command == "simulate" and row.get("flag_instability_observed"):
            messages.append(f"simulate seed {row.get('seed')}: instability observed")
        if result.command == "coupled" and row.get("monotone") is False:
            messages.append(f"coupled point {row['index']}: energy increased")
        if result.command == "threshold" and row.get("certified_stable") is False:
            messages.append(f"threshold nu={row.get('nu')}: certified point unstable")
    return messages


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            params = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    declared = params.pop("command", None)
    if declared is not None and declared != args.command:
        print(f"config error: config is for command {declared!r}, "
              f"invoked as {args.command!r}", file=sys.stderr)
        return EXIT_CONFIG

    if args.command == "simulate" and args.out:
        params.setdefault("artifacts_dir", args.out)

    try:
        cfg = ExperimentConfig(command=args.command, params=params, out=args.out,
                               jobs=args.jobs, seed=args.seed)
        result = run_experiment(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (IntegrationFailure, BracketError, DomainError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    # point-level errors: config problems inside points also surface here
    for row in result.failed_rows:
        print(f"point {row['index']} failed: {row['error']}", file=sys.stderr)

    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        export(result, out / "result.csv", fmt="csv")
        export(result, out / "result.json", fmt="json")
        with open(out / "run_meta.json", "w", encoding="utf-8") as fh:
            json.dump(result.provenance, fh, indent=2, sort_keys=True)
        print(f"wrote {out / 'result.csv'}")

    ok_rows = len(result.rows) - len(result.failed_rows)
    print(f"{args.command}: {ok_rows}/{len(result.rows)} points completed")

    if result.failed_rows:
        first = result.failed_rows[0]["error"]
        if first.startswith("ConfigError"):
            return EXIT_CONFIG
        return EXIT_NUMERICAL

    violations = _stability_violations(result)
    for message in violations:
        print(f"instability: {message}", file=sys.stderr)
    if violations:
        return EXIT_INSTABILITY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
