"""Command-line entry point.

Subcommands map one-to-one onto the experiment runners:

    airelm sweep-nr    --config exp.ini --out results.csv
    airelm sweep-snr   --config exp.ini --seeds 50
    airelm sweep-kappa --config exp.ini
    airelm online      --config exp.ini
    airelm single      --seed 7 --baseline

Without --config, built-in defaults run the synthetic two-Gaussians dataset.
Exit codes: 0 success, 1 configuration error, 2 data error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .config import ExperimentConfig, parse_config
from .errors import ConfigError, DataError
from .experiments import run, summarize

_SUBCOMMANDS = {
    "sweep-nr": "sweep_nr",
    "sweep-snr": "sweep_snr",
    "sweep-kappa": "sweep_kappa",
    "online": "online",
    "single": "single",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="airelm",
        description="Over-the-air ELM experiment harness")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _SUBCOMMANDS:
        p = sub.add_parser(name, help=f"run the {name.replace('-', ' ')} experiment")
        p.add_argument("--config", help="INI experiment config file")
        p.add_argument("--seed", type=int, help="master seed (overrides config)")
        p.add_argument("--seeds", type=int, help="number of trial seeds")
        p.add_argument("--out", help="CSV output path")
        p.add_argument("--baseline", action=argparse.BooleanOptionalAction,
                       help="also run the digital-ELM baseline")
        p.add_argument("--threads", type=int, help="worker threads for trials")
    return parser


def _print_summary(results) -> None:
    table = summarize(results)
    cols = ("model", "n_r", "snr_db", "kappa", "eta", "step", "iteration",
            "n_trials", "mean_accuracy", "std_accuracy",
            "mean_normalized_accuracy", "mean_wall_ms")
    keep = [c for c in cols
            if any(row.get(c) is not None for row in table)]
    header = "  ".join(f"{c:>12}" for c in keep)
    print(header)
    for row in table:
        cells = []
        for c in keep:
            v = row.get(c)
            if v is None:
                cells.append(f"{'':>12}")
            elif isinstance(v, float):
                cells.append(f"{v:>12.4f}")
            else:
                cells.append(f"{str(v):>12}")
        print("  ".join(cells))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    kind = _SUBCOMMANDS[args.command]
    try:
        if args.config is not None:
            cfg = parse_config(args.config, kind=kind)
        else:
            cfg = ExperimentConfig(kind=kind)
        overrides = {}
        if args.seed is not None:
            overrides["master_seed"] = args.seed
        if args.seeds is not None:
            overrides["seeds"] = args.seeds
        if args.out is not None:
            overrides["out"] = args.out
        if args.baseline is not None:
            overrides["baseline"] = args.baseline
        if args.threads is not None:
            overrides["threads"] = args.threads
        if overrides:
            cfg = replace(cfg, **overrides)
        cfg = cfg.resolved()
        results = run(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    _print_summary(results)
    if cfg.out is not None:
        print(f"results: {cfg.out}")
        print(f"manifest: {cfg.out}.manifest.json")
    return 0


if __name__ == "__main__":
    sys.exit(main())
