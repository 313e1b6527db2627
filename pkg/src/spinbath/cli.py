"""Command line: ``run``, ``figure`` and ``validate``."""
from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from pathlib import Path

from .config import load_config
from .errors import CapacityError, ConfigurationError, NumericError, StateError
from .output import emit_outputs
from .scenario import FIGURES, reproduce_figure, run_scenario

log = logging.getLogger("spinbath")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spinbath", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one scenario from a JSON config")
    run.add_argument("--config", required=True, type=Path)
    run.add_argument("--engine", choices=("kernels", "oracle"))
    run.add_argument("--seed", type=int)
    run.add_argument("--out", type=Path, default=Path("out"))

    fig = sub.add_parser("figure", help="reproduce one of the figure scenarios")
    fig.add_argument("--id", required=True, type=int, dest="fig_id",
                     help=f"figure id, one of {sorted(FIGURES)}")
    fig.add_argument("--seed", type=int, default=0)
    fig.add_argument("--out", type=Path, default=Path("out"))
    fig.add_argument("--pair-sign", choices=("equal", "opposite"), default="equal")

    val = sub.add_parser("validate", help="check a JSON config without running it")
    val.add_argument("--config", required=True, type=Path)
    return p


def _run(args) -> int:
    config = load_config(args.config)
    overrides = {}
    if args.engine:
        overrides["engine"] = args.engine
    if args.seed is not None:
        overrides["seed"] = args.seed
    if overrides:
        config = dataclasses.replace(config, **overrides)
    result = run_scenario(config)
    formats = ["csv", "svg", "json"]
    paths = emit_outputs(result, formats, args.out / config.name, title=config.name)
    # explicit output targets in the config are honoured as well
    for fmt, target in (("csv", config.output.csv), ("svg", config.output.svg)):
        if target:
            stem = Path(target)
            paths += emit_outputs(result, [fmt], stem.with_suffix(""), title=config.name)
    for path in paths:
        print(path)
    return 0


def _figure(args) -> int:
    for path in reproduce_figure(args.fig_id, args.seed, args.out, pair_sign=args.pair_sign):
        print(path)
    return 0


def _validate(args) -> int:
    config = load_config(args.config)
    print(json.dumps(config.to_dict(), indent=2, sort_keys=True))
    return 0


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handler = {"run": _run, "figure": _figure, "validate": _validate}[args.command]
    try:
        return handler(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3
    except (StateError, NumericError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
