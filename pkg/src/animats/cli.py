"""Command line: ``run``, ``sweep`` and ``probe``.

Exit codes: 0 on success (extinction included), 1 on configuration
errors, 2 on I/O errors.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .config import ConfigError, parse_config
from .harness import MODE_FLAGS, derive_seed, probe_command, run_scenario, sweep
from .snapshot import SnapshotError, load_snapshot


def _key_value(text: str) -> tuple[str, str]:
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    key, value = text.split("=", 1)
    return key.strip(), value.strip()


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value configuration file")
    p.add_argument("--out", help="output directory")
    p.add_argument("--iterations", type=int, help="maximum number of iterations")
    p.add_argument("--snapshot-every", type=int, help="write a snapshot every N iterations (0: never)")
    p.add_argument("--set", action="append", type=_key_value, default=[], metavar="KEY=VALUE",
                   help="override any configuration key")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="animats", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a single scenario")
    _common(run)
    run.add_argument("--seed", type=int)
    run.add_argument("--pg", help="grass appearance probability, e.g. 0.005 or 1/200")
    run.add_argument("--motivation", choices=("on", "off"))
    run.add_argument("--resume", help="continue from this snapshot file")

    sw = sub.add_parser("sweep", help="run a grid of grass probabilities x modes x seeds")
    _common(sw)
    sw.add_argument("--pg", nargs="+", default=["1/2000", "1/200", "1/20"])
    sw.add_argument("--motivation", nargs="+", choices=("on", "off"), default=["on", "off"])
    sw.add_argument("--seed", type=int, default=None, help="master seed")
    sw.add_argument("--replicates", type=int, default=10, help="seeds per condition")
    sw.add_argument("--seeds", type=int, nargs="+", help="explicit per-run seeds (overrides --replicates)")
    sw.add_argument("--jobs", type=int, default=1)

    probe = sub.add_parser("probe", help="classify the control schemes in a snapshot")
    probe.add_argument("snapshot")
    probe.add_argument("--out", help="output directory (default: next to the snapshot)")
    return parser


def _overrides(args) -> dict:
    values = dict(args.set)
    for flag, key in (("out", "output_directory"), ("iterations", "max_iterations"),
                      ("snapshot_every", "snapshot_every")):
        if getattr(args, flag, None) is not None:
            values[key] = str(getattr(args, flag))
    if args.command == "run":
        if args.seed is not None:
            values["seed"] = str(args.seed)
        if args.pg is not None:
            values["grass_probability"] = args.pg
        if args.motivation is not None:
            values["motivation"] = args.motivation
    return values


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "probe":
            print(probe_command(args.snapshot, args.out), end="")
            return 0
        config = parse_config(args.config, _overrides(args))
        if args.command == "run":
            resume = load_snapshot(args.resume) if args.resume else None
            result = run_scenario(config, out_dir=config.output_directory, resume=resume)
            m = result.manifest
            print(f"{m['outcome']}: N={m['final_n']} after {m['iterations_run']} iterations "
                  f"-> {result.out_dir}")
            return 0
        if args.seeds:
            seeds = args.seeds
        else:
            master = config.seed if args.seed is None else args.seed
            seeds = [derive_seed(master, i) for i in range(args.replicates)]
        pgs = [parse_config(None, {"grass_probability": pg}).world.grass_probability for pg in args.pg]
        modes = [MODE_FLAGS[m] for m in dict.fromkeys(args.motivation)]
        rows = sweep(config, pgs, modes, seeds, config.output_directory, jobs=args.jobs)
        survived = sum(r.get("survived") is True for r in rows)
        print(f"{len(rows)} runs, {survived} survived -> {config.output_directory}/summary.csv")
        return 0
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SnapshotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
