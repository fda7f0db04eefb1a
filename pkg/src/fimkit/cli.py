"""Command-line front end: ``fim generate | mine | bench | verify``.

Exit codes: 0 success, 1 usage or configuration error, 2 I/O or runtime
failure, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Sequence

from . import bench
from .apriori import mine_apriori
from .core import CapacityError, FormatError, SupportThreshold, ThresholdError, read_database, write_result
from .datagen import DESK_DEFAULTS, FULL_DEFAULTS, ConfigError, GeneratorConfig, write_dataset
from .eclat import mine_eclat
from .fpgrowth import mine_fpgrowth
from .naive import mine_naive

ALGORITHMS = {
    "naive": mine_naive,
    "apriori": mine_apriori,
    "eclat": mine_eclat,
    "fpgrowth": mine_fpgrowth,
}

PRESETS = {"full": FULL_DEFAULTS, "desk": DESK_DEFAULTS}

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _min_support(token: str) -> SupportThreshold:
    try:
        return SupportThreshold.parse(token)
    except ThresholdError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(token: str) -> int:
    value = int(token)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {token}")
    return value


def _add_generator_flags(p: argparse.ArgumentParser, preset: str) -> None:
    p.add_argument("--preset", choices=sorted(PRESETS), default=preset,
                   help=f"base generator settings (default: {preset})")
    p.add_argument("--baskets", type=int, help="number of baskets")
    p.add_argument("--items", type=int, help="number of distinct filler items")
    p.add_argument("--frequent-sets", type=int, help="number of planted frequent sets")
    p.add_argument("--max-basket", type=int, help="maximum basket size")
    p.add_argument("--density", type=float, help="probability a basket embeds a planted set")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (FIM_SEED overrides)")


def _config_from(args) -> GeneratorConfig:
    config = PRESETS[args.preset]
    changes = {
        "basket_count": args.baskets,
        "item_count": args.items,
        "frequent_set_count": args.frequent_sets,
        "max_basket_size": args.max_basket,
        "density": args.density,
    }
    seed = os.environ.get("FIM_SEED")
    try:
        changes["seed"] = int(seed) if seed not in (None, "") else args.seed
    except ValueError:
        raise UsageError(f"FIM_SEED must be an integer, got {seed!r}") from None
    return config.replace(**{k: v for k, v in changes.items() if v is not None})


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fim", description="Frequent itemset mining toolkit.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a synthetic basket file")
    _add_generator_flags(g, "full")
    g.add_argument("--output", required=True, help="destination file")
    g.add_argument("--flags-output", help="optional 0/1 per line: basket embeds a planted set")

    m = sub.add_parser("mine", help="mine frequent itemsets from a basket file")
    m.add_argument("--algorithm", choices=sorted(ALGORITHMS), default="fpgrowth")
    m.add_argument("--min-support", type=_min_support, required=True,
                   help="a count such as 2, or a fraction such as 0.6 (contains '.')")
    m.add_argument("--input", required=True)
    m.add_argument("--output", help="result file (default: stdout)")
    m.add_argument("--threads", type=_positive, default=1, help="miners run sequentially; kept for scripts")

    b = sub.add_parser("bench", help="run a timed parameter sweep")
    b.add_argument("--experiment", choices=sorted(bench.EXPERIMENTS), required=True)
    _add_generator_flags(b, "desk")
    b.add_argument("--trials", type=_positive, default=3)
    b.add_argument("--min-support", type=_min_support, default=SupportThreshold.fraction(0.01))
    b.add_argument("--algorithms", default="apriori,eclat,fpgrowth", help="comma-separated subset")
    b.add_argument("--points", help="comma-separated sweep values (default: the standard sweep)")
    b.add_argument("--output-dir", required=True)
    b.add_argument("--threads", type=_positive, default=1, help="miners run sequentially; kept for scripts")

    v = sub.add_parser("verify", help="check that all miners agree on a basket file")
    v.add_argument("--input", required=True)
    v.add_argument("--min-support", type=_min_support, required=True)
    v.add_argument("--against-naive", action="store_true", help="also compare with the brute-force miner")
    return parser


def cmd_generate(args) -> int:
    config = _config_from(args)
    with open(args.output, "w", encoding="utf-8", newline="\n") as out:
        if args.flags_output:
            with open(args.flags_output, "w", encoding="ascii", newline="\n") as side:
                write_dataset(config, out, side)
        else:
            write_dataset(config, out)
    return EXIT_OK


def cmd_mine(args) -> int:
    db = read_database(args.input)
    result = ALGORITHMS[args.algorithm](db, args.min_support)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as out:
            write_result(result, out)
    else:
        write_result(result, sys.stdout)
    return EXIT_OK


def _parse_points(text: str, kind: str) -> list[float]:
    conv = float if kind == "density" else int
    try:
        return [conv(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"bad --points value {text!r}") from None


def cmd_bench(args) -> int:
    config = _config_from(args)
    points = _parse_points(args.points, args.experiment) if args.points else None
    algorithms = [a.strip() for a in args.algorithms.split(",") if a.strip()]
    try:
        spec = bench.ExperimentSpec(args.experiment, config, points, algorithms,
                                    args.trials, args.min_support)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = bench.run_experiment(spec)
    paths = bench.emit_report(report, args.output_dir)
    bad = report.disagreements()
    if bad:
        print(f"warning: itemset counts disagree at {bad}", file=sys.stderr)
    for name, path in paths.items():
        print(f"{name}: {path}")
    return EXIT_OK


def cmd_verify(args) -> int:
    db = read_database(args.input)
    names = ["apriori", "eclat", "fpgrowth"]
    if args.against_naive:
        names.insert(0, "naive")
    results = {name: ALGORITHMS[name](db, args.min_support).by_tokens() for name in names}
    reference_name = names[0]
    reference = results[reference_name]
    mismatched = False
    for name in names[1:]:
        other = results[name]
        if other == reference:
            continue
        mismatched = True
        diffs = sorted(set(reference.items()) ^ set(other.items()), key=lambda kv: (len(kv[0]), kv))
        print(f"{name} disagrees with {reference_name}:", file=sys.stderr)
        for tokens, count in diffs[:10]:
            side = reference_name if reference.get(tokens) == count else name
            print(f"  {side}: {' '.join(tokens)} : {count}", file=sys.stderr)
    if mismatched:
        return EXIT_MISMATCH
    print(f"ok: {len(names)} miners agree on {len(reference)} itemsets")
    return EXIT_OK


COMMANDS = {"generate": cmd_generate, "mine": cmd_mine, "bench": cmd_bench, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except bench.ExperimentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (CapacityError, ThresholdError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
