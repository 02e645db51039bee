"""
Command line front door.

    primesums thm2 --range 1:10000
    primesums collision --n 20
    primesums pi-formula --range 2:10000 --variant audit
    primesums trend --xs 10000,100000,1000000 --format csv --plot trend.png
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import List, Optional

from . import __version__
from .initVariables import RunConfig
from .procedure import run
from .utils import Command, ParityVariant, _convert_value

logger = logging.getLogger(__name__)


def _int_list(text: str) -> List[int]:
    values = [_convert_value(part) for part in text.split(",") if part.strip()]
    if not values or not all(isinstance(v, int) for v in values):
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")
    return values


def _count(text: str) -> int:
    value = _convert_value(text)
    if not isinstance(value, int):
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    return value


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_argument_group("values")
    source.add_argument("--range", help="A:B or A:B:S, bounds inclusive (1e4 style allowed)")
    source.add_argument("--n", type=_count, help="a single x or n")
    source.add_argument("--xs", type=_int_list, help="comma separated x values")
    source.add_argument("--sample", type=_count, help="draw K values uniformly from the range")
    source.add_argument("--max", dest="sample_max", type=_count,
                        help="upper end of the sampled population (default: range end)")
    source.add_argument("--seed", type=int, help="seed for --sample")

    tables = common.add_argument_group("tables")
    tables.add_argument("--sieve-limit", type=_count,
                        help="prime table limit (raised with a warning if too small)")
    tables.add_argument("--cache-dir",
                        help="prime table cache directory (default: $PRIMESUMS_CACHE_DIR)")
    tables.add_argument("--workers", type=int, help="worker count for sieving and shards")

    out = common.add_argument_group("output")
    out.add_argument("--format", choices=["json", "csv"])
    out.add_argument("--out", dest="output", help="output path (default: stdout)")
    out.add_argument("--no-timings", dest="timings", action="store_const", const=False,
                     help='records carry wall-clock "ms" timings by default; this writes "ms": 0 '
                          'so identical runs, at any --workers, give identical bytes')
    out.add_argument("--params", help="parameters file; explicit flags win over it")
    out.add_argument("-v", "--verbose", action="count", default=0,
                     help="-v for progress, -vv for debug")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="primesums",
        description="Sieve-backed verification of prime-sum identities and conjecture scans.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", metavar="command", required=True)

    helps = {
        Command.THM1: "odd semiprime product count against C(pi(x), 2)",
        Command.THM2: "odd dyadic floor sum against floor(x/2)",
        Command.PI_FORMULA: "reconstruct pi(x) from theta and dyadic sums",
        Command.UPSILON: "three-way Upsilon partial sum identity",
        Command.TREND: "weighted Mertens ratio table",
        Command.PRIME_WINDOW: "scan p_n against the lambda/mu window",
        Command.COLLISION: "pigeonhole collision of semiprime products mod n",
        Command.GOLDBACH: "Goldbach congruence witnesses",
    }
    for command, text in helps.items():
        sub = commands.add_parser(command.value, parents=[common], help=text, description=text)
        if command is Command.PI_FORMULA:
            sub.add_argument("--variant", choices=[v.value for v in ParityVariant],
                             help="parity term reading, or audit to run both")
        if command is Command.PRIME_WINDOW:
            sub.add_argument("--precision-bits", type=int,
                             help="bits for escalated log n! (>= 128)")
        if command is Command.TREND:
            sub.add_argument("--plot", help="also save the ratio plot here")
    return parser


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def config_from_args(args: argparse.Namespace) -> RunConfig:
    overrides = {
        "command": args.command,
        "range": args.range,
        "n": args.n,
        "xs": args.xs,
        "sample": args.sample,
        "sample_max": args.sample_max,
        "seed": args.seed,
        "sieve_limit": args.sieve_limit,
        "cache_dir": args.cache_dir,
        "workers": args.workers,
        "format": args.format,
        "output": args.output,
        "timings": args.timings,
        "variant": getattr(args, "variant", None),
        "precision_bits": getattr(args, "precision_bits", None),
        "plot": getattr(args, "plot", None),
    }
    if args.params:
        return RunConfig.from_parameters(args.params, **overrides)
    return RunConfig(**{k: v for k, v in overrides.items() if v is not None})


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = config_from_args(args)
    except (ValueError, FileNotFoundError) as error:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {error}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
