import argparse
import sys

from splitmat import __version__
from splitmat.logging import OutputFormat, logger

FORMATS = ["text", "json", "csv"]
LIFT_KINDS = ["corank", "series-free", "parallel-cofree", "nested"]
MATROID_INPUT_COMMANDS = {"classify", "lift", "ray-check"}


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        """If there is an argument parsing error, print the `--help` message,
        log the error, and exit with status code `3`."""
        self.print_help(sys.stderr)
        logger.error("CLI error: %s", message)
        sys.exit(3)


def _common_options() -> argparse.ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument(
        "--output",
        type=str,
        help="write results to this file instead of stdout",
    )
    common.add_argument(
        "--format",
        choices=FORMATS,
        default="text",
        help="output format for results",
    )
    strictness = common.add_mutually_exclusive_group()
    strictness.add_argument(
        "--strict",
        dest="strict",
        action="store_const",
        const=True,
        default=None,
        help="stop at the first invalid corpus line (default)",
    )
    strictness.add_argument(
        "--lenient",
        dest="strict",
        action="store_const",
        const=False,
        help="log and skip invalid corpus lines",
    )
    common.add_argument(
        "--order",
        dest="subset_order",
        choices=["lex", "revlex", "auto"],
        help="d-subset ordering of corpus lines",
    )
    common.add_argument(
        "--max-vertices",
        type=int,
        help="largest hypersimplex (number of vertices) the subdivision engine accepts",
    )
    common.add_argument(
        "--max-n",
        type=int,
        help="largest ground set for isomorphism testing",
    )
    common.add_argument(
        "--max-subsets",
        dest="max_enumeration_subsets",
        type=int,
        help="largest C(n,d) for census enumeration",
    )
    common.add_argument(
        "--jobs",
        type=int,
        help="maximum number of workers (threads) used for corpus files",
    )
    common.add_argument(
        "--verbose",
        action=argparse.BooleanOptionalAction,
        default=False,
        help="log debug output",
    )
    common.add_argument(
        "--log-format",
        type=OutputFormat,
        default=OutputFormat.HUMAN,
        choices=[OutputFormat.HUMAN, OutputFormat.JSON],
        help="the format for the log output",
    )
    common.add_argument(
        "--project-name",
        help="optional descriptive name used in log output",
    )
    return common


def _add_matroid_input(parser: argparse.ArgumentParser):
    parser.add_argument(
        "literal",
        nargs="?",
        help='inline matroid, e.g. "d=2 n=6 nonbases=12,34,56" or "name=snowflake"',
    )
    parser.add_argument("--input", type=str, help="corpus file to read")


def parse_args(argv):
    parser = ArgumentParser(
        prog="splitmat",
        description="Split matroids, corank lifts and hypersimplex subdivisions.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    common = _common_options()
    commands = parser.add_subparsers(dest="command", required=True)

    classify = commands.add_parser(
        "classify", parents=[common], help="classify matroids (split, paving, nested)"
    )
    _add_matroid_input(classify)

    census = commands.add_parser(
        "census", parents=[common], help="census statistics for one (d, n)"
    )
    census.add_argument("d", type=int)
    census.add_argument("n", type=int)
    source = census.add_mutually_exclusive_group(required=True)
    source.add_argument(
        "--enumerate", action="store_true", help="enumerate all isomorphism classes"
    )
    source.add_argument("--input", type=str, help="corpus file to read")
    census.add_argument(
        "--write-corpus",
        type=str,
        help="also write the enumerated classes as a corpus file",
    )

    lift = commands.add_parser(
        "lift", parents=[common], help="corank vectors and lifted matroids"
    )
    _add_matroid_input(lift)
    lift.add_argument("--kind", choices=LIFT_KINDS, default="series-free")
    lift.add_argument("--k", type=int, help="vertex cardinality for --kind corank")
    lift.add_argument("--flat", type=str, help="split flacet for --kind nested, e.g. 12")

    ray = commands.add_parser(
        "ray-check", parents=[common], help="verify the Dressian ray of a split matroid"
    )
    _add_matroid_input(ray)

    subdivide = commands.add_parser(
        "subdivide", parents=[common], help="regular subdivision of Delta(k, n)"
    )
    subdivide.add_argument("k", type=int)
    subdivide.add_argument("n", type=int)
    subdivide.add_argument("lift", nargs="?", help="comma-separated heights")
    subdivide.add_argument(
        "--lift", dest="lift_option", help="heights or name=<lift>, e.g. name=caterpillar"
    )

    knuth = commands.add_parser(
        "knuth", parents=[common], help="stable set in J(d, n) from the sum-mod-n colouring"
    )
    knuth.add_argument("d", type=int)
    knuth.add_argument("n", type=int)

    args = parser.parse_args(argv)
    if args.command in MATROID_INPUT_COMMANDS and (args.literal is None) == (
        args.input is None
    ):
        parser.error("give exactly one of an inline matroid or --input")
    if args.command == "subdivide":
        if (args.lift is None) == (args.lift_option is None):
            parser.error("give the lift either positionally or with --lift")
        args.lift = args.lift if args.lift is not None else args.lift_option
    if args.command == "lift" and args.kind == "nested" and args.flat is None:
        parser.error("--kind nested needs --flat")
    if args.format == "csv" and args.command != "census":
        parser.error("csv output is only available for census")
    return args
