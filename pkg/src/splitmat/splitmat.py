import datetime
import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, TextIO

from splitmat import __version__
from splitmat.cli import parse_args
from splitmat.commands import COMMANDS, render
from splitmat.config import load_settings
from splitmat.context import ExecutionContext
from splitmat.errors import SplitmatError
from splitmat.logging import configure_logger, log_list, log_section, logger
from splitmat.reports import CSV_HEADER, RayReport


@contextmanager
def open_output(path: str | None) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        yield f


def log_report(context: ExecutionContext, argv, elapsed_ms: int):
    log_section("report")
    logger.info("processed: %s matroids", context.processed)
    if context.failures:
        log_list(logging.INFO, "flagged", context.failures)
    if argv.output:
        logger.info("output file: %s", argv.output)
    logger.info("total elapsed: %s ms", elapsed_ms)
    for name in context.timer.names():
        logger.info("  %-12s %s ms", name + ":", context.timer.get_time_ms(name))


def run(original_args) -> int:
    start = datetime.datetime.now()

    argv = parse_args(original_args)
    configure_logger(argv.verbose, argv.log_format, argv.project_name)

    log_section("startup")
    logger.info("splitmat: %s", __version__)
    logger.info("command: %s %s", Path(sys.argv[0]).name, " ".join(original_args))

    try:
        settings = load_settings(
            overrides={
                "max_vertices": argv.max_vertices,
                "max_n": argv.max_n,
                "max_enumeration_subsets": argv.max_enumeration_subsets,
                "jobs": argv.jobs,
                "strict": argv.strict,
                "subset_order": argv.subset_order,
            }
        )
    except SplitmatError as err:
        logger.error("%s", err)
        return err.exit_code

    context = ExecutionContext(settings)
    log_section("setup")
    log_list(logging.DEBUG, "settings", settings.model_dump().items(), lambda kv: "%s=%s" % kv)

    log_section(argv.command)
    failed_checks = 0
    try:
        with open_output(argv.output) as out:
            if argv.format == "csv":
                out.write(",".join(CSV_HEADER) + "\n")
            for report in COMMANDS[argv.command](argv, context):
                out.write(render(report, argv.format) + "\n")
                if isinstance(report, RayReport) and not report.passed:
                    failed_checks += 1
    except SplitmatError as err:
        logger.error("%s", err)
        return err.exit_code
    except OSError as err:
        logger.error("I/O error: %s", err)
        return 2

    elapsed = datetime.datetime.now() - start
    elapsed_ms = int(elapsed.total_seconds() * 1000)
    log_report(context, argv, elapsed_ms)

    if failed_checks:
        logger.error("%s ray checks failed", failed_checks)
        return 1
    return 0


def main():
    sys_argv = sys.argv[1:]
    sys.exit(run(sys_argv))
