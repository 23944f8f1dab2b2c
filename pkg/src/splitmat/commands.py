"""
The work behind each subcommand.

Commands yield pydantic reports; `render` turns them into text, JSON lines or
CSV. Every command is a thin adapter over the library.
"""

from __future__ import annotations

import argparse
from collections import Counter
from fractions import Fraction
from math import comb
from typing import Callable, Iterator, Optional

from splitmat.census import census_stats, enumerate_matroids
from splitmat.codec import format_subset, to_mask
from splitmat.context import ExecutionContext
from splitmat.corpus import CorpusParser, write_corpus
from splitmat.errors import MixedParameters, SplitmatError, ValidationError
from splitmat.lifts import (
    corank_vector,
    nested_matroid,
    parallel_cofree_lift,
    series_free_lift,
)
from splitmat.literals import parse_lift_literal, parse_matroid_literal, parse_subset
from splitmat.logging import logger
from splitmat.matroid import Flat, Matroid, component_matroids
from splitmat.reports import (
    CensusRecord,
    ClassificationReport,
    FlatModel,
    KnuthReport,
    LiftReport,
    RayReport,
    Report,
    SubdivisionReport,
    census_csv,
)
from splitmat.split import (
    check_stable,
    flacets,
    is_nested,
    is_paving,
    is_sparse_paving,
    is_split,
    knuth_residue,
    knuth_stable_set,
)
from splitmat.subdivision import export_text, regular_subdivision, subdivision_report, verify_ray

Entry = tuple[Optional[int], Matroid]


def _flat_models(found: list[Flat]) -> list[FlatModel]:
    return [FlatModel(elements=f.sorted(), rank=f.rank) for f in found]


def classify(matroid: Matroid, line: Optional[int] = None) -> ClassificationReport:
    connected = matroid.is_connected()
    found_flacets = found_split = None
    summaries = None
    if connected and matroid.n >= 2:
        found_flacets = flacets(matroid)
        found_split = [f for f in found_flacets if 0 < f.rank < len(f)]
    elif not connected:
        summaries = [classify(part) for _, part in component_matroids(matroid)]
    return ClassificationReport(
        d=matroid.d,
        n=matroid.n,
        bitmap=matroid.to_line(),
        connected=connected,
        components=[sorted(c) for c in matroid.components],
        flacets=_flat_models(found_flacets) if found_flacets is not None else None,
        split_flacets=_flat_models(found_split) if found_split is not None else None,
        is_split=is_split(matroid),
        is_paving=is_paving(matroid),
        is_sparse_paving=is_sparse_paving(matroid),
        is_nested=is_nested(matroid),
        num_cyclic_flats=len(matroid.cyclic_flats),
        component_summaries=summaries,
        line=line,
    )


def _matroid_entries(args: argparse.Namespace, context: ExecutionContext) -> Iterator[Entry]:
    if args.literal is not None:
        yield None, parse_matroid_literal(args.literal)
        return
    parser = CorpusParser(
        strict=context.settings.strict, order=context.settings.subset_order
    )
    with context.timer.measure("parse"):
        entries = list(parser.file_entries(args.input))
    for error in parser.flagged:
        context.record_failure(str(error))
    yield from entries


def _per_matroid(
    context: ExecutionContext,
    entries: Iterator[Entry],
    func: Callable[[Matroid, Optional[int]], Report],
) -> Iterator[Report]:
    def work(entry: Entry) -> Optional[Report]:
        line, matroid = entry
        try:
            return func(matroid, line)
        except ValidationError as err:
            if context.settings.strict:
                raise
            where = f"line {line}" if line is not None else "input"
            logger.warning("skipping %s: %s", where, err)
            context.record_failure(f"{where}: {err}")
            return None

    for report in context.map(work, entries):
        if report is not None:
            yield report


def cmd_classify(args, context: ExecutionContext) -> Iterator[Report]:
    with context.timer.measure("classify"):
        yield from _per_matroid(
            context, _matroid_entries(args, context), lambda m, line: classify(m, line)
        )


def cmd_census(args, context: ExecutionContext) -> Iterator[Report]:
    settings = context.settings
    if args.enumerate:
        with context.timer.measure("enumerate"):
            matroids = list(
                enumerate_matroids(
                    args.d,
                    args.n,
                    max_subsets=settings.max_enumeration_subsets,
                    max_n=settings.max_n,
                )
            )
        logger.info("enumerated %s isomorphism classes", len(matroids))
        if args.write_corpus:
            write_corpus(matroids, args.write_corpus, d=args.d, n=args.n)
            logger.info("corpus written to %s", args.write_corpus)
    else:
        parser = CorpusParser(strict=settings.strict, order=settings.subset_order)
        with context.timer.measure("parse"):
            matroids = list(parser.parse_file(args.input))
        if (parser.d, parser.n) != (args.d, args.n):
            raise MixedParameters(
                f"{args.input} holds ({parser.d},{parser.n})-matroids, not ({args.d},{args.n})"
            )
        for error in parser.flagged:
            context.record_failure(str(error))
    with context.timer.measure("classify"):
        yield census_stats(matroids)


def _lift_report(args, matroid: Matroid, line: Optional[int]) -> LiftReport:
    match args.kind:
        case "corank":
            vector = corank_vector(matroid, args.k)
            return LiftReport(
                kind="corank", d=vector.k, n=vector.n, heights=vector.render()
            )
        case "series-free":
            lifted = series_free_lift(matroid)
        case "parallel-cofree":
            lifted = parallel_cofree_lift(matroid)
        case _:
            lifted = nested_matroid(matroid, parse_subset(args.flat, matroid.n))
    return LiftReport(
        kind=args.kind,
        d=lifted.d,
        n=lifted.n,
        bitmap=lifted.to_line(),
        classification=classify(lifted, line),
    )


def cmd_lift(args, context: ExecutionContext) -> Iterator[Report]:
    with context.timer.measure("lift"):
        yield from _per_matroid(
            context,
            _matroid_entries(args, context),
            lambda m, line: _lift_report(args, m, line),
        )


def cmd_ray_check(args, context: ExecutionContext) -> Iterator[Report]:
    max_vertices = context.settings.max_vertices
    with context.timer.measure("ray-check"):
        yield from _per_matroid(
            context,
            _matroid_entries(args, context),
            lambda m, line: verify_ray(m, max_vertices=max_vertices, line=line),
        )


def cmd_subdivide(args, context: ExecutionContext) -> Iterator[Report]:
    lift = parse_lift_literal(args.lift, args.k, args.n)
    with context.timer.measure("subdivide"):
        subdivision = regular_subdivision(
            args.k, args.n, lift, max_vertices=context.settings.max_vertices
        )
        yield subdivision_report(subdivision)


def cmd_knuth(args, context: ExecutionContext) -> Iterator[Report]:
    residue = knuth_residue(args.d, args.n)
    stable = sorted(knuth_stable_set(args.d, args.n), key=sorted)
    check_stable(stable)
    bound = Fraction(comb(args.n, args.d), args.n)
    yield KnuthReport(
        d=args.d,
        n=args.n,
        size=len(stable),
        bound=str(bound),
        meets_bound=len(stable) >= bound,
        residue=residue,
        stable_set=[format_subset(to_mask(s), args.n) for s in stable],
    )


COMMANDS: dict[str, Callable[[argparse.Namespace, ExecutionContext], Iterator[Report]]] = {
    "classify": cmd_classify,
    "census": cmd_census,
    "lift": cmd_lift,
    "ray-check": cmd_ray_check,
    "subdivide": cmd_subdivide,
    "knuth": cmd_knuth,
}


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _flats(flats) -> str:
    return "[" + ", ".join(format_subset(to_mask(f.elements)) for f in flats) + "]"


def _classification_text(report: ClassificationReport) -> str:
    prefix = f"line {report.line}: " if report.line is not None else ""
    parts = [
        f"d={report.d} n={report.n}",
        f"connected={_yes(report.connected)}",
        f"split={_yes(report.is_split)}",
        f"paving={_yes(report.is_paving)}",
        f"sparse_paving={_yes(report.is_sparse_paving)}",
        f"nested={_yes(report.is_nested)}",
        f"cyclic_flats={report.num_cyclic_flats}",
    ]
    if report.split_flacets is not None:
        parts.append(f"split_flacets={_flats(report.split_flacets)}")
    if len(report.components) > 1:
        parts.append(
            "components=" + " ".join(format_subset(to_mask(c)) for c in report.components)
        )
    return prefix + " ".join(parts)


def _census_text(record: CensusRecord) -> str:
    return (
        f"d={record.d} n={record.n} total={record.total_count} "
        f"connected={record.connected_count} "
        f"paving={record.paving_count} ({record.paving_pct}%) "
        f"sparse_paving={record.sparse_paving_count} "
        f"split={record.split_count} ({record.split_pct}%) "
        f"nested={record.nested_count}"
    )


def _ray_text(report: RayReport) -> str:
    prefix = f"line {report.line}: " if report.line is not None else ""
    lines = [
        f"{prefix}{'PASS' if report.passed else 'FAIL'} d={report.d} n={report.n} "
        f"cells={report.num_cells} expected={report.expected_cells} "
        f"cone_dim={report.cone_dim}"
    ]
    lines += [f"  missing: {' '.join(cell)}" for cell in report.missing_cells]
    lines += [f"  unexpected: {' '.join(cell)}" for cell in report.unexpected_cells]
    return "\n".join(lines)


def dual_graph_summary(report: SubdivisionReport) -> str:
    degrees = Counter()
    for a, b in report.dual_edges:
        degrees[a] += 1
        degrees[b] += 1
    sequence = sorted((degrees[c] for c in range(report.num_cells)), reverse=True)
    return (
        f"# cells={report.num_cells} edges={len(report.dual_edges)} "
        f"degrees={','.join(str(d) for d in sequence)} "
        f"tropical_cells={len(report.tropical_cells)} "
        f"matroidal={_yes(report.is_matroid_subdivision)} cone_dim={report.cone_dim}"
    )


def _subdivision_text(report: SubdivisionReport) -> str:
    export = export_text(report.k, report.n, report.cells, report.dual_edges)
    return export + dual_graph_summary(report)


def _lift_text(report: LiftReport) -> str:
    if report.heights is not None:
        return f"{report.d} {report.n} " + ",".join(report.heights)
    lines = [f"{report.d} {report.n} 1", report.bitmap or ""]
    if report.classification is not None:
        lines.append("# " + _classification_text(report.classification))
    return "\n".join(lines)


def _knuth_text(report: KnuthReport) -> str:
    verdict = ">=" if report.meets_bound else "<"
    return "\n".join(
        [
            f"d={report.d} n={report.n} residue={report.residue} "
            f"size={report.size} {verdict} C(n,d)/n={report.bound}",
            *report.stable_set,
        ]
    )


TEXT_RENDERERS: dict[type, Callable] = {
    ClassificationReport: _classification_text,
    CensusRecord: _census_text,
    RayReport: _ray_text,
    SubdivisionReport: _subdivision_text,
    LiftReport: _lift_text,
    KnuthReport: _knuth_text,
}


def render(report: Report, output_format: str) -> str:
    match output_format:
        case "json":
            return report.to_json()
        case "csv":
            if not isinstance(report, CensusRecord):
                raise SplitmatError("csv output is only available for census records")
            return census_csv([report], header=False).rstrip("\n")
        case _:
            return TEXT_RENDERERS[type(report)](report)
